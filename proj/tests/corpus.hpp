#pragma once

// Shared structure-string corpora for parser, canonicalization and scaffold
// tests.

#include <string>
#include <vector>

namespace corpus {

// 100 valid strings spanning the supported grammar: chains, branches, rings,
// fused rings, aromatics, charges, bracket atoms, multi-fragment inputs.
inline const std::vector<std::string>& valid_smiles() {
  static const std::vector<std::string> v = {
      "C",
      "CC",
      "CCO",
      "OCC",
      "C(C)C",
      "CC(C)C",
      "CC(C)(C)C",
      "C=C",
      "C#N",
      "CC#CC",
      "CC=O",
      "CC(=O)O",
      "CC(=O)OC",
      "CC(=O)NC",
      "NCC(=O)O",
      "C1CC1",
      "C1CCC1",
      "C1CCCC1",
      "C1CCCCC1",
      "C1CCCCCC1",
      "C1CC1C1CC1",
      "C1CCC2(CC1)CCCC2",
      "C1CC2CCC1CC2",
      "c1ccccc1",
      "c1ccncc1",
      "c1cnccn1",
      "c1ccoc1",
      "c1ccsc1",
      "c1cc[nH]c1",
      "Cc1ccccc1",
      "CCc1ccccc1",
      "Cc1ccccc1C",
      "Cc1cccc(C)c1",
      "Cc1ccc(C)cc1",
      "Oc1ccccc1",
      "Nc1ccccc1",
      "Clc1ccccc1",
      "Brc1ccccc1",
      "Ic1ccccc1",
      "Fc1ccccc1",
      "CC(=O)c1ccccc1",
      "OC(=O)c1ccccc1",
      "COc1ccccc1",
      "CN(C)c1ccccc1",
      "c1ccc2ccccc2c1",
      "c1ccc2[nH]ccc2c1",
      "c1ccc2occc2c1",
      "c1ccc2sccc2c1",
      "c1ccc(-c2ccccc2)cc1",
      "c1ccc(Cc2ccccc2)cc1",
      "C1CCc2ccccc2C1",
      "O=C1CCCCC1",
      "O=C1CCCN1",
      "N1CCNCC1",
      "C1CCNCC1",
      "C1CCOC1",
      "C1CCOCC1",
      "O1CCOCC1",
      "S1CCCC1",
      "CN1CCCC1",
      "CC1=CC(=O)CC(C)(C)C1",
      "CC(C)CC1=CC=CC=C1",
      "CCN(CC)CC",
      "CC(N)C(=O)O",
      "NC(CC(=O)O)C(=O)O",
      "NC(CCC(=O)O)C(=O)O",
      "OC(=O)CC(O)(CC(=O)O)C(=O)O",
      "CC(O)C(=O)O",
      "C(CO)O",
      "OCC(O)CO",
      "[Na+].[Cl-]",
      "[NH4+].[Cl-]",
      "CCO.Cl",
      "CC.OO",
      "CCN.CCO.C",
      "[O-]C(=O)c1ccccc1",
      "[NH3+]CC([O-])=O",
      "C[N+](C)(C)C",
      "[O-][N+](=O)c1ccccc1",
      "CS(=O)(=O)O",
      "CS(=O)C",
      "CP(C)C",
      "OP(=O)(O)O",
      "FC(F)(F)c1ccccc1",
      "ClCCl",
      "ClC(Cl)Cl",
      "N#Cc1ccccc1",
      "CC(C)=CCCC(C)=CC=O",
      "CC1CCC(C(C)C)CC1",
      "CC(C)C1CCC(C)CC1O",
      "[H][H]",
      "[Fe]",
      "[Zn+2].[O-]C(=O)C",
      "[Mg+2].[Cl-].[Cl-]",
      "C[Si](C)(C)C",
      "c1ccc(cc1)C(=O)NC2CCCCC2",
      "CC(C)(C)OC(=O)NC1CCNCC1",
      "CN1C=NC2=C1C(=O)N(C)C(=O)N2C",
      "CC(=O)Oc1ccccc1C(=O)O",
      "CN1CCC[C@H]1c1cccnc1",
  };
  return v;
}

// Strings a conforming parser must reject.
inline const std::vector<std::string>& invalid_smiles() {
  static const std::vector<std::string> v = {
      "",            // empty
      "C(",          // unclosed branch
      "C)",          // stray close
      "C((C)",       // unbalanced nesting
      "C1CC",        // unclosed ring bond
      "CC2",         // lone ring closure digit never paired
      "1CC",         // ring digit before any atom
      "-C",          // leading bond
      "C-",          // trailing bond
      "C=-C",        // two bond symbols
      "C=#C",        // two bond symbols
      "C..C",        // consecutive dots
      ".C",          // leading dot
      "Xx",          // unknown element
      "[Xx]",        // unknown element in bracket
      "[C",          // unterminated bracket
      "C]",          // stray bracket close
      "[]",          // empty bracket
      "[13]",        // isotope only
      "C(C)(C)(C)(C)C",  // 5-valent carbon
      "O=C=O=C",     // 4-valent oxygen chain
      "N(=O)(=O)=O", // over-valent nitrogen
      "F=F",         // divalent fluorine
      "C%1CC%1",     // percent needs two digits
      "C=1CC#1",     // conflicting ring bond orders
      "C:C",         // aromatic bond between aliphatic atoms
      "C11",         // ring bond onto itself
      "C12CC12",     // duplicate bond via two ring closures
      "C#", "=C",
  };
  return v;
}

// 50 ring-bearing molecules for scaffold tests.
inline const std::vector<std::string>& scaffold_smiles() {
  static const std::vector<std::string> v = {
      "Cc1ccccc1",
      "CCc1ccccc1",
      "CCCc1ccccc1",
      "c1ccccc1",
      "C1CCCCC1",
      "CC1CCCCC1",
      "OC1CCCCC1",
      "O=C1CCCCC1",
      "NC1CCCCC1",
      "c1ccc(Cc2ccccc2)cc1",
      "c1ccc(-c2ccccc2)cc1",
      "c1ccc(CCc2ccccc2)cc1",
      "c1ccc(COc2ccccc2)cc1",
      "Cc1ccc(Cc2ccccc2)cc1",
      "c1ccc2ccccc2c1",
      "Cc1ccc2ccccc2c1",
      "c1ccc2[nH]ccc2c1",
      "Cn1ccc2ccccc21",
      "O=C(O)c1ccccc1",
      "O=C(Nc1ccccc1)c1ccccc1",
      "O=C(OC1CCCCC1)c1ccccc1",
      "c1ccncc1",
      "Cc1ccncc1",
      "c1ccc(C2CCNCC2)cc1",
      "C1CCNCC1",
      "CN1CCCC1",
      "CN1CCCC1c1cccnc1",
      "O1CCOCC1",
      "CC1COCCO1",
      "c1ccoc1",
      "Cc1ccco1",
      "c1ccsc1",
      "Cc1cccs1",
      "CC(=O)c1ccc2ccccc2c1",
      "N#Cc1ccc(F)cc1",
      "FC(F)(F)c1ccc(N)cc1",
      "CC(C)Cc1ccc(C(C)C(=O)O)cc1",
      "CC(=O)Oc1ccccc1C(=O)O",
      "CN1C=NC2=C1C(=O)N(C)C(=O)N2C",
      "O=C1CCCN1C",
      "O=C1NC(=O)c2ccccc21",
      "C1CC2CCC1CC2",
      "C1CCC2(CC1)CCCC2",
      "CC12CCC(C1)C(C)(C)C2O",
      "c1cnc2[nH]ccc2c1",
      "Oc1ccc2ccccc2c1",
      "c1ccc(N2CCOCC2)cc1",
      "O=S(=O)(c1ccccc1)N1CCCC1",
      "Clc1ccc(C2CC2)cc1",
      "CC1(C)CCCC1c1ccccc1",
  };
  return v;
}

}  // namespace corpus
