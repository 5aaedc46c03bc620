#include <doctest.h>

#include "corpus.hpp"
#include "oracles.hpp"
#include "tscout/scaffold.hpp"
#include "tscout/smiles.hpp"

using namespace tscout;

TEST_CASE("murcko_scaffold forced cases") {
  // toluene -> benzene: the methyl is a terminal side chain
  const Molecule toluene = murcko_scaffold(parse_smiles("Cc1ccccc1"));
  CHECK(oracles::graph_isomorphic(toluene, parse_smiles("c1ccccc1")));

  // acyclic molecules have the empty framework
  CHECK(murcko_scaffold(parse_smiles("CCO")).atom_count() == 0);
  CHECK(murcko_scaffold(parse_smiles("CC(C)CC(=O)O")).atom_count() == 0);

  // diphenylmethane: the CH2 linker is retained, nothing is pruned
  const Molecule dpm = parse_smiles("c1ccc(Cc2ccccc2)cc1");
  const Molecule dpm_fw = murcko_scaffold(dpm);
  CHECK(dpm_fw.atom_count() == dpm.atom_count());
  CHECK(oracles::graph_isomorphic(dpm_fw, dpm));
}

TEST_CASE("exocyclic double bonds stay attached to the framework") {
  // cyclohexanone keeps its carbonyl oxygen
  const Molecule fw = murcko_scaffold(parse_smiles("O=C1CCCCC1"));
  CHECK(fw.atom_count() == 7);
  // ester linker between two rings keeps the =O
  const Molecule ester = murcko_scaffold(parse_smiles("O=C(OC1CCCCC1)c1ccccc1"));
  CHECK(ester.atom_count() == 15);
}

TEST_CASE("murcko_scaffold idempotent with ring preservation on the corpus") {
  for (const std::string& s : corpus::scaffold_smiles()) {
    CAPTURE(s);
    const Molecule m = parse_smiles(s);
    const Molecule fw = murcko_scaffold(m);
    CHECK(fw.ring_count() == m.ring_count());
    CHECK(oracles::graph_isomorphic(murcko_scaffold(fw), fw));
    // no prunable atoms remain
    for (int i = 0; i < fw.atom_count(); ++i) {
      if (!fw.atom(i).ring_member) {
        bool multiple = false;
        for (const AdjEntry& e : fw.neighbors(i)) {
          const BondOrder o = fw.bonds()[static_cast<std::size_t>(e.bond)].order;
          multiple |= (o == BondOrder::Double || o == BondOrder::Triple);
        }
        CHECK((fw.neighbors(i).size() >= 2 || multiple));
      }
    }
  }
  CHECK(corpus::scaffold_smiles().size() >= 50);
}

TEST_CASE("scaffold keys group isomorphic frameworks") {
  const ScaffoldKey a = scaffold_key(parse_smiles("Cc1ccccc1"));
  const ScaffoldKey b = scaffold_key(parse_smiles("CCc1ccccc1"));
  const ScaffoldKey c = scaffold_key(parse_smiles("c1ccccc1"));
  CHECK(a == b);
  CHECK(a == c);
  CHECK(a.ring_count == 1);
  CHECK(scaffold_key(parse_smiles("CCO")).canonical_string.empty());
}

TEST_CASE("scaffold_dedupe picks first representatives") {
  std::vector<Molecule> mols = {
      parse_smiles("Cc1ccccc1"),   // benzene key
      parse_smiles("CCc1ccccc1"),  // benzene key
      parse_smiles("C1CCCCC1"),    // cyclohexane key
  };
  const auto reps = scaffold_dedupe(mols);
  CHECK(reps == std::vector<int>{0, 2});

  std::vector<Molecule> same = {parse_smiles("CCO"), parse_smiles("CCO"), parse_smiles("CCO")};
  CHECK(scaffold_dedupe(same) == std::vector<int>{0});

  // distinct acyclic molecules all share the empty key
  std::vector<Molecule> acyclic = {parse_smiles("CCO"), parse_smiles("CCCN"), parse_smiles("CC(C)C")};
  CHECK(scaffold_dedupe(acyclic) == std::vector<int>{0});
}

TEST_CASE("dedupe of representatives is the identity") {
  std::vector<Molecule> mols;
  for (const std::string& s : corpus::scaffold_smiles()) mols.push_back(parse_smiles(s));
  const auto reps = scaffold_dedupe(mols);
  CHECK(reps.size() <= mols.size());
  std::vector<Molecule> rep_mols;
  for (int r : reps) rep_mols.push_back(mols[static_cast<std::size_t>(r)]);
  const auto again = scaffold_dedupe(rep_mols);
  CHECK(again.size() == rep_mols.size());
}
