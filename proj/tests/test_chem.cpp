#include <doctest.h>

#include <algorithm>
#include <set>

#include "corpus.hpp"
#include "oracles.hpp"
#include "tscout/chem.hpp"
#include "tscout/errors.hpp"
#include "tscout/smiles.hpp"

using namespace tscout;

TEST_CASE("parse_smiles basic graphs") {
  const Molecule ethanol = parse_smiles("CCO");
  CHECK(heavy_atom_count(ethanol) == 3);
  CHECK(ethanol.bond_count() == 2);
  CHECK(ethanol.ring_count() == 0);
  for (const Bond& b : ethanol.bonds()) CHECK(b.order == BondOrder::Single);

  const Molecule benzene = parse_smiles("c1ccccc1");
  CHECK(benzene.atom_count() == 6);
  CHECK(benzene.bond_count() == 6);
  CHECK(benzene.ring_count() == 1);
  for (const Atom& a : benzene.atoms()) {
    CHECK(a.aromatic);
    CHECK(a.ring_member);
    CHECK(a.explicit_h == 1);
  }
  for (const Bond& b : benzene.bonds()) CHECK(b.order == BondOrder::Aromatic);
}

TEST_CASE("parse_smiles diagnostics carry offsets") {
  try {
    parse_smiles("C(");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 1);
  }
  try {
    parse_smiles("CC(C)(C)(C)(C)C");
    FAIL("expected valence violation");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 1);  // the central carbon
  }
  CHECK_THROWS_AS(parse_smiles("C[Qq]C"), ParseError);
}

TEST_CASE("parse_smiles hydrogens and charges") {
  const Molecule m = parse_smiles("[NH4+].[Cl-]");
  REQUIRE(m.atom_count() == 2);
  CHECK(m.atom(0).explicit_h == 4);
  CHECK(m.atom(0).formal_charge == 1);
  CHECK(m.atom(1).formal_charge == -1);
  CHECK(m.atom(1).explicit_h == 0);

  CHECK(parse_smiles("C").atom(0).explicit_h == 4);
  CHECK(parse_smiles("C=C").atom(0).explicit_h == 2);
  CHECK(parse_smiles("C#N").atom(1).explicit_h == 0);
  CHECK(parse_smiles("c1ccncc1").atom(3).explicit_h == 0);  // pyridine N
  CHECK(parse_smiles("CS(=O)(=O)O").atom(1).explicit_h == 0);  // S(VI)
  CHECK(parse_smiles("[Fe+2]").atom(0).formal_charge == 2);
}

TEST_CASE("parse_smiles accepts stereo tokens with a warning") {
  std::vector<ParseWarning> warnings;
  const Molecule m = parse_smiles("CN1CCC[C@H]1c1cccnc1", &warnings);
  CHECK(m.atom_count() == 12);
  CHECK(!warnings.empty());
  warnings.clear();
  parse_smiles("F/C=C/F", &warnings);
  CHECK(warnings.size() == 2);
}

TEST_CASE("parser accepts the valid corpus and rejects the invalid corpus") {
  CHECK(corpus::valid_smiles().size() >= 100);
  for (const std::string& s : corpus::valid_smiles()) {
    CAPTURE(s);
    CHECK_NOTHROW(parse_smiles(s));
  }
  for (const std::string& s : corpus::invalid_smiles()) {
    CAPTURE(s);
    CHECK_THROWS_AS(parse_smiles(s), ParseError);
  }
}

TEST_CASE("write_smiles round trip is graph-isomorphic over the corpus") {
  for (const std::string& s : corpus::valid_smiles()) {
    CAPTURE(s);
    const Molecule m = parse_smiles(s);
    const std::string canonical = write_smiles(m);
    const Molecule m2 = parse_smiles(canonical);
    CHECK(oracles::graph_isomorphic(m, m2));
    // a second pass must be a fixed point
    CHECK(write_smiles(m2) == canonical);
  }
}

TEST_CASE("write_smiles canonical form is invariant under relabeling") {
  const std::vector<std::string> picks = {
      "CC(=O)Oc1ccccc1C(=O)O", "CN1C=NC2=C1C(=O)N(C)C(=O)N2C",
      "c1ccc2ccccc2c1", "CC(C)CC1=CC=CC=C1", "OCC(O)CO", "C1CC2CCC1CC2"};
  for (const std::string& s : picks) {
    CAPTURE(s);
    const Molecule m = parse_smiles(s);
    const std::string canonical = write_smiles(m);
    for (int k = 0; k < 20; ++k) {
      const Molecule shuffled = oracles::relabel(m, 1000 + static_cast<std::uint64_t>(k));
      CHECK(write_smiles(shuffled) == canonical);
    }
  }
}

TEST_CASE("write_smiles on trivial inputs") {
  CHECK(write_smiles(parse_smiles("C")) == "C");
  const Molecule a = parse_smiles("OCC");
  const Molecule b = parse_smiles("CCO");
  CHECK(write_smiles(a) == write_smiles(b));
  CHECK(oracles::graph_isomorphic(parse_smiles(write_smiles(a)), b));
}

TEST_CASE("canonical_ranks is a permutation and isomorphism-invariant") {
  const Molecule a = parse_smiles("CCO");
  const Molecule b = parse_smiles("OCC");
  auto multiset = [](const Molecule& m) {
    std::vector<std::pair<int, int>> out;
    const auto ranks = canonical_ranks(m);
    for (int i = 0; i < m.atom_count(); ++i)
      out.emplace_back(m.atom(i).atomic_number, ranks[static_cast<std::size_t>(i)]);
    std::sort(out.begin(), out.end());
    return out;
  };
  CHECK(multiset(a) == multiset(b));

  const auto ranks = canonical_ranks(a);
  std::set<int> distinct(ranks.begin(), ranks.end());
  CHECK(distinct.size() == static_cast<std::size_t>(a.atom_count()));
  CHECK(*distinct.begin() == 0);
  CHECK(*distinct.rbegin() == a.atom_count() - 1);
}

TEST_CASE("benzene atoms share one initial invariant class") {
  const Molecule benzene = parse_smiles("c1ccccc1");
  const auto inv = atom_invariants(benzene);
  for (std::size_t i = 1; i < inv.size(); ++i) CHECK(inv[i] == inv[0]);
}

TEST_CASE("largest_fragment picks the heavy-atom-richest component") {
  const Molecule m = largest_fragment(parse_smiles("CCO.Cl"));
  CHECK(heavy_atom_count(m) == 3);
  CHECK(write_smiles(m) == write_smiles(parse_smiles("CCO")));

  // single fragment: identity
  const Molecule single = parse_smiles("CCN");
  CHECK(write_smiles(largest_fragment(single)) == write_smiles(single));
}

TEST_CASE("largest_fragment tie-break is stable") {
  const std::string first = write_smiles(largest_fragment(parse_smiles("CC.OO")));
  const std::string second = write_smiles(largest_fragment(parse_smiles("OO.CC")));
  CHECK(first == second);
  for (int k = 0; k < 5; ++k)
    CHECK(write_smiles(largest_fragment(parse_smiles("CC.OO"))) == first);
}

TEST_CASE("largest_fragment is idempotent and connected") {
  for (const std::string& s : {"CCO.Cl", "CC.OO", "c1ccccc1.CCN.[Na+]"}) {
    const Molecule m = largest_fragment(parse_smiles(s));
    CHECK(m.fragments().size() == 1);
    CHECK(write_smiles(largest_fragment(m)) == write_smiles(m));
  }
}

TEST_CASE("element whitelist") {
  CHECK(check_element_whitelist(parse_smiles("CCO")));
  CHECK_FALSE(check_element_whitelist(parse_smiles("C[Si](C)(C)C")));
  CHECK(check_element_whitelist(parse_smiles("[Fe]")));
  CHECK(check_element_whitelist(parse_smiles("CC(=O)NCCS")));
  CHECK_FALSE(check_element_whitelist(parse_smiles("[Na+].[Cl-]")));
}

TEST_CASE("heavy_atom_count") {
  CHECK(heavy_atom_count(parse_smiles("CCO")) == 3);
  CHECK(heavy_atom_count(parse_smiles("[H][H]")) == 0);
  CHECK(heavy_atom_count(parse_smiles("c1ccccc1")) == 6);
}
