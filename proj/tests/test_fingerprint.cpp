#include <doctest.h>

#include "corpus.hpp"
#include "oracles.hpp"
#include "tscout/errors.hpp"
#include "tscout/fingerprint.hpp"
#include "tscout/smiles.hpp"

using namespace tscout;

TEST_CASE("methane yields exactly one environment") {
  // no neighbors: every iteration ball collapses to the single atom
  const Fingerprint fp = ecfp(parse_smiles("C"));
  CHECK(fp.popcount() == 1);
}

TEST_CASE("ecfp is invariant under isomorphic input") {
  CHECK(ecfp(parse_smiles("CCO")) == ecfp(parse_smiles("OCC")));
  const Molecule m = parse_smiles("CC(=O)Oc1ccccc1C(=O)O");
  const Fingerprint ref = ecfp(m);
  for (int k = 0; k < 10; ++k)
    CHECK(ecfp(oracles::relabel(m, 77 + static_cast<std::uint64_t>(k))) == ref);
}

TEST_CASE("ecfp radius 0 bit count bounded by distinct atom invariants") {
  // CCO at radius 0: three distinct invariant tuples
  // (C deg1 3H, C deg2 2H, O deg1 1H)
  FpConfig cfg;
  cfg.radius = 0;
  const Fingerprint fp = ecfp(parse_smiles("CCO"), cfg);
  CHECK(fp.popcount() >= 1);
  CHECK(fp.popcount() <= 3);
}

TEST_CASE("ecfp rejects molecules without heavy atoms") {
  CHECK_THROWS_AS(ecfp(parse_smiles("[H][H]")), Error);
}

TEST_CASE("explicit hydrogen atoms fold into neighbor counts") {
  // [CH4] and C must agree after H-folding; so must [H]C([H])([H])[H]
  const Fingerprint a = ecfp(parse_smiles("C"));
  const Fingerprint b = ecfp(parse_smiles("[CH4]"));
  const Fingerprint c = ecfp(parse_smiles("[H]C([H])([H])[H]"));
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("tanimoto basics") {
  Fingerprint a(128), b(128);
  CHECK(tanimoto(a, b) == 0.0);  // both empty
  a.set(1); a.set(2); a.set(3);
  b.set(2); b.set(3); b.set(4);
  CHECK(tanimoto(a, b) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(tanimoto(a, a) == 1.0);
  Fingerprint c(128);
  c.set(99);
  CHECK(tanimoto(a, c) == 0.0);  // disjoint
  Fingerprint wrong(192);
  CHECK_THROWS_AS(tanimoto(a, wrong), Error);
}

TEST_CASE("tanimoto symmetry on random pairs") {
  for (int k = 0; k < 50; ++k) {
    const auto a = oracles::random_fp(2048, 0.05, 10 + static_cast<std::uint64_t>(k));
    const auto b = oracles::random_fp(2048, 0.05, 900 + static_cast<std::uint64_t>(k));
    CHECK(tanimoto(a, b) == tanimoto(b, a));
    CHECK(tanimoto(a, a) == 1.0);
  }
}

TEST_CASE("bulk_max_similarity equals the scalar loop") {
  std::vector<Fingerprint> set;
  for (int i = 0; i < 1000; ++i)
    set.push_back(oracles::random_fp(512, 0.04, 5000 + static_cast<std::uint64_t>(i)));
  const Fingerprint q = oracles::random_fp(512, 0.04, 42);
  const auto [max, idx] = bulk_max_similarity(q, set);
  const auto [omax, oidx] = oracles::naive_max_similarity(q, set);
  CHECK(max == omax);
  CHECK(idx == oidx);

  // query in the set
  set[500] = q;
  const auto [m2, i2] = bulk_max_similarity(q, set);
  CHECK(m2 == 1.0);
  CHECK(i2 == 500);

  // all-disjoint: tie at zero resolves to the lowest index
  Fingerprint probe(512);
  probe.set(0);
  std::vector<Fingerprint> empty_set(4, Fingerprint(512));
  const auto [m3, i3] = bulk_max_similarity(probe, empty_set);
  CHECK(m3 == 0.0);
  CHECK(i3 == 0);

  CHECK_THROWS_AS(bulk_max_similarity(q, std::span<const Fingerprint>{}), Error);
}

TEST_CASE("fingerprint file round trip is bit exact") {
  FpConfig cfg;
  cfg.width = 512;
  cfg.radius = 2;
  cfg.hash_seed = 0xABCDEF0123456789ull;
  std::vector<Fingerprint> fps;
  for (const char* s : {"CCO", "c1ccccc1", "CC(=O)O", "C1CCNCC1"})
    fps.push_back(ecfp(parse_smiles(s), cfg));
  const std::string path = "/tmp/tscout_fp_test.bin";
  write_fp_file(path, cfg, fps);
  const auto [cfg2, fps2] = read_fp_file(path);
  CHECK(cfg2.width == cfg.width);
  CHECK(cfg2.radius == cfg.radius);
  CHECK(cfg2.hash_seed == cfg.hash_seed);
  REQUIRE(fps2.size() == fps.size());
  for (std::size_t i = 0; i < fps.size(); ++i) CHECK(fps2[i] == fps[i]);
}

TEST_CASE("similar molecules score higher than dissimilar ones") {
  const Fingerprint hexyl = ecfp(parse_smiles("CCCCCCc1ccccc1"));
  const Fingerprint heptyl = ecfp(parse_smiles("CCCCCCCc1ccccc1"));
  const Fingerprint sugar = ecfp(parse_smiles("OCC(O)C(O)C(O)C(O)CO"));
  CHECK(tanimoto(hexyl, heptyl) > 0.5);
  CHECK(tanimoto(hexyl, sugar) < 0.2);
}
