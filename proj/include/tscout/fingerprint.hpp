#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tscout/chem.hpp"

namespace tscout {

// Fixed-width bit vector with cached popcount. Width must be a multiple of 64.
class Fingerprint {
 public:
  Fingerprint() = default;
  explicit Fingerprint(int width);

  int width() const { return width_; }
  int popcount() const { return popcount_; }
  bool test(int bit) const;
  void set(int bit);
  std::span<const std::uint64_t> words() const { return words_; }
  std::uint64_t& word(std::size_t i) { return words_[i]; }

  bool operator==(const Fingerprint& other) const {
    return width_ == other.width_ && words_ == other.words_;
  }

 private:
  std::vector<std::uint64_t> words_;
  int width_ = 0;
  int popcount_ = 0;
};

struct FpConfig {
  int width = 2048;
  int radius = 2;
  std::uint64_t hash_seed = 0x7A3C9D5B11E6F04Dull;
};

// Circular fingerprint over the heavy-atom graph: every heavy atom contributes
// hashed environment identifiers for iterations 0..radius; environments that
// cover the same atom set are emitted once (smallest hash wins); identifiers
// fold into the bit vector modulo width. Deterministic and invariant under
// atom relabeling. Throws on molecules without heavy atoms.
Fingerprint ecfp(const Molecule& mol, const FpConfig& config = {});

// |a AND b| / |a OR b|; 0 when both empty. Throws on width mismatch.
double tanimoto(const Fingerprint& a, const Fingerprint& b);

// (max similarity, index of first maximum). Throws on empty set.
std::pair<double, int> bulk_max_similarity(const Fingerprint& query,
                                           std::span<const Fingerprint> set);

// --- binary fingerprint file ---------------------------------------------------
// Little-endian layout: magic "TSFP", u32 version, u32 width, u32 radius,
// u64 hash seed, u64 count, then count rows of width/64 words each.

void write_fp_file(const std::string& path, const FpConfig& config,
                   std::span<const Fingerprint> fps);
std::pair<FpConfig, std::vector<Fingerprint>> read_fp_file(const std::string& path);

}  // namespace tscout
