#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace tscout {

// SplitMix64: small, fast, deterministic across platforms. Every stochastic
// step in the pipeline derives one of these from (seed, stream tags) so that
// results are independent of scheduling and identical across runs.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Unbiased draw in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n);

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // k distinct indices drawn from [0, n) without replacement.
  std::vector<int> sample_without_replacement(int n, int k);

 private:
  std::uint64_t state_;
};

// Mixes a list of stream tags into one 64-bit seed.
std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts);

// 64-bit hash of an arbitrary byte string (FNV-1a), used for file digests.
std::uint64_t fnv1a64(std::string_view bytes);

std::string to_hex(std::uint64_t v);

// Index-parallel map: fn(i) for i in [0, n). Each task writes only to its own
// slots, so output is identical to the serial loop regardless of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// --- small text helpers -----------------------------------------------------

std::vector<std::string> split(std::string_view line, char sep);
std::string join(const std::vector<std::string>& parts, const std::string& sep);
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);
bool file_exists(const std::string& path);

// Formats a double with enough digits to round-trip.
std::string format_double(double v);

}  // namespace tscout
