#include "tscout/fingerprint.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <map>

#include "tscout/errors.hpp"
#include "tscout/util.hpp"

namespace tscout {

Fingerprint::Fingerprint(int width) : width_(width) {
  if (width <= 0 || width % 64 != 0) throw ConfigError("fingerprint width must be a positive multiple of 64");
  words_.assign(static_cast<std::size_t>(width / 64), 0);
}

bool Fingerprint::test(int bit) const {
  return (words_[static_cast<std::size_t>(bit) / 64] >> (static_cast<unsigned>(bit) % 64)) & 1u;
}

void Fingerprint::set(int bit) {
  std::uint64_t& w = words_[static_cast<std::size_t>(bit) / 64];
  const std::uint64_t mask = 1ull << (static_cast<unsigned>(bit) % 64);
  if (!(w & mask)) {
    w |= mask;
    ++popcount_;
  }
}

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  h *= 0xFF51AFD7ED558CCDull;
  h ^= h >> 33;
  return h;
}

int bond_code(BondOrder order) { return static_cast<int>(order); }

}  // namespace

Fingerprint ecfp(const Molecule& mol, const FpConfig& config) {
  // Heavy-atom projection: explicit hydrogens fold into the neighbor's count.
  std::vector<int> heavy;
  std::vector<int> heavy_index(static_cast<std::size_t>(mol.atom_count()), -1);
  for (int i = 0; i < mol.atom_count(); ++i) {
    if (mol.atom(i).atomic_number != 1) {
      heavy_index[static_cast<std::size_t>(i)] = static_cast<int>(heavy.size());
      heavy.push_back(i);
    }
  }
  const int nh = static_cast<int>(heavy.size());
  if (nh == 0) throw Error("cannot fingerprint a molecule without heavy atoms");

  struct Nbr {
    int idx;  // heavy index
    int code;
  };
  std::vector<std::vector<Nbr>> nbrs(static_cast<std::size_t>(nh));
  std::vector<std::uint64_t> ids(static_cast<std::size_t>(nh));
  for (int hi = 0; hi < nh; ++hi) {
    const int ai = heavy[static_cast<std::size_t>(hi)];
    const Atom& a = mol.atom(ai);
    int h_total = a.explicit_h;
    int degree = 0;
    for (const AdjEntry& e : mol.neighbors(ai)) {
      if (mol.atom(e.neighbor).atomic_number == 1) {
        ++h_total;
      } else {
        ++degree;
        nbrs[static_cast<std::size_t>(hi)].push_back(
            {heavy_index[static_cast<std::size_t>(e.neighbor)],
             bond_code(mol.bonds()[static_cast<std::size_t>(e.bond)].order)});
      }
    }
    std::uint64_t h = mix(config.hash_seed, 0x1234u);
    h = mix(h, static_cast<std::uint64_t>(a.atomic_number));
    h = mix(h, static_cast<std::uint64_t>(degree));
    h = mix(h, static_cast<std::uint64_t>(a.formal_charge + 16));
    h = mix(h, static_cast<std::uint64_t>(h_total));
    h = mix(h, a.ring_member ? 1u : 0u);
    h = mix(h, a.aromatic ? 1u : 0u);
    ids[static_cast<std::size_t>(hi)] = h;
  }

  // Environment of (atom, iteration r) covers the ball of radius r around the
  // atom; duplicates by covered atom set keep the smallest identifier.
  std::map<std::vector<int>, std::uint64_t> environments;
  std::vector<std::vector<int>> balls(static_cast<std::size_t>(nh));
  for (int hi = 0; hi < nh; ++hi) {
    balls[static_cast<std::size_t>(hi)] = {hi};
    auto [it, inserted] = environments.try_emplace(balls[static_cast<std::size_t>(hi)],
                                                   ids[static_cast<std::size_t>(hi)]);
    if (!inserted) it->second = std::min(it->second, ids[static_cast<std::size_t>(hi)]);
  }
  for (int iter = 1; iter <= config.radius; ++iter) {
    std::vector<std::uint64_t> next_ids(static_cast<std::size_t>(nh));
    std::vector<std::vector<int>> next_balls(static_cast<std::size_t>(nh));
    for (int hi = 0; hi < nh; ++hi) {
      std::vector<std::pair<int, std::uint64_t>> ctx;
      for (const Nbr& nb : nbrs[static_cast<std::size_t>(hi)])
        ctx.emplace_back(nb.code, ids[static_cast<std::size_t>(nb.idx)]);
      std::sort(ctx.begin(), ctx.end());
      std::uint64_t h = mix(config.hash_seed, static_cast<std::uint64_t>(iter));
      h = mix(h, ids[static_cast<std::size_t>(hi)]);
      for (const auto& [code, nid] : ctx) {
        h = mix(h, static_cast<std::uint64_t>(code));
        h = mix(h, nid);
      }
      next_ids[static_cast<std::size_t>(hi)] = h;

      std::vector<int> ball = balls[static_cast<std::size_t>(hi)];
      for (const Nbr& nb : nbrs[static_cast<std::size_t>(hi)]) {
        const auto& nb_ball = balls[static_cast<std::size_t>(nb.idx)];
        ball.insert(ball.end(), nb_ball.begin(), nb_ball.end());
      }
      std::sort(ball.begin(), ball.end());
      ball.erase(std::unique(ball.begin(), ball.end()), ball.end());
      next_balls[static_cast<std::size_t>(hi)] = std::move(ball);
    }
    ids = std::move(next_ids);
    balls = std::move(next_balls);
    for (int hi = 0; hi < nh; ++hi) {
      auto [it, inserted] =
          environments.try_emplace(balls[static_cast<std::size_t>(hi)], ids[static_cast<std::size_t>(hi)]);
      if (!inserted) it->second = std::min(it->second, ids[static_cast<std::size_t>(hi)]);
    }
  }

  Fingerprint fp(config.width);
  for (const auto& [ball, id] : environments)
    fp.set(static_cast<int>(id % static_cast<std::uint64_t>(config.width)));
  return fp;
}

double tanimoto(const Fingerprint& a, const Fingerprint& b) {
  if (a.width() != b.width()) throw Error("fingerprint width mismatch");
  const auto wa = a.words();
  const auto wb = b.words();
  int inter = 0;
  for (std::size_t i = 0; i < wa.size(); ++i)
    inter += std::popcount(wa[i] & wb[i]);
  const int uni = a.popcount() + b.popcount() - inter;
  if (uni == 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::pair<double, int> bulk_max_similarity(const Fingerprint& query,
                                           std::span<const Fingerprint> set) {
  if (set.empty()) throw Error("bulk_max_similarity on empty set");
  double best = -1.0;
  int best_idx = 0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const double t = tanimoto(query, set[i]);
    if (t > best) {
      best = t;
      best_idx = static_cast<int>(i);
    }
  }
  return {best, best_idx};
}

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
std::uint32_t get_u32(const std::string& s, std::size_t& pos) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(s[pos++])) << (8 * i);
  return v;
}
std::uint64_t get_u64(const std::string& s, std::size_t& pos) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[pos++])) << (8 * i);
  return v;
}

constexpr char kMagic[4] = {'T', 'S', 'F', 'P'};

}  // namespace

void write_fp_file(const std::string& path, const FpConfig& config,
                   std::span<const Fingerprint> fps) {
  std::string out;
  out.append(kMagic, 4);
  put_u32(out, 1);
  put_u32(out, static_cast<std::uint32_t>(config.width));
  put_u32(out, static_cast<std::uint32_t>(config.radius));
  put_u64(out, config.hash_seed);
  put_u64(out, fps.size());
  for (const Fingerprint& fp : fps) {
    if (fp.width() != config.width) throw Error("fingerprint width differs from file config");
    for (std::uint64_t w : fp.words()) put_u64(out, w);
  }
  write_file(path, out);
}

std::pair<FpConfig, std::vector<Fingerprint>> read_fp_file(const std::string& path) {
  const std::string s = read_file(path);
  if (s.size() < 28 || s.compare(0, 4, kMagic, 4) != 0)
    throw IoError("not a fingerprint file: " + path);
  std::size_t pos = 4;
  const std::uint32_t version = get_u32(s, pos);
  if (version != 1) throw IoError("unsupported fingerprint file version");
  FpConfig config;
  config.width = static_cast<int>(get_u32(s, pos));
  config.radius = static_cast<int>(get_u32(s, pos));
  config.hash_seed = get_u64(s, pos);
  const std::uint64_t count = get_u64(s, pos);
  const std::size_t words_per_row = static_cast<std::size_t>(config.width) / 64;
  if (s.size() != pos + count * words_per_row * 8)
    throw IoError("fingerprint file truncated: " + path);
  std::vector<Fingerprint> fps;
  fps.reserve(count);
  for (std::uint64_t r = 0; r < count; ++r) {
    Fingerprint fp(config.width);
    for (std::size_t w = 0; w < words_per_row; ++w) {
      const std::uint64_t word = get_u64(s, pos);
      for (int b = 0; b < 64; ++b)
        if ((word >> b) & 1u) fp.set(static_cast<int>(w * 64 + static_cast<std::size_t>(b)));
    }
    fps.push_back(std::move(fp));
  }
  return {config, fps};
}

}  // namespace tscout
