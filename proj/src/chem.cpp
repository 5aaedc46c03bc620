#include "tscout/chem.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>

#include "tscout/errors.hpp"
#include "tscout/smiles.hpp"
#include "tscout/util.hpp"

namespace tscout {

namespace {

constexpr std::string_view kSymbols[] = {
    "?",  "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na",
    "Mg", "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",
    "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br",
    "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag",
    "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr",
    "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu",
    "Hf", "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi",
    "Po", "At", "Rn"};

constexpr int kMaxZ = static_cast<int>(std::size(kSymbols)) - 1;

constexpr int kWhitelist[] = {1, 6, 7, 8, 15, 16, 9, 17, 35, 53, 12, 20, 30, 26, 25};

std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  SplitMix64 m(h);
  return m.next();
}

}  // namespace

std::optional<int> element_from_symbol(std::string_view symbol) {
  for (int z = 1; z <= kMaxZ; ++z) {
    if (kSymbols[z] == symbol) return z;
  }
  return std::nullopt;
}

std::string_view element_symbol(int atomic_number) {
  if (atomic_number < 1 || atomic_number > kMaxZ) return "?";
  return kSymbols[atomic_number];
}

bool element_whitelisted(int atomic_number) {
  return std::find(std::begin(kWhitelist), std::end(kWhitelist), atomic_number) !=
         std::end(kWhitelist);
}

std::optional<int> default_valence(int atomic_number, int bonded) {
  auto pick = [bonded](std::initializer_list<int> valences) -> std::optional<int> {
    for (int v : valences) {
      if (bonded <= v) return v;
    }
    return std::nullopt;
  };
  switch (atomic_number) {
    case 5: return pick({3});           // B
    case 6: return pick({4});           // C
    case 7: return pick({3});           // N
    case 8: return pick({2});           // O
    case 15: return pick({3, 5});       // P
    case 16: return pick({2, 4, 6});    // S
    case 9:
    case 17:
    case 35:
    case 53: return pick({1});          // halogens
    default: return std::nullopt;
  }
}

std::optional<int> implicit_hydrogens(int atomic_number, bool aromatic, int aromatic_bonds,
                                      int other_bond_sum) {
  if (!aromatic) {
    const int bonded = other_bond_sum;
    const auto v = default_valence(atomic_number, bonded);
    if (!v) return std::nullopt;
    return *v - bonded;
  }
  std::optional<int> best;
  const int low = aromatic_bonds + other_bond_sum;
  for (const int bonded : {low, aromatic_bonds >= 1 ? low + 1 : low}) {
    const auto v = default_valence(atomic_number, bonded);
    if (!v) continue;
    const int h = *v - bonded;
    if (!best || h < *best) best = h;
  }
  return best;
}

double bond_order_value(BondOrder order) {
  switch (order) {
    case BondOrder::Single: return 1.0;
    case BondOrder::Double: return 2.0;
    case BondOrder::Triple: return 3.0;
    case BondOrder::Aromatic: return 1.5;
  }
  return 1.0;
}

Molecule::Molecule(std::vector<Atom> atoms, std::vector<Bond> bonds, std::string source_text)
    : atoms_(std::move(atoms)), bonds_(std::move(bonds)), source_(std::move(source_text)) {
  const int n = atom_count();
  adjacency_.assign(static_cast<std::size_t>(n), {});
  std::set<std::pair<int, int>> seen;
  for (int bi = 0; bi < bond_count(); ++bi) {
    const Bond& b = bonds_[static_cast<std::size_t>(bi)];
    if (b.a < 0 || b.a >= n || b.b < 0 || b.b >= n)
      throw Error("bond endpoint out of range");
    if (b.a == b.b) throw Error("self-loop bond");
    auto key = std::minmax(b.a, b.b);
    if (!seen.insert({key.first, key.second}).second)
      throw Error("duplicate bond between atoms " + std::to_string(b.a) + " and " +
                  std::to_string(b.b));
    if (b.order == BondOrder::Aromatic &&
        (!atoms_[static_cast<std::size_t>(b.a)].aromatic ||
         !atoms_[static_cast<std::size_t>(b.b)].aromatic))
      throw Error("aromatic bond between non-aromatic atoms");
    adjacency_[static_cast<std::size_t>(b.a)].push_back({b.b, bi});
    adjacency_[static_cast<std::size_t>(b.b)].push_back({b.a, bi});
  }
  for (auto& a : atoms_) {
    if (a.explicit_h < 0) throw Error("negative hydrogen count");
    a.ring_member = false;
  }

  // Ring membership: an atom is in a ring iff it touches a non-bridge edge.
  // Iterative DFS bridge detection.
  std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  std::vector<int> parent_edge(static_cast<std::size_t>(n), -1);
  int timer = 0;
  for (int start = 0; start < n; ++start) {
    if (disc[static_cast<std::size_t>(start)] != -1) continue;
    std::vector<std::pair<int, std::size_t>> stack{{start, 0}};
    disc[static_cast<std::size_t>(start)] = low[static_cast<std::size_t>(start)] = timer++;
    while (!stack.empty()) {
      auto& [v, ei] = stack.back();
      const auto& adj = adjacency_[static_cast<std::size_t>(v)];
      if (ei < adj.size()) {
        const AdjEntry e = adj[ei++];
        if (e.bond == parent_edge[static_cast<std::size_t>(v)]) continue;
        if (disc[static_cast<std::size_t>(e.neighbor)] == -1) {
          disc[static_cast<std::size_t>(e.neighbor)] =
              low[static_cast<std::size_t>(e.neighbor)] = timer++;
          parent_edge[static_cast<std::size_t>(e.neighbor)] = e.bond;
          stack.push_back({e.neighbor, 0});
        } else {
          low[static_cast<std::size_t>(v)] =
              std::min(low[static_cast<std::size_t>(v)], disc[static_cast<std::size_t>(e.neighbor)]);
        }
      } else {
        stack.pop_back();
        if (!stack.empty()) {
          const int p = stack.back().first;
          low[static_cast<std::size_t>(p)] =
              std::min(low[static_cast<std::size_t>(p)], low[static_cast<std::size_t>(v)]);
        }
      }
    }
  }
  // Mark endpoints of every non-bridge edge (back edges were handled above via
  // low-link, but endpoints of back edges themselves need marking too).
  for (int bi = 0; bi < bond_count(); ++bi) {
    const Bond& b = bonds_[static_cast<std::size_t>(bi)];
    const int child = disc[static_cast<std::size_t>(b.a)] > disc[static_cast<std::size_t>(b.b)]
                          ? b.a
                          : b.b;
    const bool tree_edge = parent_edge[static_cast<std::size_t>(child)] == bi;
    if (!tree_edge) {
      atoms_[static_cast<std::size_t>(b.a)].ring_member = true;
      atoms_[static_cast<std::size_t>(b.b)].ring_member = true;
    } else if (low[static_cast<std::size_t>(child)] < disc[static_cast<std::size_t>(child)]) {
      atoms_[static_cast<std::size_t>(b.a)].ring_member = true;
      atoms_[static_cast<std::size_t>(b.b)].ring_member = true;
    }
  }
}

double Molecule::bonded_order_sum(int i) const {
  double sum = 0;
  for (const AdjEntry& e : neighbors(i))
    sum += bond_order_value(bonds_[static_cast<std::size_t>(e.bond)].order);
  return sum;
}

std::vector<std::vector<int>> Molecule::fragments() const {
  const int n = atom_count();
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> out;
  for (int start = 0; start < n; ++start) {
    if (comp[static_cast<std::size_t>(start)] != -1) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<int> stack{start};
    comp[static_cast<std::size_t>(start)] = id;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      out[static_cast<std::size_t>(id)].push_back(v);
      for (const AdjEntry& e : neighbors(v)) {
        if (comp[static_cast<std::size_t>(e.neighbor)] == -1) {
          comp[static_cast<std::size_t>(e.neighbor)] = id;
          stack.push_back(e.neighbor);
        }
      }
    }
    std::sort(out[static_cast<std::size_t>(id)].begin(), out[static_cast<std::size_t>(id)].end());
  }
  return out;
}

int Molecule::ring_count() const {
  return bond_count() - atom_count() + static_cast<int>(fragments().size());
}

Molecule extract_subgraph(const Molecule& mol, const std::vector<int>& keep,
                          bool saturate_cut_bonds) {
  std::vector<int> remap(static_cast<std::size_t>(mol.atom_count()), -1);
  std::vector<Atom> atoms;
  atoms.reserve(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    remap[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
    atoms.push_back(mol.atom(keep[i]));
  }
  std::vector<Bond> bonds;
  for (const Bond& b : mol.bonds()) {
    const int a = remap[static_cast<std::size_t>(b.a)];
    const int bb = remap[static_cast<std::size_t>(b.b)];
    if (a >= 0 && bb >= 0) {
      bonds.push_back({a, bb, b.order});
    } else if (saturate_cut_bonds && (a >= 0 || bb >= 0)) {
      const int kept = a >= 0 ? a : bb;
      const int h = b.order == BondOrder::Aromatic
                        ? 1
                        : static_cast<int>(bond_order_value(b.order));
      atoms[static_cast<std::size_t>(kept)].explicit_h += h;
    }
  }
  return Molecule(std::move(atoms), std::move(bonds));
}

int heavy_atom_count(const Molecule& mol) {
  int n = 0;
  for (const Atom& a : mol.atoms())
    if (a.atomic_number != 1) ++n;
  return n;
}

bool check_element_whitelist(const Molecule& mol) {
  for (const Atom& a : mol.atoms())
    if (!element_whitelisted(a.atomic_number)) return false;
  return true;
}

Molecule largest_fragment(const Molecule& mol) {
  const auto frags = mol.fragments();
  if (frags.size() <= 1) return mol;
  Molecule best;
  int best_heavy = -1, best_bonds = -1;
  std::string best_str;
  for (const auto& frag : frags) {
    Molecule cand = extract_subgraph(mol, frag, false);
    const int heavy = heavy_atom_count(cand);
    const int nb = cand.bond_count();
    if (heavy < best_heavy || (heavy == best_heavy && nb < best_bonds)) continue;
    std::string str = write_smiles(cand);
    if (heavy > best_heavy || nb > best_bonds || str < best_str) {
      best = std::move(cand);
      best_heavy = heavy;
      best_bonds = nb;
      best_str = std::move(str);
    }
  }
  return best;
}

std::vector<std::uint64_t> atom_invariants(const Molecule& mol) {
  std::vector<std::uint64_t> inv(static_cast<std::size_t>(mol.atom_count()));
  for (int i = 0; i < mol.atom_count(); ++i) {
    const Atom& a = mol.atom(i);
    std::uint64_t h = 0x243F6A8885A308D3ull;
    h = hash_mix(h, static_cast<std::uint64_t>(a.atomic_number));
    h = hash_mix(h, a.aromatic ? 1u : 0u);
    h = hash_mix(h, static_cast<std::uint64_t>(a.formal_charge + 16));
    h = hash_mix(h, static_cast<std::uint64_t>(a.explicit_h));
    h = hash_mix(h, static_cast<std::uint64_t>(mol.neighbors(i).size()));
    h = hash_mix(h, a.ring_member ? 1u : 0u);
    inv[static_cast<std::size_t>(i)] = h;
  }
  return inv;
}

namespace {

// One refinement sweep: rank by invariant value, then rehash with sorted
// (bond order, neighbor rank) context.
int refine(const Molecule& mol, std::vector<std::uint64_t>& inv, std::vector<int>& ranks) {
  const int n = mol.atom_count();
  std::vector<std::uint64_t> sorted(inv);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  ranks.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    ranks[static_cast<std::size_t>(i)] = static_cast<int>(
        std::lower_bound(sorted.begin(), sorted.end(), inv[static_cast<std::size_t>(i)]) -
        sorted.begin());
  }
  std::vector<std::uint64_t> next(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<int, int>> ctx;
    for (const AdjEntry& e : mol.neighbors(i)) {
      ctx.emplace_back(static_cast<int>(mol.bonds()[static_cast<std::size_t>(e.bond)].order),
                       ranks[static_cast<std::size_t>(e.neighbor)]);
    }
    std::sort(ctx.begin(), ctx.end());
    std::uint64_t h = hash_mix(0x452821E638D01377ull,
                               static_cast<std::uint64_t>(ranks[static_cast<std::size_t>(i)]));
    for (const auto& [order, rank] : ctx) {
      h = hash_mix(h, static_cast<std::uint64_t>(order));
      h = hash_mix(h, static_cast<std::uint64_t>(rank));
    }
    next[static_cast<std::size_t>(i)] = h;
  }
  inv = std::move(next);
  return static_cast<int>(sorted.size());
}

}  // namespace

std::vector<int> canonical_ranks(const Molecule& mol) {
  const int n = mol.atom_count();
  if (n == 0) return {};
  std::vector<std::uint64_t> inv = atom_invariants(mol);
  std::vector<int> ranks;
  int classes = refine(mol, inv, ranks);
  for (int iter = 0; iter < n + 2; ++iter) {
    const int next_classes = refine(mol, inv, ranks);
    if (next_classes == classes) break;
    classes = next_classes;
  }
  // Residual ties are symmetry classes; break them one atom at a time so the
  // result is a full permutation. Within a class members are automorphic, so
  // the choice cannot change the canonical string.
  while (classes < n) {
    int chosen = -1;
    int chosen_rank = n;
    std::vector<int> count(static_cast<std::size_t>(n), 0);
    for (int r : ranks) ++count[static_cast<std::size_t>(r)];
    for (int i = 0; i < n; ++i) {
      const int r = ranks[static_cast<std::size_t>(i)];
      if (count[static_cast<std::size_t>(r)] > 1 && r < chosen_rank) {
        chosen_rank = r;
        chosen = i;
      }
    }
    if (chosen < 0) break;
    inv[static_cast<std::size_t>(chosen)] = hash_mix(inv[static_cast<std::size_t>(chosen)], 1);
    classes = refine(mol, inv, ranks);
    for (int iter = 0; iter < n + 2; ++iter) {
      const int next_classes = refine(mol, inv, ranks);
      if (next_classes == classes) break;
      classes = next_classes;
    }
  }
  return ranks;
}

}  // namespace tscout
