#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tscout {

// --- elements ----------------------------------------------------------------

// Atomic number for a periodic-table symbol, or nullopt for unknown symbols.
std::optional<int> element_from_symbol(std::string_view symbol);
std::string_view element_symbol(int atomic_number);

// Elements admitted by the curation rules:
// H, C, N, O, P, S, F, Cl, Br, I, Mg, Ca, Zn, Fe, Mn.
bool element_whitelisted(int atomic_number);

// Smallest standard valence >= bonded, or nullopt when every standard valence
// is exceeded. Only elements of the organic subset have standard valences here
// (B 3, C 4, N 3, O 2, P 3/5, S 2/4/6, halogens 1).
std::optional<int> default_valence(int atomic_number, int bonded);

// Implicit hydrogen count for a bare organic-subset atom. Aromatic atoms are
// tried under two readings of their aromatic bonds -- all single (lone-pair
// heteroatoms) and single plus one pi contribution -- keeping the smaller
// feasible hydrogen count. nullopt = valence violation.
std::optional<int> implicit_hydrogens(int atomic_number, bool aromatic, int aromatic_bonds,
                                      int other_bond_sum);

// --- molecular graph ----------------------------------------------------------

enum class BondOrder : std::uint8_t { Single = 1, Double = 2, Triple = 3, Aromatic = 4 };

// Order contribution used for valence arithmetic; aromatic counts 1.5.
double bond_order_value(BondOrder order);

struct Atom {
  int atomic_number = 6;
  bool aromatic = false;
  int formal_charge = 0;
  int explicit_h = 0;  // resolved hydrogen count attached to this atom
  bool ring_member = false;
};

struct Bond {
  int a = 0;
  int b = 0;
  BondOrder order = BondOrder::Single;
};

struct AdjEntry {
  int neighbor;
  int bond;  // index into bonds()
};

// Immutable atom/bond graph. Construction validates the graph (no self loops,
// no duplicate edges, aromatic bonds only between aromatic atoms) and derives
// ring membership from cycle detection, overwriting any incoming flags.
class Molecule {
 public:
  Molecule() = default;
  Molecule(std::vector<Atom> atoms, std::vector<Bond> bonds, std::string source_text = "");

  int atom_count() const { return static_cast<int>(atoms_.size()); }
  int bond_count() const { return static_cast<int>(bonds_.size()); }
  const Atom& atom(int i) const { return atoms_[static_cast<std::size_t>(i)]; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<Bond>& bonds() const { return bonds_; }
  std::span<const AdjEntry> neighbors(int i) const {
    return adjacency_[static_cast<std::size_t>(i)];
  }
  const std::string& source_text() const { return source_; }

  // Sum of bond-order values at atom i (aromatic = 1.5).
  double bonded_order_sum(int i) const;

  // Connected components as atom-index lists, in first-atom order.
  std::vector<std::vector<int>> fragments() const;

  // Number of independent cycles (|E| - |V| + #components).
  int ring_count() const;

 private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<AdjEntry>> adjacency_;
  std::string source_;
};

// Induced subgraph on `keep` (original order preserved). When
// saturate_cut_bonds is set, every bond lost by a kept atom is replaced by
// hydrogens (one per bond order unit, aromatic counts one).
Molecule extract_subgraph(const Molecule& mol, const std::vector<int>& keep,
                          bool saturate_cut_bonds);

// --- graph utilities ----------------------------------------------------------

int heavy_atom_count(const Molecule& mol);
bool check_element_whitelist(const Molecule& mol);

// Connected component with the most heavy atoms; ties broken by bond count,
// then by canonical string order.
Molecule largest_fragment(const Molecule& mol);

// Order-independent per-atom start invariants (element, aromatic, charge,
// hydrogens, degree, ring flag), shared by canonical ranking and fingerprints.
std::vector<std::uint64_t> atom_invariants(const Molecule& mol);

// Canonical atom ranks: a permutation of 0..n-1 obtained by iterative
// neighborhood refinement of atom_invariants, with residual (symmetry) ties
// broken deterministically.
std::vector<int> canonical_ranks(const Molecule& mol);

}  // namespace tscout
