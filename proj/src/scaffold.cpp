#include "tscout/scaffold.hpp"

#include <algorithm>
#include <map>

#include "tscout/smiles.hpp"

namespace tscout {

Molecule murcko_scaffold(const Molecule& mol) {
  const int n = mol.atom_count();
  bool any_ring = false;
  for (const Atom& a : mol.atoms()) any_ring |= a.ring_member;
  if (!any_ring) return Molecule();

  std::vector<bool> keep(static_cast<std::size_t>(n), true);
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) degree[static_cast<std::size_t>(i)] = static_cast<int>(mol.neighbors(i).size());

  // Iteratively strip non-ring terminal atoms; what survives is the ring
  // systems and the linkers between them.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      if (!keep[static_cast<std::size_t>(i)] || mol.atom(i).ring_member) continue;
      if (degree[static_cast<std::size_t>(i)] <= 1) {
        keep[static_cast<std::size_t>(i)] = false;
        changed = true;
        for (const AdjEntry& e : mol.neighbors(i))
          if (keep[static_cast<std::size_t>(e.neighbor)]) --degree[static_cast<std::size_t>(e.neighbor)];
      }
    }
  }

  // Re-attach atoms bound to the framework by a double or triple bond
  // (carbonyl oxygens and the like stay part of the framework). Snapshot
  // first so the result does not depend on bond order.
  const std::vector<bool> core = keep;
  for (const Bond& b : mol.bonds()) {
    if (b.order != BondOrder::Double && b.order != BondOrder::Triple) continue;
    const bool ka = core[static_cast<std::size_t>(b.a)];
    const bool kb = core[static_cast<std::size_t>(b.b)];
    if (ka != kb) keep[static_cast<std::size_t>(ka ? b.b : b.a)] = true;
  }

  std::vector<int> kept;
  for (int i = 0; i < n; ++i)
    if (keep[static_cast<std::size_t>(i)]) kept.push_back(i);
  return extract_subgraph(mol, kept, true);
}

ScaffoldKey scaffold_key(const Molecule& mol) {
  const Molecule framework = murcko_scaffold(mol);
  if (framework.atom_count() == 0) return {"", 0};
  return {write_smiles(framework), framework.ring_count()};
}

std::vector<int> scaffold_dedupe(std::span<const Molecule> mols) {
  std::vector<int> representatives;
  std::map<std::string, int> seen;
  for (std::size_t i = 0; i < mols.size(); ++i) {
    const ScaffoldKey key = scaffold_key(mols[i]);
    if (seen.emplace(key.canonical_string, static_cast<int>(i)).second)
      representatives.push_back(static_cast<int>(i));
  }
  return representatives;
}

}  // namespace tscout
