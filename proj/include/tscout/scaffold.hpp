#pragma once

#include <span>
#include <string>
#include <vector>

#include "tscout/chem.hpp"

namespace tscout {

struct ScaffoldKey {
  std::string canonical_string;  // empty for acyclic molecules
  int ring_count = 0;

  bool operator==(const ScaffoldKey&) const = default;
};

// Murcko framework: ring systems plus the linker atoms and bonds on paths
// between rings. Terminal side chains are pruned iteratively (non-ring atoms
// of degree <= 1); atoms attached to the framework by a double or triple bond
// are retained. Cut bonds are saturated with hydrogens. Acyclic molecules
// yield the empty framework.
Molecule murcko_scaffold(const Molecule& mol);

ScaffoldKey scaffold_key(const Molecule& mol);

// One representative index per distinct scaffold key, first occurrence wins.
// All acyclic molecules share the single empty-framework key.
std::vector<int> scaffold_dedupe(std::span<const Molecule> mols);

}  // namespace tscout
