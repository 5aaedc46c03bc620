#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tscout/chem.hpp"

namespace tscout {

struct ParseWarning {
  std::string message;
  std::size_t offset;
};

// Parses a SMILES string covering the organic subset, bracket atoms with
// charge and hydrogen counts, branches, ring closures (including %nn), dot
// fragments and aromatic lowercase notation. Stereo descriptors, isotopes and
// atom classes are accepted and ignored with a warning. Implicit hydrogens
// follow the standard default valences. Malformed input raises ParseError
// with the character offset of the offending token.
Molecule parse_smiles(std::string_view text, std::vector<ParseWarning>* warnings = nullptr);

// Canonical SMILES for a molecule: traversal ordered by canonical_ranks, so
// isomorphic inputs produce the identical string. The output reparses to a
// graph isomorphic to the input.
std::string write_smiles(const Molecule& mol);

}  // namespace tscout
