#include "tscout/smiles.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <optional>

#include "tscout/errors.hpp"

namespace tscout {

namespace {

bool is_aromatic_symbol(int z) {
  return z == 5 || z == 6 || z == 7 || z == 8 || z == 15 || z == 16;
}

struct PendingBond {
  std::optional<BondOrder> order;  // nullopt = default for the atom pair
  std::size_t offset = 0;
};

struct RingBond {
  int atom;
  std::optional<BondOrder> order;
  std::size_t offset;
};

struct ParserAtom {
  Atom atom;
  bool bracket = false;
  std::size_t offset = 0;
  bool h_given = false;  // bracket H count provided
};

class Parser {
 public:
  Parser(std::string_view text, std::vector<ParseWarning>* warnings)
      : text_(text), warnings_(warnings) {}

  Molecule run() {
    if (text_.empty()) throw ParseError("empty structure string", 0);
    while (pos_ < text_.size()) step();
    if (!branch_stack_.empty())
      throw ParseError("unbalanced branch: '(' never closed", branch_offsets_.back());
    if (!ring_bonds_.empty())
      throw ParseError("unclosed ring bond " + std::to_string(ring_bonds_.begin()->first),
                       ring_bonds_.begin()->second.offset);
    if (pending_.has_value())
      throw ParseError("dangling bond symbol", pending_->offset);
    if (atoms_.empty()) throw ParseError("no atoms in input", 0);
    resolve_hydrogens();
    std::vector<Atom> atoms;
    atoms.reserve(atoms_.size());
    for (const ParserAtom& pa : atoms_) atoms.push_back(pa.atom);
    try {
      return Molecule(std::move(atoms), std::move(bonds_), std::string(text_));
    } catch (const Error& e) {
      throw ParseError(e.what(), 0);
    }
  }

 private:
  void warn(const std::string& msg, std::size_t offset) {
    if (warnings_) warnings_->push_back({msg, offset});
  }

  void step() {
    const char c = text_[pos_];
    switch (c) {
      case '(':
        if (prev_ < 0) throw ParseError("branch start with no preceding atom", pos_);
        branch_stack_.push_back(prev_);
        branch_offsets_.push_back(pos_);
        ++pos_;
        return;
      case ')':
        if (branch_stack_.empty()) throw ParseError("unbalanced branch: stray ')'", pos_);
        if (pending_.has_value()) throw ParseError("bond symbol before ')'", pos_);
        prev_ = branch_stack_.back();
        branch_stack_.pop_back();
        branch_offsets_.pop_back();
        ++pos_;
        return;
      case '.':
        if (pending_.has_value()) throw ParseError("bond symbol before '.'", pos_);
        if (prev_ < 0) throw ParseError("'.' with no preceding fragment", pos_);
        prev_ = -1;
        ++pos_;
        return;
      case '-': set_pending(BondOrder::Single); return;
      case '=': set_pending(BondOrder::Double); return;
      case '#': set_pending(BondOrder::Triple); return;
      case ':': set_pending(BondOrder::Aromatic); return;
      case '/':
      case '\\':
        warn("stereo bond symbol ignored", pos_);
        set_pending(BondOrder::Single);
        return;
      case '%': {
        if (pos_ + 2 >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) ||
            !std::isdigit(static_cast<unsigned char>(text_[pos_ + 2])))
          throw ParseError("'%' ring bond needs two digits", pos_);
        const int rnum = (text_[pos_ + 1] - '0') * 10 + (text_[pos_ + 2] - '0');
        ring_closure(rnum, pos_);
        pos_ += 3;
        return;
      }
      case '[': parse_bracket_atom(); return;
      default:
        if (std::isdigit(static_cast<unsigned char>(c))) {
          ring_closure(c - '0', pos_);
          ++pos_;
          return;
        }
        parse_organic_atom();
    }
  }

  void set_pending(BondOrder order) {
    if (prev_ < 0) throw ParseError("bond symbol with no preceding atom", pos_);
    if (pending_.has_value()) throw ParseError("two bond symbols in a row", pos_);
    pending_ = PendingBond{order, pos_};
    ++pos_;
  }

  void parse_organic_atom() {
    const std::size_t at = pos_;
    const char c = text_[pos_];
    int z = 0;
    bool aromatic = false;
    // two-letter organic subset first
    if (pos_ + 1 < text_.size()) {
      const std::string_view two = text_.substr(pos_, 2);
      if (two == "Cl" || two == "Br") {
        z = two == "Cl" ? 17 : 35;
        pos_ += 2;
      }
    }
    if (z == 0) {
      switch (c) {
        case 'B': z = 5; break;
        case 'C': z = 6; break;
        case 'N': z = 7; break;
        case 'O': z = 8; break;
        case 'P': z = 15; break;
        case 'S': z = 16; break;
        case 'F': z = 9; break;
        case 'I': z = 53; break;
        case 'b': z = 5; aromatic = true; break;
        case 'c': z = 6; aromatic = true; break;
        case 'n': z = 7; aromatic = true; break;
        case 'o': z = 8; aromatic = true; break;
        case 'p': z = 15; aromatic = true; break;
        case 's': z = 16; aromatic = true; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", pos_);
      }
      ++pos_;
    }
    ParserAtom pa;
    pa.atom.atomic_number = z;
    pa.atom.aromatic = aromatic;
    pa.offset = at;
    add_atom(pa);
  }

  void parse_bracket_atom() {
    const std::size_t at = pos_;
    ++pos_;  // '['
    // isotope
    std::size_t iso_start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ > iso_start) warn("isotope label ignored", iso_start);
    if (pos_ >= text_.size()) throw ParseError("unterminated bracket atom", at);

    // element symbol (uppercase+optional lowercase, or aromatic lowercase)
    int z = 0;
    bool aromatic = false;
    const char c0 = text_[pos_];
    if (std::isupper(static_cast<unsigned char>(c0))) {
      std::string sym(1, c0);
      // longest symbol match wins inside brackets ([Co] is cobalt)
      if (pos_ + 1 < text_.size() && std::islower(static_cast<unsigned char>(text_[pos_ + 1]))) {
        std::string two = sym + text_[pos_ + 1];
        if (auto e2 = element_from_symbol(two)) {
          z = *e2;
          pos_ += 2;
        }
      }
      if (z == 0) {
        auto e1 = element_from_symbol(sym);
        if (!e1) throw ParseError("unknown element symbol '" + sym + "'", pos_);
        z = *e1;
        ++pos_;
      }
    } else if (std::islower(static_cast<unsigned char>(c0))) {
      std::string sym(1, static_cast<char>(std::toupper(static_cast<unsigned char>(c0))));
      auto e1 = element_from_symbol(sym);
      if (!e1 || !is_aromatic_symbol(*e1))
        throw ParseError(std::string("unknown aromatic symbol '") + c0 + "'", pos_);
      z = *e1;
      aromatic = true;
      ++pos_;
    } else {
      throw ParseError("expected element symbol in bracket", pos_);
    }

    ParserAtom pa;
    pa.atom.atomic_number = z;
    pa.atom.aromatic = aromatic;
    pa.bracket = true;
    pa.h_given = true;  // bracket atoms default to zero hydrogens
    pa.offset = at;

    // chirality
    while (pos_ < text_.size() && text_[pos_] == '@') {
      warn("chirality descriptor ignored", pos_);
      ++pos_;
      if (pos_ < text_.size() && (text_.compare(pos_, 2, "TH") == 0 || text_.compare(pos_, 2, "AL") == 0))
        pos_ += 3;  // @TH1 style
    }
    // hydrogen count
    if (pos_ < text_.size() && text_[pos_] == 'H') {
      ++pos_;
      int h = 1;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        h = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
          h = h * 10 + (text_[pos_++] - '0');
      }
      pa.atom.explicit_h = h;
    }
    // charge
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      const char sign_char = text_[pos_];
      const int sign = sign_char == '+' ? 1 : -1;
      int magnitude = 0;
      while (pos_ < text_.size() && text_[pos_] == sign_char) {
        ++magnitude;
        ++pos_;
      }
      if (magnitude == 1 && pos_ < text_.size() &&
          std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        magnitude = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
          magnitude = magnitude * 10 + (text_[pos_++] - '0');
      }
      pa.atom.formal_charge = sign * magnitude;
    }
    // atom class
    if (pos_ < text_.size() && text_[pos_] == ':') {
      const std::size_t cls = pos_;
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      warn("atom class ignored", cls);
    }
    if (pos_ >= text_.size() || text_[pos_] != ']')
      throw ParseError("unterminated bracket atom", at);
    ++pos_;
    add_atom(pa);
  }

  void add_atom(const ParserAtom& pa) {
    const int idx = static_cast<int>(atoms_.size());
    atoms_.push_back(pa);
    if (prev_ >= 0) {
      add_bond(prev_, idx, pending_.has_value() ? pending_->order : std::nullopt,
               pending_.has_value() ? pending_->offset : pa.offset);
    }
    pending_.reset();
    prev_ = idx;
  }

  void add_bond(int a, int b, std::optional<BondOrder> order, std::size_t offset) {
    if (a == b) throw ParseError("ring bond closes onto its own atom", offset);
    for (const Bond& bond : bonds_) {
      if ((bond.a == a && bond.b == b) || (bond.a == b && bond.b == a))
        throw ParseError("duplicate bond between the same atoms", offset);
    }
    BondOrder resolved;
    if (order.has_value()) {
      resolved = *order;
    } else {
      resolved = (atoms_[static_cast<std::size_t>(a)].atom.aromatic &&
                  atoms_[static_cast<std::size_t>(b)].atom.aromatic)
                     ? BondOrder::Aromatic
                     : BondOrder::Single;
    }
    if (resolved == BondOrder::Aromatic &&
        (!atoms_[static_cast<std::size_t>(a)].atom.aromatic ||
         !atoms_[static_cast<std::size_t>(b)].atom.aromatic))
      throw ParseError("aromatic bond between non-aromatic atoms", offset);
    bonds_.push_back({a, b, resolved});
  }

  void ring_closure(int rnum, std::size_t offset) {
    if (prev_ < 0) throw ParseError("ring bond digit with no preceding atom", offset);
    auto it = ring_bonds_.find(rnum);
    if (it == ring_bonds_.end()) {
      ring_bonds_[rnum] = RingBond{prev_, pending_.has_value() ? pending_->order : std::nullopt,
                                   offset};
      pending_.reset();
      return;
    }
    const RingBond open = it->second;
    ring_bonds_.erase(it);
    std::optional<BondOrder> order = open.order;
    if (pending_.has_value() && pending_->order.has_value()) {
      if (order.has_value() && *order != *pending_->order)
        throw ParseError("conflicting ring bond orders", offset);
      order = pending_->order;
    }
    pending_.reset();
    add_bond(open.atom, prev_, order, offset);
  }

  // Implicit hydrogens for non-bracket atoms via default valences; detects
  // valence violations on the organic subset.
  void resolve_hydrogens() {
    std::vector<int> aromatic_bonds(atoms_.size(), 0);
    std::vector<int> other_sum(atoms_.size(), 0);
    for (const Bond& b : bonds_) {
      if (b.order == BondOrder::Aromatic) {
        ++aromatic_bonds[static_cast<std::size_t>(b.a)];
        ++aromatic_bonds[static_cast<std::size_t>(b.b)];
      } else {
        const int v = static_cast<int>(bond_order_value(b.order));
        other_sum[static_cast<std::size_t>(b.a)] += v;
        other_sum[static_cast<std::size_t>(b.b)] += v;
      }
    }
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      ParserAtom& pa = atoms_[i];
      if (pa.h_given) continue;
      const auto h = implicit_hydrogens(pa.atom.atomic_number, pa.atom.aromatic,
                                        aromatic_bonds[i], other_sum[i]);
      if (!h.has_value())
        throw ParseError("valence violation on " +
                             std::string(element_symbol(pa.atom.atomic_number)),
                         pa.offset);
      pa.atom.explicit_h = *h;
    }
  }

  std::string_view text_;
  std::vector<ParseWarning>* warnings_;
  std::size_t pos_ = 0;
  int prev_ = -1;
  std::optional<PendingBond> pending_;
  std::vector<int> branch_stack_;
  std::vector<std::size_t> branch_offsets_;
  std::map<int, RingBond> ring_bonds_;
  std::vector<ParserAtom> atoms_;
  std::vector<Bond> bonds_;
};

// --- writer -------------------------------------------------------------------

// Hydrogen count a bare (bracket-free) atom would resolve to, or -1 when the
// atom cannot be written bare.
int bare_inferred_h(const Molecule& mol, int idx) {
  const Atom& a = mol.atom(idx);
  if (a.formal_charge != 0) return -1;
  switch (a.atomic_number) {
    case 5: case 6: case 7: case 8: case 15: case 16:
      break;
    case 9: case 17: case 35: case 53:
      if (a.aromatic) return -1;
      break;
    default:
      return -1;
  }
  int aromatic_bonds = 0, other_sum = 0;
  for (const AdjEntry& e : mol.neighbors(idx)) {
    const BondOrder order = mol.bonds()[static_cast<std::size_t>(e.bond)].order;
    if (order == BondOrder::Aromatic)
      ++aromatic_bonds;
    else
      other_sum += static_cast<int>(bond_order_value(order));
  }
  const auto h = implicit_hydrogens(a.atomic_number, a.aromatic, aromatic_bonds, other_sum);
  return h.value_or(-1);
}

std::string atom_token(const Molecule& mol, int idx) {
  const Atom& a = mol.atom(idx);
  std::string sym(element_symbol(a.atomic_number));
  if (a.aromatic && is_aromatic_symbol(a.atomic_number))
    for (char& ch : sym) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  const int bare_h = bare_inferred_h(mol, idx);
  if (bare_h == a.explicit_h && bare_h >= 0) return sym;
  std::string out = "[" + sym;
  if (a.explicit_h == 1)
    out += "H";
  else if (a.explicit_h > 1)
    out += "H" + std::to_string(a.explicit_h);
  if (a.formal_charge != 0) {
    out += a.formal_charge > 0 ? '+' : '-';
    const int mag = std::abs(a.formal_charge);
    if (mag > 1) out += std::to_string(mag);
  }
  out += "]";
  return out;
}

std::string bond_token(const Molecule& mol, int bond_idx) {
  const Bond& b = mol.bonds()[static_cast<std::size_t>(bond_idx)];
  const bool both_aromatic = mol.atom(b.a).aromatic && mol.atom(b.b).aromatic;
  switch (b.order) {
    case BondOrder::Single: return both_aromatic ? "-" : "";
    case BondOrder::Double: return "=";
    case BondOrder::Triple: return "#";
    case BondOrder::Aromatic: return "";  // default between aromatic atoms
  }
  return "";
}

struct RingDigitPool {
  std::vector<bool> used = std::vector<bool>(100, false);
  int acquire() {
    for (int d = 1; d < 100; ++d)
      if (!used[static_cast<std::size_t>(d)]) {
        used[static_cast<std::size_t>(d)] = true;
        return d;
      }
    throw Error("too many simultaneously open ring bonds");
  }
  void release(int d) { used[static_cast<std::size_t>(d)] = false; }
  static std::string token(int d) {
    return d < 10 ? std::to_string(d) : "%" + std::to_string(d);
  }
};

}  // namespace

Molecule parse_smiles(std::string_view text, std::vector<ParseWarning>* warnings) {
  Parser parser(text, warnings);
  return parser.run();
}

std::string write_smiles(const Molecule& mol) {
  const int n = mol.atom_count();
  if (n == 0) return "";
  const std::vector<int> ranks = canonical_ranks(mol);

  std::vector<std::pair<int, int>> fragments_by_rank;  // (root rank, root atom)
  for (const auto& frag : mol.fragments()) {
    int root = frag[0];
    for (int a : frag)
      if (ranks[static_cast<std::size_t>(a)] < ranks[static_cast<std::size_t>(root)]) root = a;
    fragments_by_rank.emplace_back(ranks[static_cast<std::size_t>(root)], root);
  }
  std::sort(fragments_by_rank.begin(), fragments_by_rank.end());

  // Spanning-tree structure shared by all fragments: preorder DFS from each
  // root with neighbors taken in canonical-rank order.
  std::vector<int> parent_bond(static_cast<std::size_t>(n), -1);
  std::vector<int> emit_pos(static_cast<std::size_t>(n), -1);
  {
    int clock = 0;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (const auto& [root_rank, root] : fragments_by_rank) {
      (void)root_rank;
      std::vector<int> stack{root};
      seen[static_cast<std::size_t>(root)] = true;
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        emit_pos[static_cast<std::size_t>(v)] = clock++;
        std::vector<std::pair<int, std::pair<int, int>>> nbrs;  // rank -> (atom, bond)
        for (const AdjEntry& e : mol.neighbors(v))
          nbrs.push_back({ranks[static_cast<std::size_t>(e.neighbor)], {e.neighbor, e.bond}});
        std::sort(nbrs.begin(), nbrs.end());
        for (auto it = nbrs.rbegin(); it != nbrs.rend(); ++it) {
          const auto [nbr, bond] = it->second;
          if (!seen[static_cast<std::size_t>(nbr)]) {
            seen[static_cast<std::size_t>(nbr)] = true;
            parent_bond[static_cast<std::size_t>(nbr)] = bond;
            stack.push_back(nbr);
          }
        }
      }
    }
  }

  auto is_tree_edge = [&](int bond) {
    const Bond& b = mol.bonds()[static_cast<std::size_t>(bond)];
    return parent_bond[static_cast<std::size_t>(b.a)] == bond ||
           parent_bond[static_cast<std::size_t>(b.b)] == bond;
  };

  std::map<int, int> closure_digit;  // open ring bond -> digit
  RingDigitPool digits;
  std::string out;

  // Digits for non-tree edges: opened at the earlier-emitted endpoint, closed
  // at the later one; closures first (ordered by digit), openers by partner.
  auto handle_ring_digits = [&](int atom) {
    std::vector<std::tuple<int, int, bool>> edges;  // (sort key, bond, closing)
    for (const AdjEntry& e : mol.neighbors(atom)) {
      if (is_tree_edge(e.bond)) continue;
      if (auto it = closure_digit.find(e.bond); it != closure_digit.end()) {
        edges.emplace_back(it->second, e.bond, true);
      } else if (emit_pos[static_cast<std::size_t>(e.neighbor)] >
                 emit_pos[static_cast<std::size_t>(atom)]) {
        edges.emplace_back(1 << 20 | emit_pos[static_cast<std::size_t>(e.neighbor)], e.bond,
                           false);
      }
    }
    std::sort(edges.begin(), edges.end());
    for (const auto& [key, bond, closing] : edges) {
      (void)key;
      if (closing) {
        out += RingDigitPool::token(closure_digit[bond]);
        digits.release(closure_digit[bond]);
        closure_digit.erase(bond);
      } else {
        const int d = digits.acquire();
        closure_digit[bond] = d;
        out += bond_token(mol, bond);
        out += RingDigitPool::token(d);
      }
    }
  };

  struct Frame {
    int atom;
    std::vector<std::pair<int, int>> tree_children;  // (rank, bond), ascending
    std::size_t next = 0;
    bool needs_paren = false;
  };
  auto make_frame = [&](int atom) {
    Frame f;
    f.atom = atom;
    for (const AdjEntry& e : mol.neighbors(atom)) {
      if (parent_bond[static_cast<std::size_t>(e.neighbor)] == e.bond)
        f.tree_children.emplace_back(ranks[static_cast<std::size_t>(e.neighbor)], e.bond);
    }
    std::sort(f.tree_children.begin(), f.tree_children.end());
    return f;
  };

  bool first_fragment = true;
  for (const auto& [root_rank, root] : fragments_by_rank) {
    (void)root_rank;
    if (!first_fragment) out += '.';
    first_fragment = false;

    out += atom_token(mol, root);
    handle_ring_digits(root);
    std::vector<Frame> stack;
    stack.push_back(make_frame(root));
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < f.tree_children.size()) {
        const int bond = f.tree_children[f.next].second;
        ++f.next;
        const bool more = f.next < f.tree_children.size();
        const Bond& b = mol.bonds()[static_cast<std::size_t>(bond)];
        const int child = b.a == f.atom ? b.b : b.a;
        if (more) out += '(';
        out += bond_token(mol, bond);
        out += atom_token(mol, child);
        handle_ring_digits(child);
        Frame cf = make_frame(child);
        cf.needs_paren = more;
        stack.push_back(std::move(cf));
      } else {
        const bool close = f.needs_paren;
        stack.pop_back();
        if (close) out += ')';
      }
    }
  }
  return out;
}

}  // namespace tscout
