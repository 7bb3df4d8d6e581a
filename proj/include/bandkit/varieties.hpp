#ifndef BANDKIT_VARIETIES_HPP_
#define BANDKIT_VARIETIES_HPP_

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "canonical.hpp"
#include "word.hpp"

namespace bandkit {

////////////////////////////////////////////////////////////////////////
// The invariant word functions h_m and i_m and their mirror duals
////////////////////////////////////////////////////////////////////////

//! The word of first occurrences, left to right (equals i_2).
inline Word initial_part(const Word& w) {
  std::vector<letter_type> seen;
  for (auto a : w) {
    if (std::find(seen.begin(), seen.end(), a) == seen.end()) {
      seen.push_back(a);
    }
  }
  return Word(std::move(seen));
}

//! The word of last occurrences, left to right (equals the dual of i_2).
inline Word final_part(const Word& w) {
  return initial_part(w.reversed()).reversed();
}

namespace detail {

enum class TKind : std::uint8_t { h, i };

inline Word t_word(TKind t, std::uint32_t m, const Word& w) {
  if (m < 2) {
    throw error("t_word: the index m must be at least 2");
  }
  if (w.empty()) {
    return Word();
  }
  if (m == 2) {
    return t == TKind::h ? Word({w.front()}) : initial_part(w);
  }
  Word out = t_word(t, m, s_prefix(w));
  out.push_back(sigma(w));
  return out + t_word(t, m - 1, w.reversed()).reversed();
}

}  // namespace detail

//! h_m(w): decides identities of the variety A_m (h_2 is the head).
inline Word h_m(const Word& w, std::uint32_t m) {
  return detail::t_word(detail::TKind::h, m, w);
}

//! i_m(w): decides identities of the variety B_m (i_2 is the initial part).
inline Word i_m(const Word& w, std::uint32_t m) {
  return detail::t_word(detail::TKind::i, m, w);
}

inline Word dual_h_m(const Word& w, std::uint32_t m) {
  return h_m(w.reversed(), m).reversed();
}

inline Word dual_i_m(const Word& w, std::uint32_t m) {
  return i_m(w.reversed(), m).reversed();
}

////////////////////////////////////////////////////////////////////////
// The lattice of band varieties
////////////////////////////////////////////////////////////////////////

enum class AtomKind : std::uint8_t { SL, A, B, DualA, DualB };

//! A join-irreducible band variety: SL or a member of the two chains
//! A_2 < B_2 < A_3 < ... and their mirror duals. LZ is A(2), RZ is DualA(2).
struct VarietyAtom {
  AtomKind kind;
  std::uint32_t m;  // >= 2 for the chain kinds, 0 for SL

  auto operator<=>(const VarietyAtom&) const = default;
};

inline bool is_left_chain(const VarietyAtom& a) {
  return a.kind == AtomKind::A || a.kind == AtomKind::B;
}

inline bool is_right_chain(const VarietyAtom& a) {
  return a.kind == AtomKind::DualA || a.kind == AtomKind::DualB;
}

//! Height within a chain: A_m sits at 2m-3, B_m at 2m-2, so the left chain
//! reads LZ=A_2 (1), B_2 (2), A_3 (3), B_3 (4), ...
inline std::uint32_t atom_rank(const VarietyAtom& a) {
  switch (a.kind) {
    case AtomKind::A:
    case AtomKind::DualA:
      return 2 * a.m - 3;
    case AtomKind::B:
    case AtomKind::DualB:
      return 2 * a.m - 2;
    default:
      return 0;  // SL
  }
}

//! The Fig.-1 order on join-irreducibles. Within a chain the rank decides;
//! across the two chains an atom contains exactly the opposite-chain atoms
//! of rank at most rank-2 (so A_3 contains RZ but not RRB, and B_3 contains
//! RRB but not the dual of A_3). SL lies below everything of rank >= 2 and
//! is incomparable with LZ and RZ.
inline bool atom_leq(const VarietyAtom& a, const VarietyAtom& b) {
  if (a == b) {
    return true;
  }
  if (b.kind == AtomKind::SL) {
    return false;
  }
  if (a.kind == AtomKind::SL) {
    return atom_rank(b) >= 2;
  }
  if (is_left_chain(a) == is_left_chain(b)) {
    return atom_rank(a) <= atom_rank(b);
  }
  return atom_rank(a) + 2 <= atom_rank(b);
}

inline VarietyAtom dual(const VarietyAtom& a) {
  switch (a.kind) {
    case AtomKind::A:
      return {AtomKind::DualA, a.m};
    case AtomKind::DualA:
      return {AtomKind::A, a.m};
    case AtomKind::B:
      return {AtomKind::DualB, a.m};
    case AtomKind::DualB:
      return {AtomKind::B, a.m};
    default:
      return a;
  }
}

inline std::string atom_tag(const VarietyAtom& a) {
  switch (a.kind) {
    case AtomKind::SL:
      return "SL";
    case AtomKind::A:
      return a.m == 2 ? "LZ" : "A" + std::to_string(a.m);
    case AtomKind::DualA:
      return a.m == 2 ? "RZ" : "A" + std::to_string(a.m) + "~";
    case AtomKind::B:
      return "B" + std::to_string(a.m);
    default:
      return "B" + std::to_string(a.m) + "~";
  }
}

// canonical display/solve order: left chain by rank, then SL, then dual chain
inline std::uint64_t atom_sort_key(const VarietyAtom& a) {
  std::uint64_t side = is_left_chain(a) ? 0 : (a.kind == AtomKind::SL ? 1 : 2);
  return (side << 32) | atom_rank(a);
}

//! A variety of bands: either the top variety of all bands, or the join of
//! a normalized antichain of atoms (the empty join is the trivial variety).
class Variety {
 public:
  Variety() = default;  // trivial

  static Variety trivial() {
    return Variety();
  }

  static Variety all_bands() {
    Variety v;
    v.all_bands_ = true;
    return v;
  }

  static Variety of_atom(VarietyAtom a) {
    Variety v;
    v.atoms_.push_back(a);
    return v;
  }

  static Variety sl() {
    return of_atom({AtomKind::SL, 0});
  }

  static Variety lz() {
    return a(2);
  }

  static Variety rz() {
    return dual_a(2);
  }

  static Variety a(std::uint32_t m) {
    check_index(m);
    return of_atom({AtomKind::A, m});
  }

  static Variety b(std::uint32_t m) {
    check_index(m);
    return of_atom({AtomKind::B, m});
  }

  static Variety dual_a(std::uint32_t m) {
    check_index(m);
    return of_atom({AtomKind::DualA, m});
  }

  static Variety dual_b(std::uint32_t m) {
    check_index(m);
    return of_atom({AtomKind::DualB, m});
  }

  static Variety parse(std::string_view text);

  bool is_all_bands() const noexcept {
    return all_bands_;
  }

  bool is_trivial() const noexcept {
    return !all_bands_ && atoms_.empty();
  }

  //! The normalized antichain; empty for the trivial variety and for BAND.
  const std::vector<VarietyAtom>& atoms() const noexcept {
    return atoms_;
  }

  std::optional<VarietyAtom> single_atom() const {
    if (!all_bands_ && atoms_.size() == 1) {
      return atoms_.front();
    }
    return std::nullopt;
  }

  std::string str() const {
    if (all_bands_) {
      return "BAND";
    }
    if (atoms_.empty()) {
      return "T";
    }
    std::string out;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (i != 0) {
        out += "+";
      }
      out += atom_tag(atoms_[i]);
    }
    return out;
  }

  bool operator==(const Variety&) const = default;

  friend Variety join(const Variety& v, const Variety& w);

 private:
  static void check_index(std::uint32_t m) {
    if (m < 2) {
      throw error("Variety: chain index m must be at least 2");
    }
  }

  void normalize() {
    std::sort(atoms_.begin(), atoms_.end(), [](const auto& x, const auto& y) {
      return atom_sort_key(x) < atom_sort_key(y) || (atom_sort_key(x) == atom_sort_key(y) && x < y);
    });
    atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
    std::vector<VarietyAtom> keep;
    for (const auto& a : atoms_) {
      bool dominated = std::any_of(atoms_.begin(), atoms_.end(), [&](const auto& b) {
        return a != b && atom_leq(a, b);
      });
      if (!dominated) {
        keep.push_back(a);
      }
    }
    atoms_ = std::move(keep);
  }

  bool all_bands_ = false;
  std::vector<VarietyAtom> atoms_;
};

inline Variety join(const Variety& v, const Variety& w) {
  if (v.is_all_bands() || w.is_all_bands()) {
    return Variety::all_bands();
  }
  Variety out;
  out.atoms_ = v.atoms();
  out.atoms_.insert(out.atoms_.end(), w.atoms().begin(), w.atoms().end());
  out.normalize();
  return out;
}

inline Variety dual(const Variety& v) {
  if (v.is_all_bands()) {
    return v;
  }
  Variety out = Variety::trivial();
  for (const auto& a : v.atoms()) {
    out = join(out, Variety::of_atom(dual(a)));
  }
  return out;
}

//! v <= w in the lattice. Join-irreducibles are join-prime here (the lattice
//! is distributive), so an atom lies under a join iff it lies under some
//! joinand.
inline bool leq(const Variety& v, const Variety& w) {
  if (w.is_all_bands()) {
    return true;
  }
  if (v.is_all_bands()) {
    return false;
  }
  return std::all_of(v.atoms().begin(), v.atoms().end(), [&](const auto& a) {
    return std::any_of(w.atoms().begin(), w.atoms().end(),
                       [&](const auto& b) { return atom_leq(a, b); });
  });
}

inline Variety Variety::parse(std::string_view text) {
  Variety out = Variety::trivial();
  std::size_t pos = 0;
  bool any = false;
  while (pos <= text.size()) {
    std::size_t next = text.find('+', pos);
    std::string_view tok = text.substr(pos, next == std::string_view::npos
                                                ? std::string_view::npos
                                                : next - pos);
    if (tok.empty()) {
      throw parse_error("invalid variety \"" + std::string(text) + "\"");
    }
    any = true;
    if (tok == "T") {
      // neutral for joins
    } else if (tok == "BAND") {
      out = Variety::all_bands();
    } else if (tok == "SL") {
      out = join(out, Variety::sl());
    } else if (tok == "LZ") {
      out = join(out, Variety::lz());
    } else if (tok == "RZ") {
      out = join(out, Variety::rz());
    } else if (tok[0] == 'A' || tok[0] == 'B') {
      bool dual_side = tok.back() == '~';
      std::string_view digits = tok.substr(1, tok.size() - 1 - (dual_side ? 1 : 0));
      if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c));
          })) {
        throw parse_error("invalid variety atom \"" + std::string(tok) + "\"");
      }
      unsigned long m = std::stoul(std::string(digits));
      if (m < 2 || m > 1000) {
        throw parse_error("variety index out of range in \"" + std::string(tok) + "\"");
      }
      auto mm = static_cast<std::uint32_t>(m);
      Variety atom = tok[0] == 'A' ? (dual_side ? dual_a(mm) : a(mm))
                                   : (dual_side ? dual_b(mm) : b(mm));
      out = join(out, atom);
    } else {
      throw parse_error("invalid variety atom \"" + std::string(tok) + "\"");
    }
    if (next == std::string_view::npos) {
      break;
    }
    pos = next + 1;
  }
  if (!any) {
    throw parse_error("empty variety");
  }
  return out;
}

////////////////////////////////////////////////////////////////////////
// Canonical invariants and the identity decision procedure
////////////////////////////////////////////////////////////////////////

//! The per-atom invariant word: sorted content for SL, h_m / i_m and duals
//! for the chain atoms.
inline Word atom_invariant_word(const VarietyAtom& a, const Word& w) {
  switch (a.kind) {
    case AtomKind::SL: {
      auto c = content(w);
      return Word(std::vector<letter_type>(c.begin(), c.end()));
    }
    case AtomKind::A:
      return h_m(w, a.m);
    case AtomKind::B:
      return i_m(w, a.m);
    case AtomKind::DualA:
      return dual_h_m(w, a.m);
    default:
      return dual_i_m(w, a.m);
  }
}

//! A canonical text encoding of the tuple of per-atom invariants; two words
//! get the same value iff their identity holds in the variety.
class InvariantValue {
 public:
  explicit InvariantValue(std::string encoded) : encoded_(std::move(encoded)) {}

  const std::string& str() const noexcept {
    return encoded_;
  }

  bool operator==(const InvariantValue&) const = default;

 private:
  std::string encoded_;
};

inline InvariantValue invariant(const Variety& v, const Word& w,
                                std::size_t content_cap = kDefaultContentCap) {
  if (w.empty()) {
    throw empty_word_error("invariant: empty word");
  }
  if (v.is_all_bands()) {
    return InvariantValue("BAND:" + b_canonical(w, content_cap).str_tokens());
  }
  if (v.is_trivial()) {
    return InvariantValue("T");
  }
  std::string out;
  for (const auto& a : v.atoms()) {
    if (!out.empty()) {
      out += "|";
    }
    out += atom_tag(a) + ":" + atom_invariant_word(a, w).str_tokens();
  }
  return InvariantValue(std::move(out));
}

//! Decides u ~ v in the variety v: equality of canonical invariants.
inline bool satisfies(const Variety& v, const Word& u, const Word& w,
                      std::size_t content_cap = kDefaultContentCap) {
  if (u.empty() || w.empty()) {
    throw empty_word_error("satisfies: words must be nonempty");
  }
  if (v.is_all_bands()) {
    return band_satisfies(u, w, content_cap);
  }
  if (v.is_trivial()) {
    return true;
  }
  return std::all_of(v.atoms().begin(), v.atoms().end(), [&](const auto& a) {
    return atom_invariant_word(a, u) == atom_invariant_word(a, w);
  });
}

//! Whether the word operation induced by w depends on the letter x over the
//! variety v: tested as a single identity in which x is renamed to a fresh
//! letter.
inline bool word_depends_on(const Variety& v, const Word& w, letter_type x) {
  auto c = content(w);
  if (c.find(x) == c.end()) {
    return false;
  }
  letter_type fresh = *c.rbegin() + 1;
  std::map<letter_type, Word> images;
  for (auto a : c) {
    images.emplace(a, a == x ? Word({fresh}) : Word({a}));
  }
  return !satisfies(v, w, substitute(w, images));
}

}  // namespace bandkit

#endif  // BANDKIT_VARIETIES_HPP_
