#ifndef BANDKIT_SCHEME_HPP_
#define BANDKIT_SCHEME_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "varieties.hpp"
#include "word.hpp"

namespace bandkit {

class scheme_error : public error {
 public:
  using error::error;
};

//! A permutation of {1..n}, stored as the image sequence (1pi, ..., npi).
class Permutation {
 public:
  explicit Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
    std::vector<std::uint32_t> sorted = images_;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted[i] != i + 1) {
        throw error("Permutation: image sequence is not a bijection on 1..n");
      }
    }
  }

  std::uint32_t degree() const noexcept {
    return static_cast<std::uint32_t>(images_.size());
  }

  //! The image of i (1-based).
  std::uint32_t image(std::uint32_t i) const {
    return images_.at(i - 1);
  }

  const std::vector<std::uint32_t>& images() const noexcept {
    return images_;
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (i != 0) {
        out += " ";
      }
      out += std::to_string(images_[i]);
    }
    return out;
  }

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<std::uint32_t> images_;
};

//! The sequence pi^(ij): the image sequence with the value i replaced by j
//! and the right one of the two occurrences of j deleted. An essential
//! scheme entry (i,j) must have this as its initial part.
inline Word permutation_minor_word(const Permutation& pi, std::uint32_t i,
                                   std::uint32_t j) {
  std::vector<letter_type> out;
  bool emitted_j = false;
  for (auto v : pi.images()) {
    letter_type a = (v == i) ? j : v;
    if (a == j) {
      if (emitted_j) {
        continue;
      }
      emitted_j = true;
    }
    out.push_back(a);
  }
  return Word(std::move(out));
}

//! An n-scheme of words: one nonempty word over X_n per pair (i,j) with
//! 1 <= i < j <= n.
class Scheme {
 public:
  using key_type = std::pair<std::uint32_t, std::uint32_t>;
  using map_type = std::map<key_type, Word>;

  Scheme(std::uint32_t n, map_type entries) : n_(n), entries_(std::move(entries)) {
    if (n_ < 2) {
      throw scheme_error("Scheme: arity must be at least 2");
    }
    for (std::uint32_t i = 1; i <= n_; ++i) {
      for (std::uint32_t j = i + 1; j <= n_; ++j) {
        auto it = entries_.find({i, j});
        if (it == entries_.end()) {
          throw scheme_error("Scheme: missing entry (" + std::to_string(i) + ","
                             + std::to_string(j) + ")");
        }
        if (it->second.empty()) {
          throw scheme_error("Scheme: entry (" + std::to_string(i) + ","
                             + std::to_string(j) + ") is empty");
        }
        for (auto a : it->second) {
          if (a > n_) {
            throw scheme_error("Scheme: entry (" + std::to_string(i) + ","
                               + std::to_string(j) + ") uses letter x"
                               + std::to_string(a) + " beyond the arity");
          }
        }
      }
    }
    if (entries_.size() != static_cast<std::size_t>(n_) * (n_ - 1) / 2) {
      throw scheme_error("Scheme: unexpected extra entries");
    }
  }

  std::uint32_t arity() const noexcept {
    return n_;
  }

  const Word& entry(std::uint32_t i, std::uint32_t j) const {
    return entries_.at({i, j});
  }

  const map_type& entries() const noexcept {
    return entries_;
  }

  //! Replaces one entry (used by tests to build tampered schemes).
  Scheme with_entry(std::uint32_t i, std::uint32_t j, Word w) const {
    map_type copy = entries_;
    copy.at({i, j}) = std::move(w);
    return Scheme(n_, std::move(copy));
  }

 private:
  std::uint32_t n_;
  map_type entries_;
};

//! The family of all identification minors of w, which is an n-scheme for
//! every variety.
inline Scheme scheme_from_word(const Word& w, std::uint32_t n) {
  for (auto a : w) {
    if (a > n) {
      throw scheme_error("scheme_from_word: letter x" + std::to_string(a)
                         + " exceeds the arity " + std::to_string(n));
    }
  }
  Scheme::map_type entries;
  for (std::uint32_t i = 1; i <= n; ++i) {
    for (std::uint32_t j = i + 1; j <= n; ++j) {
      entries.emplace(Scheme::key_type{i, j}, identify(w, i, j));
    }
  }
  return Scheme(n, std::move(entries));
}

//! Entrywise reversal; a scheme for V turns into one for dual(V).
inline Scheme reverse_scheme(const Scheme& s) {
  Scheme::map_type entries;
  for (const auto& [key, w] : s.entries()) {
    entries.emplace(key, w.reversed());
  }
  return Scheme(s.arity(), std::move(entries));
}

//! True iff every entry (i,j) has content exactly X_n minus {x_i}.
inline bool is_essential(const Scheme& s) {
  for (const auto& [key, w] : s.entries()) {
    auto c = content(w);
    if (c.size() != s.arity() - 1 || c.count(key.first) != 0) {
      return false;
    }
  }
  return true;
}

struct SchemeReport {
  bool dependency = true;
  bool c1 = true;
  bool c2 = true;
  std::vector<std::string> violations;

  bool all_ok() const noexcept {
    return dependency && c1 && c2;
  }
};

//! Checks the dependency condition (D) and the consistency conditions (C1)
//! and (C2) over the variety v, listing every failing instance.
inline SchemeReport check_scheme(const Scheme& s, const Variety& v) {
  SchemeReport report;
  const std::uint32_t n = s.arity();
  // (D): entry (i,j) must not depend on x_i
  for (const auto& [key, w] : s.entries()) {
    if (word_depends_on(v, w, key.first)) {
      report.dependency = false;
      report.violations.push_back("D(" + std::to_string(key.first) + ","
                                  + std::to_string(key.second) + "): entry depends on x"
                                  + std::to_string(key.first) + " over " + v.str());
    }
  }
  auto id = [](std::uint32_t i, std::uint32_t j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  };
  // (C1): disjoint pairs (i,j), (p,q)
  for (auto it = s.entries().begin(); it != s.entries().end(); ++it) {
    for (auto jt = std::next(it); jt != s.entries().end(); ++jt) {
      auto [i, j] = it->first;
      auto [p, q] = jt->first;
      if (i == p || i == q || j == p || j == q) {
        continue;
      }
      Word lhs = identify(it->second, p, q);
      Word rhs = identify(jt->second, i, j);
      if (!satisfies(v, lhs, rhs)) {
        report.c1 = false;
        report.violations.push_back("C1 " + id(i, j) + "^" + id(p, q) + ": "
                                    + lhs.str_tokens() + " !~ " + rhs.str_tokens()
                                    + " over " + v.str());
      }
    }
  }
  // (C2): triples i < j < k
  for (std::uint32_t i = 1; i <= n; ++i) {
    for (std::uint32_t j = i + 1; j <= n; ++j) {
      for (std::uint32_t k = j + 1; k <= n; ++k) {
        Word a = identify(s.entry(i, j), j, k);
        Word b = identify(s.entry(j, k), i, k);
        Word c = identify(s.entry(i, k), j, k);
        if (!satisfies(v, a, b)) {
          report.c2 = false;
          report.violations.push_back("C2 " + id(i, j) + "^(" + std::to_string(j) + ","
                                      + std::to_string(k) + "): " + a.str_tokens()
                                      + " !~ " + b.str_tokens() + " over " + v.str());
        }
        if (!satisfies(v, b, c)) {
          report.c2 = false;
          report.violations.push_back("C2 " + id(j, k) + "^(" + std::to_string(i) + ","
                                      + std::to_string(k) + "): " + b.str_tokens()
                                      + " !~ " + c.str_tokens() + " over " + v.str());
        }
      }
    }
  }
  return report;
}

namespace detail {

// Best-effort permutation from the i_2-values of the entries: for every
// value pair {a,b} the entry merging the two smallest indices outside
// {a,b} shows the true relative order of a and b (its merged pair is
// disjoint from {a,b}). Two fixed entries are not always enough -- e.g.
// (3,1,4,2,5) and (3,1,2,4,5) share the same (1,2)- and (3,4)-minors --
// so the order is read off pairwise. Requires n >= 4 for disjoint entries;
// inconsistent data still yields some permutation, callers must verify.
inline Permutation permutation_by_tournament(const Scheme& s) {
  const std::uint32_t n = s.arity();
  std::vector<std::uint32_t> position(n + 1, 0);
  for (std::uint32_t a = 1; a <= n; ++a) {
    for (std::uint32_t b = 1; b <= n; ++b) {
      if (a == b) {
        continue;
      }
      std::uint32_t i = 0, j = 0;
      for (std::uint32_t t = 1; t <= n && j == 0; ++t) {
        if (t == a || t == b) {
          continue;
        }
        (i == 0 ? i : j) = t;
      }
      bool a_before_b = a < b;  // fallback when the entry is degenerate
      if (j != 0) {
        Word seq = initial_part(s.entry(i, j));
        auto pa = std::find(seq.begin(), seq.end(), a);
        auto pb = std::find(seq.begin(), seq.end(), b);
        if (pa != seq.end() && pb != seq.end()) {
          a_before_b = pa < pb;
        }
      }
      if (!a_before_b) {
        ++position[a];
      }
    }
  }
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
    return position[x] < position[y] || (position[x] == position[y] && x < y);
  });
  return Permutation(std::move(order));
}

inline bool permutation_fits(const Scheme& s, const Permutation& pi) {
  for (const auto& [key, w] : s.entries()) {
    if (initial_part(w) != permutation_minor_word(pi, key.first, key.second)) {
      return false;
    }
  }
  return true;
}

}  // namespace detail

//! The unique permutation pi with i_2(entry(i,j)) = pi^(ij) for all i < j,
//! when one exists. For n >= 4 the candidate is reconstructed pairwise from
//! disjoint entries, for n < 4 all permutations are tried; either way every
//! entry is verified. With strict set, arities below 5 are rejected
//! (uniqueness of the permutation needs n >= 5).
inline std::optional<Permutation> associated_permutation(const Scheme& s,
                                                         bool strict = false) {
  const std::uint32_t n = s.arity();
  if (strict && n < 5) {
    throw scheme_error("associated_permutation: arity " + std::to_string(n)
                       + " is below 5, refusing in strict mode");
  }
  if (!is_essential(s)) {
    throw scheme_error("associated_permutation: scheme is not essential");
  }
  if (n < 4) {
    std::vector<std::uint32_t> images(n);
    std::iota(images.begin(), images.end(), 1);
    do {
      Permutation pi(images);
      if (detail::permutation_fits(s, pi)) {
        return pi;
      }
    } while (std::next_permutation(images.begin(), images.end()));
    return std::nullopt;
  }
  Permutation pi = detail::permutation_by_tournament(s);
  if (!detail::permutation_fits(s, pi)) {
    return std::nullopt;
  }
  return pi;
}

//! The derived (n-1)-scheme: s-prefixes of the entries avoiding the pivot
//! letter, reindexed onto a contiguous alphabet. `alphabet[t-1]` records the
//! original letter behind the new letter t.
struct DerivedScheme {
  Scheme scheme;
  std::vector<letter_type> alphabet;

  Word to_original(const Word& w) const {
    std::vector<letter_type> out;
    out.reserve(w.size());
    for (auto a : w) {
      out.push_back(alphabet.at(a - 1));
    }
    return Word(std::move(out));
  }
};

inline DerivedScheme derived_scheme(const Scheme& s, letter_type pivot) {
  const std::uint32_t n = s.arity();
  if (pivot == 0 || pivot > n) {
    throw scheme_error("derived_scheme: pivot letter out of range");
  }
  std::vector<letter_type> alphabet;
  std::vector<std::uint32_t> renumber(n + 1, 0);
  for (std::uint32_t t = 1; t <= n; ++t) {
    if (t != pivot) {
      alphabet.push_back(t);
      renumber[t] = static_cast<std::uint32_t>(alphabet.size());
    }
  }
  Scheme::map_type entries;
  for (const auto& [key, w] : s.entries()) {
    if (key.first == pivot || key.second == pivot) {
      continue;
    }
    if (sigma(w) != pivot) {
      throw scheme_error("derived_scheme: entry (" + std::to_string(key.first) + ","
                         + std::to_string(key.second) + ") has sigma x"
                         + std::to_string(sigma(w)) + ", expected the pivot x"
                         + std::to_string(pivot));
    }
    Word p = s_prefix(w);
    std::vector<letter_type> mapped;
    mapped.reserve(p.size());
    for (auto a : p) {
      mapped.push_back(renumber[a]);
    }
    entries.emplace(Scheme::key_type{renumber[key.first], renumber[key.second]},
                    Word(std::move(mapped)));
  }
  return DerivedScheme{Scheme(n - 1, std::move(entries)), std::move(alphabet)};
}

//! Whether the scheme is V-equivalent to the family of identification
//! minors of w.
inline bool comes_from(const Scheme& s, const Word& w, const Variety& v) {
  for (const auto& [key, entry] : s.entries()) {
    if (!satisfies(v, entry, identify(w, key.first, key.second))) {
      return false;
    }
  }
  return true;
}

struct SolveResult {
  std::optional<Word> word;
  std::string witness;  // the first violated identity when there is no word
  std::optional<std::pair<Word, Word>> violated_identity;

  bool ok() const noexcept {
    return word.has_value();
  }
};

namespace detail {

// Construction half of the solver. Never fails: questionable input yields
// some candidate and the final verification decides. The recursion follows
// the chain downwards, A_m and B_m descending to the dual of the same-letter
// predecessor, and bottoms out at the four rank <= 2 atoms in closed form.
inline Word construct_candidate(const Scheme& s, const Variety& v);

inline Permutation best_effort_permutation(const Scheme& s) {
  const std::uint32_t n = s.arity();
  if (n < 4 && is_essential(s)) {
    std::vector<std::uint32_t> images(n);
    std::iota(images.begin(), images.end(), 1);
    do {
      Permutation pi(images);
      if (permutation_fits(s, pi)) {
        return pi;
      }
    } while (std::next_permutation(images.begin(), images.end()));
  }
  return permutation_by_tournament(s);
}

inline Word construct_single(const Scheme& s, const VarietyAtom& atom) {
  const std::uint32_t n = s.arity();
  if (is_right_chain(atom)) {
    return construct_candidate(reverse_scheme(s), Variety::of_atom(dual(atom))).reversed();
  }
  if (atom.kind == AtomKind::SL) {
    std::vector<letter_type> all(n);
    std::iota(all.begin(), all.end(), 1);
    return Word(std::move(all));
  }
  Permutation pi = best_effort_permutation(s);
  Word perm_word(std::vector<letter_type>(pi.images().begin(), pi.images().end()));
  if (atom.m == 2) {
    return perm_word;  // any word with this initial part would do
  }
  // atom is A_m or B_m with m >= 3
  const std::uint32_t k = pi.image(n - 1);
  const std::uint32_t l = pi.image(n);
  Variety predecessor = Variety::of_atom(dual(VarietyAtom{atom.kind, atom.m - 1}));
  Word u_hat = construct_candidate(s, predecessor);
  Word u_tilde;
  try {
    DerivedScheme derived = derived_scheme(s, l);
    u_tilde = derived.to_original(construct_candidate(derived.scheme, predecessor));
  } catch (const scheme_error&) {
    // no derived scheme (wrong pivot or arity too small); emit a placeholder
    // and let the final verification refuse the candidate
    std::vector<letter_type> rest;
    for (std::uint32_t t = 1; t <= n; ++t) {
      if (t != l) {
        rest.push_back(t);
      }
    }
    u_tilde = Word(std::move(rest));
  }
  const std::uint32_t kp = std::min(k, l);
  const std::uint32_t lp = std::max(k, l);
  Word out = s_prefix(s.entry(kp, lp));
  out.push_back(k);
  out += u_tilde;
  out.push_back(l);
  out += u_hat;
  return out;
}

inline Word construct_candidate(const Scheme& s, const Variety& v) {
  if (v.is_trivial()) {
    return Word({1});
  }
  if (auto atom = v.single_atom()) {
    return construct_single(s, *atom);
  }
  // join: concatenate the joinand solutions, left chain first, then SL,
  // then the dual chain (the atoms() order is already canonical)
  Word out;
  for (const auto& atom : v.atoms()) {
    out += construct_single(s, atom);
  }
  return out;
}

}  // namespace detail

//! Construct-then-verify solver for "does this scheme come from a word over
//! v". The construction cannot be trusted on its own (and for tampered
//! schemes it is deliberately lenient), so every candidate is checked with
//! comes_from; a failure reports the first violated identity. The top
//! variety of all bands is outside the method's scope.
inline SolveResult solve_scheme(const Scheme& s, const Variety& v) {
  if (v.is_all_bands()) {
    throw error("solve_scheme: the variety of all bands is not supported");
  }
  Word candidate = detail::construct_candidate(s, v);
  for (const auto& [key, entry] : s.entries()) {
    Word minor = identify(candidate, key.first, key.second);
    if (!satisfies(v, entry, minor)) {
      std::string witness = "entry (" + std::to_string(key.first) + ","
                            + std::to_string(key.second) + "): " + entry.str_tokens()
                            + " !~ " + minor.str_tokens() + " over " + v.str();
      return SolveResult{std::nullopt, std::move(witness),
                         std::pair<Word, Word>{entry, std::move(minor)}};
    }
  }
  return SolveResult{std::move(candidate), "", std::nullopt};
}

}  // namespace bandkit

#endif  // BANDKIT_SCHEME_HPP_
