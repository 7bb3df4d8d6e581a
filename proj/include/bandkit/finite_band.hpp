#ifndef BANDKIT_FINITE_BAND_HPP_
#define BANDKIT_FINITE_BAND_HPP_

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "varieties.hpp"
#include "word.hpp"

namespace bandkit {

class band_error : public error {
 public:
  using error::error;
};

//! Caps for the brute-force paths. All overridable; exceeding one raises
//! budget_error rather than silently grinding.
struct Budget {
  std::uint64_t table_cells = 10'000'000;     // cells of one operation table
  std::uint64_t closure_elements = 1'000'000; // elements of a closure
  std::uint64_t assignments = 1'000'000;      // assignments per identity check
};

namespace detail {

// base^exp when it is at most cap, otherwise a value strictly above cap
inline std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exp,
                                 std::uint64_t cap) {
  if (base == 0) {
    return exp == 0 ? 1 : 0;
  }
  std::uint64_t acc = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    if (acc > cap / base) {
      return cap == std::numeric_limits<std::uint64_t>::max() ? cap : cap + 1;
    }
    acc *= base;
  }
  return acc;
}

}  // namespace detail

//! A finite band: a Cayley table checked to be idempotent and associative.
class FiniteBand {
 public:
  static FiniteBand make(const std::vector<std::vector<std::uint32_t>>& table,
                         std::vector<std::string> names = {},
                         std::string provenance = {}) {
    const std::uint32_t n = static_cast<std::uint32_t>(table.size());
    if (n == 0) {
      throw band_error("FiniteBand: empty table");
    }
    std::vector<std::uint32_t> flat;
    flat.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : table) {
      if (row.size() != n) {
        throw band_error("FiniteBand: table is not square");
      }
      for (auto x : row) {
        if (x >= n) {
          throw band_error("FiniteBand: table entry " + std::to_string(x)
                           + " out of range");
        }
        flat.push_back(x);
      }
    }
    if (names.empty()) {
      for (std::uint32_t i = 0; i < n; ++i) {
        names.push_back(std::to_string(i));
      }
    } else if (names.size() != n) {
      throw band_error("FiniteBand: wrong number of element names");
    }
    FiniteBand out(n, std::move(flat), std::move(names), std::move(provenance));
    out.validate();
    return out;
  }

  std::uint32_t size() const noexcept {
    return size_;
  }

  std::uint32_t product(std::uint32_t a, std::uint32_t b) const {
    return table_[static_cast<std::size_t>(a) * size_ + b];
  }

  const std::string& name(std::uint32_t i) const {
    return names_.at(i);
  }

  const std::vector<std::string>& names() const noexcept {
    return names_;
  }

  const std::string& provenance() const noexcept {
    return provenance_;
  }

 private:
  FiniteBand(std::uint32_t size, std::vector<std::uint32_t> table,
             std::vector<std::string> names, std::string provenance)
      : size_(size),
        table_(std::move(table)),
        names_(std::move(names)),
        provenance_(std::move(provenance)) {}

  void validate() const {
    for (std::uint32_t a = 0; a < size_; ++a) {
      if (product(a, a) != a) {
        throw band_error("not idempotent: element " + std::to_string(a) + " ("
                         + names_[a] + ")");
      }
    }
    for (std::uint32_t a = 0; a < size_; ++a) {
      for (std::uint32_t b = 0; b < size_; ++b) {
        const std::uint32_t ab = product(a, b);
        for (std::uint32_t c = 0; c < size_; ++c) {
          if (product(ab, c) != product(a, product(b, c))) {
            throw band_error("not associative at (" + std::to_string(a) + ","
                             + std::to_string(b) + "," + std::to_string(c) + ")");
          }
        }
      }
    }
  }

  std::uint32_t size_;
  std::vector<std::uint32_t> table_;  // row-major
  std::vector<std::string> names_;
  std::string provenance_;
};

////////////////////////////////////////////////////////////////////////
// Builders
////////////////////////////////////////////////////////////////////////

inline FiniteBand left_zero(std::uint32_t k) {
  std::vector<std::vector<std::uint32_t>> table(k, std::vector<std::uint32_t>(k));
  for (std::uint32_t a = 0; a < k; ++a) {
    std::fill(table[a].begin(), table[a].end(), a);
  }
  return FiniteBand::make(table, {}, "left_zero(" + std::to_string(k) + ")");
}

inline FiniteBand right_zero(std::uint32_t k) {
  std::vector<std::vector<std::uint32_t>> table(k, std::vector<std::uint32_t>(k));
  for (std::uint32_t a = 0; a < k; ++a) {
    for (std::uint32_t b = 0; b < k; ++b) {
      table[a][b] = b;
    }
  }
  return FiniteBand::make(table, {}, "right_zero(" + std::to_string(k) + ")");
}

//! Adds a new identity element at index 0.
inline FiniteBand adjoin_identity(const FiniteBand& s) {
  const std::uint32_t n = s.size();
  std::vector<std::vector<std::uint32_t>> table(n + 1,
                                                std::vector<std::uint32_t>(n + 1));
  for (std::uint32_t a = 0; a <= n; ++a) {
    for (std::uint32_t b = 0; b <= n; ++b) {
      table[a][b] = (a == 0) ? b : (b == 0 ? a : s.product(a - 1, b - 1) + 1);
    }
  }
  std::vector<std::string> names{"e"};
  for (std::uint32_t i = 0; i < n; ++i) {
    names.push_back(s.name(i));
  }
  return FiniteBand::make(table, std::move(names),
                          "adjoin_identity(" + s.provenance() + ")");
}

inline FiniteBand direct_product(const FiniteBand& s, const FiniteBand& t) {
  const std::uint32_t n = s.size(), m = t.size();
  std::vector<std::vector<std::uint32_t>> table(
      static_cast<std::size_t>(n) * m,
      std::vector<std::uint32_t>(static_cast<std::size_t>(n) * m));
  std::vector<std::string> names;
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t x = 0; x < m; ++x) {
      names.push_back("(" + s.name(a) + "," + t.name(x) + ")");
      for (std::uint32_t b = 0; b < n; ++b) {
        for (std::uint32_t y = 0; y < m; ++y) {
          table[a * m + x][b * m + y] = s.product(a, b) * m + t.product(x, y);
        }
      }
    }
  }
  return FiniteBand::make(table, std::move(names),
                          "direct_product(" + s.provenance() + "," + t.provenance()
                              + ")");
}

//! Reverses the multiplication.
inline FiniteBand dual_band(const FiniteBand& s) {
  const std::uint32_t n = s.size();
  std::vector<std::vector<std::uint32_t>> table(n, std::vector<std::uint32_t>(n));
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      table[a][b] = s.product(b, a);
    }
  }
  return FiniteBand::make(table, s.names(), "dual(" + s.provenance() + ")");
}

////////////////////////////////////////////////////////////////////////
// Word operations
////////////////////////////////////////////////////////////////////////

//! Left-to-right fold of the Cayley table.
inline std::uint32_t eval_word(const FiniteBand& s, const Word& w,
                               const std::map<letter_type, std::uint32_t>& assignment) {
  if (w.empty()) {
    throw empty_word_error("eval_word: empty word");
  }
  auto lookup = [&](letter_type a) {
    auto it = assignment.find(a);
    if (it == assignment.end()) {
      throw error("eval_word: no assignment for letter x" + std::to_string(a));
    }
    if (it->second >= s.size()) {
      throw error("eval_word: element out of range for letter x" + std::to_string(a));
    }
    return it->second;
  };
  std::uint32_t acc = lookup(w[0]);
  for (std::size_t i = 1; i < w.size(); ++i) {
    acc = s.product(acc, lookup(w[i]));
  }
  return acc;
}

//! An n-ary operation on a band stored as a flat value table, row-major
//! with the first coordinate slowest. Word-induced operations carry their
//! witness word.
class WordOperation {
 public:
  WordOperation(std::uint32_t band_size, std::uint32_t arity,
                std::vector<std::uint32_t> values,
                std::optional<Word> witness = std::nullopt)
      : band_size_(band_size),
        arity_(arity),
        values_(std::move(values)),
        witness_(std::move(witness)) {
    if (values_.size() != detail::checked_pow(band_size_, arity_, values_.size()))
      throw error("WordOperation: value table has wrong size");
  }

  std::uint32_t band_size() const noexcept {
    return band_size_;
  }

  std::uint32_t arity() const noexcept {
    return arity_;
  }

  const std::vector<std::uint32_t>& values() const noexcept {
    return values_;
  }

  const std::optional<Word>& witness() const noexcept {
    return witness_;
  }

  std::uint32_t value(const std::vector<std::uint32_t>& args) const {
    std::size_t idx = 0;
    for (auto a : args) {
      idx = idx * band_size_ + a;
    }
    return values_.at(idx);
  }

  bool operator==(const WordOperation& other) const {
    return band_size_ == other.band_size_ && arity_ == other.arity_
           && values_ == other.values_;
  }

 private:
  std::uint32_t band_size_;
  std::uint32_t arity_;
  std::vector<std::uint32_t> values_;
  std::optional<Word> witness_;
};

namespace detail {

// odometer over tuples in row-major order; returns false after the last one
inline bool next_tuple(std::vector<std::uint32_t>& digits, std::uint32_t base) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < base) {
      return true;
    }
    digits[i] = 0;
  }
  return false;
}

inline std::uint64_t table_cells_or_throw(const FiniteBand& s, std::uint32_t arity,
                                          const Budget& budget, const char* who) {
  std::uint64_t cells = checked_pow(s.size(), arity, budget.table_cells);
  if (cells > budget.table_cells) {
    throw budget_error(std::string(who) + ": table of " + std::to_string(s.size())
                       + "^" + std::to_string(arity) + " cells exceeds the budget of "
                       + std::to_string(budget.table_cells));
  }
  return cells;
}

}  // namespace detail

//! The operation induced by w in arity n, built by exhaustive evaluation.
inline WordOperation word_operation(const FiniteBand& s, const Word& w,
                                    std::uint32_t arity, Budget budget = {}) {
  if (w.empty()) {
    throw empty_word_error("word_operation: empty word");
  }
  for (auto a : w) {
    if (a > arity) {
      throw error("word_operation: letter x" + std::to_string(a)
                  + " exceeds the arity " + std::to_string(arity));
    }
  }
  const std::uint64_t cells =
      detail::table_cells_or_throw(s, arity, budget, "word_operation");
  std::vector<std::uint32_t> values;
  values.reserve(cells);
  std::vector<std::uint32_t> args(arity, 0);
  do {
    std::uint32_t acc = args[w[0] - 1];
    for (std::size_t i = 1; i < w.size(); ++i) {
      acc = s.product(acc, args[w[i] - 1]);
    }
    values.push_back(acc);
  } while (detail::next_tuple(args, s.size()));
  return WordOperation(s.size(), arity, std::move(values), w);
}

//! The identification minor f_ij: coordinate i reads coordinate j. Stays
//! n-ary. 1-based variable indices; requires i < j.
inline WordOperation minor(const WordOperation& f, std::uint32_t i, std::uint32_t j) {
  if (i == 0 || j == 0 || i >= j || j > f.arity()) {
    throw error("minor: need variable indices 1 <= i < j <= arity");
  }
  const std::uint32_t s = f.band_size();
  std::vector<std::uint32_t> values(f.values().size());
  std::vector<std::uint32_t> strides(f.arity(), 1);
  for (std::size_t c = f.arity() - 1; c-- > 0;) {
    strides[c] = strides[c + 1] * s;
  }
  std::vector<std::uint32_t> args(f.arity(), 0);
  std::size_t idx = 0;
  do {
    std::size_t base = idx - static_cast<std::size_t>(args[i - 1]) * strides[i - 1];
    values[idx] = f.values()[base + static_cast<std::size_t>(args[j - 1]) * strides[i - 1]];
    ++idx;
  } while (detail::next_tuple(args, s));
  std::optional<Word> witness;
  if (f.witness()) {
    witness = identify(*f.witness(), i, j);
  }
  return WordOperation(s, f.arity(), std::move(values), std::move(witness));
}

//! Whether f has a witness pair differing only in slot i (1-based).
inline bool depends_on(const WordOperation& f, std::uint32_t i) {
  if (i == 0 || i > f.arity()) {
    throw error("depends_on: variable index out of range");
  }
  const std::uint32_t s = f.band_size();
  std::size_t stride = 1;
  for (std::uint32_t c = i; c < f.arity(); ++c) {
    stride *= s;
  }
  // enumerate all cells whose i-th digit is 0 and compare along the digit
  std::vector<std::uint32_t> args(f.arity(), 0);
  std::size_t idx = 0;
  do {
    if (args[i - 1] == 0) {
      const std::uint32_t v0 = f.values()[idx];
      for (std::uint32_t t = 1; t < s; ++t) {
        if (f.values()[idx + t * stride] != v0) {
          return true;
        }
      }
    }
    ++idx;
  } while (detail::next_tuple(args, s));
  return false;
}

namespace detail {

struct VectorHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace detail

//! All n-ary operations of s induced by words: the closure of the n
//! projections under pointwise products (each new table is a known table
//! multiplied by a projection, which reaches every left-to-right fold).
//! Witnesses are the concatenations along the way, so they are shortest.
inline std::vector<WordOperation> enumerate_word_operations(const FiniteBand& s,
                                                            std::uint32_t arity,
                                                            Budget budget = {}) {
  if (arity == 0) {
    throw error("enumerate_word_operations: arity must be positive");
  }
  const std::uint64_t cells =
      detail::table_cells_or_throw(s, arity, budget, "enumerate_word_operations");
  // projection tables
  std::vector<std::vector<std::uint32_t>> projections(arity);
  {
    std::vector<std::uint32_t> args(arity, 0);
    do {
      for (std::uint32_t i = 0; i < arity; ++i) {
        projections[i].push_back(args[i]);
      }
    } while (detail::next_tuple(args, s.size()));
  }
  std::vector<WordOperation> out;
  std::unordered_map<std::vector<std::uint32_t>, std::size_t, detail::VectorHash> seen;
  auto add = [&](std::vector<std::uint32_t> values, Word witness) {
    if (seen.emplace(values, out.size()).second) {
      if (out.size() >= budget.closure_elements) {
        throw budget_error("enumerate_word_operations: closure exceeds "
                           + std::to_string(budget.closure_elements) + " elements");
      }
      out.emplace_back(s.size(), arity, std::move(values), std::move(witness));
      return true;
    }
    return false;
  };
  for (std::uint32_t i = 0; i < arity; ++i) {
    add(projections[i], Word({i + 1}));
  }
  for (std::size_t front = 0; front < out.size(); ++front) {
    for (std::uint32_t g = 0; g < arity; ++g) {
      std::vector<std::uint32_t> values(cells);
      const auto& base = out[front].values();
      for (std::size_t t = 0; t < cells; ++t) {
        values[t] = s.product(base[t], projections[g][t]);
      }
      Word witness = *out[front].witness();
      witness.push_back(g + 1);
      add(std::move(values), std::move(witness));
    }
  }
  return out;
}

//! The membership test behind "all minors are term operations": a word
//! inducing f, found by exhausting the word operations of s, or nothing.
inline std::optional<Word> induced_by_word(const FiniteBand& s,
                                           const WordOperation& f,
                                           Budget budget = {}) {
  if (f.band_size() != s.size()) {
    throw error("induced_by_word: operation is over a different band size");
  }
  for (const auto& op : enumerate_word_operations(s, f.arity(), budget)) {
    if (op.values() == f.values()) {
      return op.witness();
    }
  }
  return std::nullopt;
}

//! Brute-force identity check: true iff u and v evaluate equally under
//! every assignment of their letters into s. The independent oracle for
//! the symbolic deciders.
inline bool satisfies_by_evaluation(const FiniteBand& s, const Word& u, const Word& v,
                                    Budget budget = {}) {
  if (u.empty() || v.empty()) {
    throw empty_word_error("satisfies_by_evaluation: words must be nonempty");
  }
  std::vector<letter_type> letters;
  {
    auto cu = content(u);
    auto cv = content(v);
    std::set_union(cu.begin(), cu.end(), cv.begin(), cv.end(),
                   std::back_inserter(letters));
  }
  const std::uint64_t count = detail::checked_pow(
      s.size(), static_cast<std::uint32_t>(letters.size()), budget.assignments);
  if (count > budget.assignments) {
    throw budget_error("satisfies_by_evaluation: " + std::to_string(letters.size())
                       + " letters need more than "
                       + std::to_string(budget.assignments) + " assignments");
  }
  auto element_of = [&](const std::vector<std::uint32_t>& digits, letter_type a) {
    auto pos = std::lower_bound(letters.begin(), letters.end(), a) - letters.begin();
    return digits[static_cast<std::size_t>(pos)];
  };
  auto eval = [&](const Word& w, const std::vector<std::uint32_t>& digits) {
    std::uint32_t acc = element_of(digits, w[0]);
    for (std::size_t i = 1; i < w.size(); ++i) {
      acc = s.product(acc, element_of(digits, w[i]));
    }
    return acc;
  };
  std::vector<std::uint32_t> digits(letters.size(), 0);
  do {
    if (eval(u, digits) != eval(v, digits)) {
      return false;
    }
  } while (detail::next_tuple(digits, s.size()));
  return true;
}

////////////////////////////////////////////////////////////////////////
// Relatively free bands
////////////////////////////////////////////////////////////////////////

namespace detail {

struct FreeBandClosure {
  std::vector<Word> representatives;
  std::unordered_map<std::string, std::uint32_t> index_by_invariant;
};

// Breadth-first closure of the generators x1..xk under products: every
// class of a word over k letters is reached by right-multiplying a known
// representative by a generator, so representatives come out shortest.
inline FreeBandClosure free_band_closure(const Variety& v, std::uint32_t k,
                                         const Budget& budget) {
  if (k == 0) {
    throw error("free_band: need at least one generator");
  }
  FreeBandClosure closure;
  auto add = [&](const Word& w) {
    auto key = invariant(v, w).str();
    if (closure.index_by_invariant
            .emplace(std::move(key),
                     static_cast<std::uint32_t>(closure.representatives.size()))
            .second) {
      if (closure.representatives.size() >= budget.closure_elements) {
        throw budget_error("free_band: closure exceeds "
                           + std::to_string(budget.closure_elements) + " elements");
      }
      closure.representatives.push_back(w);
      return true;
    }
    return false;
  };
  for (letter_type g = 1; g <= k; ++g) {
    add(Word({g}));
  }
  for (std::size_t front = 0; front < closure.representatives.size(); ++front) {
    for (letter_type g = 1; g <= k; ++g) {
      Word w = closure.representatives[front];
      w.push_back(g);
      add(w);
    }
  }
  return closure;
}

}  // namespace detail

//! One representative word per element of the relatively free band of v on
//! k generators, enumerated by closure.
inline std::vector<Word> free_band_representatives(const Variety& v, std::uint32_t k,
                                                   Budget budget = {}) {
  return detail::free_band_closure(v, k, budget).representatives;
}

//! A relatively free band materialized as a Cayley table: elements are
//! invariant classes, the product of classes is the class of the
//! concatenation. The k-generator quotient decides exactly the identities
//! in at most k letters, so it generates its variety as soon as k reaches
//! the number of letters in the variety's defining identities.
class FreeBand {
 public:
  FreeBand(const Variety& v, std::uint32_t k, Budget budget = {})
      : variety_(v), closure_(detail::free_band_closure(v, k, budget)) {
    const auto& reps = closure_.representatives;
    const std::uint64_t n = reps.size();
    if (n * n > budget.table_cells) {
      throw budget_error("free_band: Cayley table of " + std::to_string(n) + "^2"
                         + " cells exceeds the budget of "
                         + std::to_string(budget.table_cells));
    }
    std::vector<std::vector<std::uint32_t>> table(n, std::vector<std::uint32_t>(n));
    std::vector<std::string> names;
    for (std::size_t a = 0; a < n; ++a) {
      names.push_back(reps[a].str());
      for (std::size_t b = 0; b < n; ++b) {
        table[a][b] = closure_.index_by_invariant.at(invariant(v, reps[a] + reps[b]).str());
      }
    }
    band_.emplace(FiniteBand::make(table, std::move(names),
                                   "free_band(" + v.str() + "," + std::to_string(k)
                                       + ")"));
  }

  const FiniteBand& band() const noexcept {
    return *band_;
  }

  const std::vector<Word>& representatives() const noexcept {
    return closure_.representatives;
  }

  const Variety& variety() const noexcept {
    return variety_;
  }

  //! The element holding the class of w, if w is over the generators.
  std::optional<std::uint32_t> index_of(const Word& w) const {
    auto it = closure_.index_by_invariant.find(invariant(variety_, w).str());
    if (it == closure_.index_by_invariant.end()) {
      return std::nullopt;
    }
    return it->second;
  }

 private:
  Variety variety_;
  detail::FreeBandClosure closure_;
  std::optional<FiniteBand> band_;
};

inline FreeBand free_band(const Variety& v, std::uint32_t k, Budget budget = {}) {
  return FreeBand(v, k, budget);
}

}  // namespace bandkit

#endif  // BANDKIT_FINITE_BAND_HPP_
