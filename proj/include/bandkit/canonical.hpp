#ifndef BANDKIT_CANONICAL_HPP_
#define BANDKIT_CANONICAL_HPP_

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "word.hpp"

namespace bandkit {

//! |b(w)| is 2^(|content(w)|+1) - 2, so the content size of a single word is
//! capped; 2^21 letters is about 8 MB and still fine, beyond that the flat
//! representation becomes hostile.
inline constexpr std::size_t kDefaultContentCap = 20;

namespace detail {

class BCanonicalizer {
 public:
  explicit BCanonicalizer(const Word& w) : word_(w.letters()) {}

  std::vector<letter_type> run() {
    return canon(0, word_.size());
  }

 private:
  // b on the factor [first, last) of the top-level word. Every recursive
  // argument (s-prefix, e-suffix) is again a factor, so results memoize on
  // the index pair.
  std::vector<letter_type> canon(std::size_t first, std::size_t last) {
    if (first == last) {
      return {};
    }
    std::uint64_t key = (static_cast<std::uint64_t>(first) << 32) | last;
    if (auto it = memo_.find(key); it != memo_.end()) {
      return it->second;
    }
    std::size_t split_s = last_new_pos(first, last);
    std::size_t split_e = first_new_pos(first, last);

    std::vector<letter_type> out = canon(first, split_s);
    out.push_back(word_[split_s]);
    out.push_back(word_[split_e]);
    auto tail = canon(split_e + 1, last);
    out.insert(out.end(), tail.begin(), tail.end());
    memo_.emplace(key, out);
    return out;
  }

  static bool note(std::vector<letter_type>& seen, letter_type a) {
    if (std::find(seen.begin(), seen.end(), a) != seen.end()) {
      return false;
    }
    seen.push_back(a);
    return true;
  }

  // index of the first occurrence of the last-new-from-the-left letter
  std::size_t last_new_pos(std::size_t first, std::size_t last) const {
    std::vector<letter_type> seen;
    std::size_t p = first;
    for (std::size_t pos = first; pos < last; ++pos) {
      if (note(seen, word_[pos])) {
        p = pos;
      }
    }
    return p;
  }

  // index of the last occurrence of the last-new-from-the-right letter
  std::size_t first_new_pos(std::size_t first, std::size_t last) const {
    std::vector<letter_type> seen;
    std::size_t p = last - 1;
    for (std::size_t pos = last; pos-- > first;) {
      if (note(seen, word_[pos])) {
        p = pos;
      }
    }
    return p;
  }

  std::vector<letter_type> word_;
  std::unordered_map<std::uint64_t, std::vector<letter_type>> memo_;
};

}  // namespace detail

//! The canonical form b(w) = b(s(w)) sigma(w) epsilon(w) b(e(w)), with
//! b of the empty word empty. Two words have the same image iff their
//! identity holds in every band.
inline Word b_canonical(const Word& w, std::size_t content_cap = kDefaultContentCap) {
  if (content(w).size() > content_cap) {
    throw budget_error("b_canonical: word has " + std::to_string(content(w).size())
                       + " distinct letters, cap is " + std::to_string(content_cap));
  }
  return Word(detail::BCanonicalizer(w).run());
}

//! Decides u ~ v in the variety of all bands.
inline bool band_satisfies(const Word& u, const Word& v,
                           std::size_t content_cap = kDefaultContentCap) {
  if (u.empty() || v.empty()) {
    throw empty_word_error("band_satisfies: words must be nonempty");
  }
  return b_canonical(u, content_cap) == b_canonical(v, content_cap);
}

}  // namespace bandkit

#endif  // BANDKIT_CANONICAL_HPP_
