#ifndef BANDKIT_WORD_HPP_
#define BANDKIT_WORD_HPP_

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bandkit {

//! Letters are 1-based indices into the alphabet x1, x2, ...
//! Indices 1..26 render as a..z, anything else as whitespace-separated
//! "xK" tokens; the two spellings never mix within one word.
using letter_type = std::uint32_t;

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class parse_error : public error {
 public:
  using error::error;
};

class empty_word_error : public error {
 public:
  using error::error;
};

class budget_error : public error {
 public:
  using error::error;
};

//! An immutable-by-convention finite sequence of letters. The empty word is
//! a legal value internally (the canonical-form recursions need it); the
//! identity-deciding entry points reject it.
class Word {
 public:
  using const_iterator = std::vector<letter_type>::const_iterator;

  Word() = default;

  explicit Word(std::vector<letter_type> letters) : letters_(std::move(letters)) {
    for (auto a : letters_) {
      if (a == 0) {
        throw error("Word: letter indices are 1-based, got 0");
      }
    }
  }

  Word(std::initializer_list<letter_type> letters)
      : Word(std::vector<letter_type>(letters)) {}

  static Word parse(std::string_view text);

  bool empty() const noexcept {
    return letters_.empty();
  }

  std::size_t size() const noexcept {
    return letters_.size();
  }

  letter_type operator[](std::size_t i) const {
    return letters_[i];
  }

  const_iterator begin() const noexcept {
    return letters_.begin();
  }

  const_iterator end() const noexcept {
    return letters_.end();
  }

  const std::vector<letter_type>& letters() const noexcept {
    return letters_;
  }

  letter_type front() const {
    return letters_.front();
  }

  letter_type back() const {
    return letters_.back();
  }

  Word reversed() const {
    return Word(std::vector<letter_type>(letters_.rbegin(), letters_.rend()));
  }

  //! The factor [first, last).
  Word subword(std::size_t first, std::size_t last) const {
    return Word(std::vector<letter_type>(letters_.begin() + first,
                                         letters_.begin() + last));
  }

  void push_back(letter_type a) {
    if (a == 0) {
      throw error("Word: letter indices are 1-based, got 0");
    }
    letters_.push_back(a);
  }

  Word& operator+=(const Word& rhs) {
    letters_.insert(letters_.end(), rhs.letters_.begin(), rhs.letters_.end());
    return *this;
  }

  friend Word operator+(Word lhs, const Word& rhs) {
    lhs += rhs;
    return lhs;
  }

  auto operator<=>(const Word&) const = default;

  //! a..z when every letter is <= 26, otherwise "x1 x40"-style tokens.
  std::string str() const;

  //! Always the "x1 x2"-token spelling (used by the scheme file format).
  std::string str_tokens() const;

 private:
  std::vector<letter_type> letters_;
};

inline std::ostream& operator<<(std::ostream& os, const Word& w) {
  return os << w.str();
}

inline std::string Word::str() const {
  if (std::all_of(letters_.begin(), letters_.end(),
                  [](letter_type a) { return a <= 26; })) {
    std::string out;
    out.reserve(letters_.size());
    for (auto a : letters_) {
      out.push_back(static_cast<char>('a' + a - 1));
    }
    return out;
  }
  return str_tokens();
}

inline std::string Word::str_tokens() const {
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i != 0) {
      out.push_back(' ');
    }
    out += "x" + std::to_string(letters_[i]);
  }
  return out;
}

inline Word Word::parse(std::string_view text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    throw parse_error("empty word");
  }
  std::size_t last = text.find_last_not_of(" \t\r\n");
  text = text.substr(first, last - first + 1);

  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)); };

  std::vector<letter_type> letters;
  if (std::none_of(text.begin(), text.end(), is_space)
      && !(text.size() >= 2 && text[0] == 'x'
           && std::all_of(text.begin() + 1, text.end(), [](char c) {
                return std::isdigit(static_cast<unsigned char>(c));
              }))) {
    // contiguous a..z form
    for (char c : text) {
      if (c < 'a' || c > 'z') {
        throw parse_error("invalid letter '" + std::string(1, c)
                          + "' in word \"" + std::string(text) + "\"");
      }
      letters.push_back(static_cast<letter_type>(c - 'a' + 1));
    }
    return Word(std::move(letters));
  }

  // whitespace-separated xK tokens
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok.size() < 2 || tok[0] != 'x'
        || !std::all_of(tok.begin() + 1, tok.end(), [](char c) {
             return std::isdigit(static_cast<unsigned char>(c));
           })) {
      throw parse_error("invalid token \"" + tok + "\" in word \""
                        + std::string(text) + "\"");
    }
    unsigned long k = std::stoul(tok.substr(1));
    if (k == 0 || k > 0xFFFFFFFFul) {
      throw parse_error("letter index out of range in token \"" + tok + "\"");
    }
    letters.push_back(static_cast<letter_type>(k));
  }
  return Word(std::move(letters));
}

//! The set of distinct letters occurring in w (empty iff w is empty).
inline std::set<letter_type> content(const Word& w) {
  return std::set<letter_type>(w.begin(), w.end());
}

namespace detail {
// Position of the last new letter when scanning left to right, i.e. the
// index p such that w[0, p) is the longest prefix missing exactly one
// letter of content(w) and w[p] is that letter.
inline std::size_t last_new_letter_pos(const Word& w) {
  std::size_t total = content(w).size();
  std::set<letter_type> seen;
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    if (seen.insert(w[pos]).second && seen.size() == total) {
      return pos;
    }
  }
  throw error("last_new_letter_pos: unreachable");
}
}  // namespace detail

//! Longest prefix of w containing all but one letter of content(w); empty
//! when w has single-letter content.
inline Word s_prefix(const Word& w) {
  if (w.empty()) {
    throw empty_word_error("s_prefix: empty word");
  }
  return w.subword(0, detail::last_new_letter_pos(w));
}

//! The last letter to occur in w from the left: s_prefix(w) * sigma(w) is
//! the shortest prefix with full content.
inline letter_type sigma(const Word& w) {
  if (w.empty()) {
    throw empty_word_error("sigma: empty word");
  }
  return w[detail::last_new_letter_pos(w)];
}

//! Longest suffix of w containing all but one letter of content(w).
inline Word e_suffix(const Word& w) {
  if (w.empty()) {
    throw empty_word_error("e_suffix: empty word");
  }
  return s_prefix(w.reversed()).reversed();
}

//! The last letter to occur in w from the right.
inline letter_type epsilon(const Word& w) {
  if (w.empty()) {
    throw empty_word_error("epsilon: empty word");
  }
  return sigma(w.reversed());
}

//! The identification minor w^(ij): every occurrence of x_i replaced by
//! x_j. Directional; the scheme layer always calls it with i < j.
inline Word identify(const Word& w, letter_type i, letter_type j) {
  if (i == j) {
    throw error("identify: the two letters must differ");
  }
  std::vector<letter_type> out(w.begin(), w.end());
  std::replace(out.begin(), out.end(), i, j);
  return Word(std::move(out));
}

//! Homomorphic substitution: concatenates images[a] for each letter a of w.
inline Word substitute(const Word& w, const std::map<letter_type, Word>& images) {
  Word out;
  for (auto a : w) {
    auto it = images.find(a);
    if (it == images.end()) {
      throw error("substitute: no image for letter x" + std::to_string(a));
    }
    if (it->second.empty()) {
      throw error("substitute: empty image for letter x" + std::to_string(a));
    }
    out += it->second;
  }
  return out;
}

}  // namespace bandkit

#endif  // BANDKIT_WORD_HPP_
