#include <catch2/catch_amalgamated.hpp>

#include <bandkit/word.hpp>

#include "test_util.hpp"

using namespace bandkit;

TEST_CASE("word parsing and rendering", "[word]") {
  CHECK(Word::parse("xyzxy").str() == "xyzxy");
  CHECK(Word::parse("x1 x2 x1").str() == "aba");
  CHECK(Word::parse("x1 x40").str() == "x1 x40");
  CHECK(Word::parse("  aba  ") == Word({1, 2, 1}));
  CHECK(Word::parse("x12") == Word({12}));
  CHECK(Word::parse("x") == Word({24}));  // the letter x, not a token

  CHECK_THROWS_AS(Word::parse(""), parse_error);
  CHECK_THROWS_AS(Word::parse("   "), parse_error);
  CHECK_THROWS_AS(Word::parse("ab1"), parse_error);
  CHECK_THROWS_AS(Word::parse("x1x2"), parse_error);
  CHECK_THROWS_AS(Word::parse("x1 ab"), parse_error);
  CHECK_THROWS_AS(Word::parse("x0"), parse_error);
  CHECK_THROWS_AS(Word::parse("ABC"), parse_error);

  // round trips through both spellings
  test::Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    Word w = test::random_word(rng, 26, 12);
    CHECK(Word::parse(w.str()) == w);
    CHECK(Word::parse(w.str_tokens()) == w);
  }
}

TEST_CASE("content", "[word]") {
  CHECK(content(Word::parse("x")) == std::set<letter_type>{24});
  CHECK(content(Word::parse("xyzxy")) == std::set<letter_type>{24, 25, 26});
  CHECK(content(Word()).empty());
}

TEST_CASE("structural operators on examples", "[word]") {
  CHECK(s_prefix(Word::parse("x")) == Word());
  CHECK(s_prefix(Word::parse("xyzxy")) == Word::parse("xy"));
  CHECK(s_prefix(Word::parse("xyx")) == Word::parse("x"));

  CHECK(sigma(Word::parse("x")) == Word::parse("x")[0]);
  CHECK(sigma(Word::parse("xyzxy")) == Word::parse("z")[0]);
  CHECK(sigma(Word::parse("xyx")) == Word::parse("y")[0]);

  CHECK(e_suffix(Word::parse("x")) == Word());
  CHECK(epsilon(Word::parse("x")) == Word::parse("x")[0]);
  CHECK(e_suffix(Word::parse("xyzxy")) == Word::parse("xy"));
  CHECK(epsilon(Word::parse("xyzxy")) == Word::parse("z")[0]);
  CHECK(e_suffix(Word::parse("xyx")) == Word::parse("x"));
  CHECK(epsilon(Word::parse("xyx")) == Word::parse("y")[0]);

  CHECK_THROWS_AS(s_prefix(Word()), empty_word_error);
  CHECK_THROWS_AS(sigma(Word()), empty_word_error);
  CHECK_THROWS_AS(e_suffix(Word()), empty_word_error);
  CHECK_THROWS_AS(epsilon(Word()), empty_word_error);
}

TEST_CASE("identify", "[word]") {
  CHECK(identify(Word({1, 2, 3}), 1, 3) == Word({3, 2, 3}));
  CHECK(identify(Word({1, 2, 1}), 1, 2) == Word({2, 2, 2}));
  CHECK(identify(Word({2, 3}), 1, 3) == Word({2, 3}));
  CHECK_THROWS_AS(identify(Word({1}), 2, 2), error);
}

TEST_CASE("substitute", "[word]") {
  std::map<letter_type, Word> id{{1, Word({1})}, {2, Word({2})}};
  CHECK(substitute(Word({1, 2}), id) == Word({1, 2}));
  std::map<letter_type, Word> m{{1, Word::parse("ab")}, {2, Word::parse("c")}};
  CHECK(substitute(Word({1, 2, 1}), m) == Word::parse("abcab"));
  CHECK(substitute(Word({1}), {{1, Word::parse("yzy")}}) == Word::parse("yzy"));
  CHECK_THROWS_AS(substitute(Word({1, 2}), {{1, Word({1})}}), error);
  CHECK_THROWS_AS(substitute(Word({1}), {{1, Word()}}), error);
}

TEST_CASE("prefix/suffix invariants on random words", "[word][property]") {
  test::Rng rng(2);
  for (int trial = 0; trial < 10000; ++trial) {
    Word w = test::random_word(rng, 6, 18);
    Word s = s_prefix(w);
    letter_type sg = sigma(w);
    CHECK(content(s).size() == content(w).size() - 1);
    // s * sigma is the shortest prefix with full content
    Word shortest = s;
    shortest.push_back(sg);
    CHECK(w.subword(0, shortest.size()) == shortest);
    CHECK(content(shortest) == content(w));
    if (shortest.size() > 1) {
      CHECK(content(w.subword(0, shortest.size() - 1)) != content(w));
    }
    // duality
    CHECK(e_suffix(w) == s_prefix(w.reversed()).reversed());
    CHECK(epsilon(w) == sigma(w.reversed()));
    CHECK(w.reversed().reversed() == w);
  }
}

TEST_CASE("identify is idempotent and shrinks content", "[word][property]") {
  test::Rng rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    Word w = test::random_word(rng, 5, 12);
    letter_type i = std::uniform_int_distribution<letter_type>(1, 5)(rng);
    letter_type j = std::uniform_int_distribution<letter_type>(1, 5)(rng);
    if (i == j) {
      continue;
    }
    Word once = identify(w, i, j);
    CHECK(identify(once, i, j) == once);
    auto expected = content(w);
    if (expected.erase(i) > 0) {
      expected.insert(j);
    }
    CHECK(content(once) == expected);
  }
}

TEST_CASE("s-prefix commutes with identification away from sigma", "[word][property]") {
  // over the alphabet X_n minus one letter with sigma = x_l, identifying a
  // pair avoiding l commutes with taking the s-prefix
  test::Rng rng(4);
  int checked = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    Word w = test::random_word(rng, 6, 20);
    letter_type l = sigma(w);
    std::vector<letter_type> candidates;
    for (letter_type t = 1; t <= 7; ++t) {
      if (t != l) {
        candidates.push_back(t);
      }
    }
    std::shuffle(candidates.begin(), candidates.end(), rng);
    letter_type p = std::min(candidates[0], candidates[1]);
    letter_type q = std::max(candidates[0], candidates[1]);
    CHECK(identify(s_prefix(w), p, q) == s_prefix(identify(w, p, q)));
    ++checked;
  }
  CHECK(checked == 10000);
}
