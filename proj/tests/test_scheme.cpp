#include <catch2/catch_amalgamated.hpp>

#include <bandkit/scheme.hpp>

#include "test_util.hpp"

using namespace bandkit;

namespace {

Word W(const char* text) {
  return Word::parse(text);
}

Word x_run(std::uint32_t n) {
  std::vector<letter_type> out(n);
  std::iota(out.begin(), out.end(), 1);
  return Word(std::move(out));
}

}  // namespace

TEST_CASE("scheme_from_word", "[scheme]") {
  Scheme s2 = scheme_from_word(W("x1 x2"), 2);
  CHECK(s2.entry(1, 2) == W("x2 x2"));

  Scheme s3 = scheme_from_word(W("x1 x2 x3"), 3);
  CHECK(s3.entry(1, 2) == W("x2 x2 x3"));
  CHECK(s3.entry(1, 3) == W("x3 x2 x3"));
  CHECK(s3.entry(2, 3) == W("x1 x3 x3"));

  Scheme s5 = scheme_from_word(x_run(5), 5);
  CHECK(s5.entry(1, 2) == W("x2 x2 x3 x4 x5"));

  CHECK_THROWS_AS(scheme_from_word(W("x1 x6"), 5), scheme_error);
}

TEST_CASE("scheme validation", "[scheme]") {
  Scheme::map_type entries{{{1, 2}, W("x2 x2")}};
  CHECK_NOTHROW(Scheme(2, entries));
  CHECK_THROWS_AS(Scheme(3, entries), scheme_error);  // missing pairs
  entries[{1, 2}] = Word();
  CHECK_THROWS_AS(Scheme(2, entries), scheme_error);  // empty entry
  entries[{1, 2}] = W("x3");
  CHECK_THROWS_AS(Scheme(2, entries), scheme_error);  // letter beyond arity
}

TEST_CASE("check_scheme on minor families", "[scheme]") {
  Scheme s = scheme_from_word(x_run(5), 5);
  for (const auto& v : {Variety::b(2), Variety::a(4), Variety::parse("A3+B2~")}) {
    SchemeReport report = check_scheme(s, v);
    INFO(v.str());
    CHECK(report.all_ok());
    CHECK(report.violations.empty());
  }
  CHECK(check_scheme(scheme_from_word(x_run(6), 6), Variety::a(4)).all_ok());
}

TEST_CASE("check_scheme flags dependency violations", "[scheme]") {
  Scheme tampered =
      scheme_from_word(x_run(5), 5).with_entry(1, 2, W("x1 x3 x4 x5"));
  SchemeReport report = check_scheme(tampered, Variety::sl());
  CHECK_FALSE(report.dependency);
  CHECK_FALSE(report.violations.empty());
}

TEST_CASE("check_scheme on random minor families", "[scheme][property]") {
  test::Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    std::uint32_t n = std::uniform_int_distribution<std::uint32_t>(4, 6)(rng);
    Word w = test::random_word_full_content(rng, n, 5);
    Scheme s = scheme_from_word(w, n);
    for (const auto& v :
         {Variety::lz(), Variety::b(2), Variety::a(3), Variety::all_bands()}) {
      CHECK(check_scheme(s, v).all_ok());
    }
  }
}

TEST_CASE("is_essential", "[scheme]") {
  CHECK(is_essential(scheme_from_word(x_run(5), 5)));
  CHECK_FALSE(is_essential(scheme_from_word(W("x1 x1 x2"), 3)));
  // single-letter entries have content far too small
  Scheme::map_type entries{{{1, 2}, W("x2")},
                           {{1, 3}, W("x2")},
                           {{2, 3}, W("x1")}};
  CHECK_FALSE(is_essential(Scheme(3, entries)));
}

TEST_CASE("associated permutation of minor families", "[scheme]") {
  auto id5 = associated_permutation(scheme_from_word(x_run(5), 5));
  REQUIRE(id5.has_value());
  CHECK(id5->images() == std::vector<std::uint32_t>{1, 2, 3, 4, 5});

  auto rev5 = associated_permutation(scheme_from_word(W("x5 x4 x3 x2 x1"), 5));
  REQUIRE(rev5.has_value());
  CHECK(rev5->images() == std::vector<std::uint32_t>{5, 4, 3, 2, 1});
  CHECK(rev5->str() == "5 4 3 2 1");

  // permutation words reconstruct for any pi and reasonable n
  test::Rng rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    std::uint32_t n = std::uniform_int_distribution<std::uint32_t>(4, 8)(rng);
    std::vector<std::uint32_t> images(n);
    std::iota(images.begin(), images.end(), 1);
    std::shuffle(images.begin(), images.end(), rng);
    Word w = test::random_word_full_content(rng, n, 6);
    // force i2(w) to the permutation order by prefixing the permutation word
    Word perm(std::vector<letter_type>(images.begin(), images.end()));
    auto pi = associated_permutation(scheme_from_word(perm + w, n));
    REQUIRE(pi.has_value());
    CHECK(pi->images() == images);
  }
}

TEST_CASE("associated permutation rejects inconsistent schemes", "[scheme]") {
  Scheme s = scheme_from_word(x_run(5), 5);
  // break the single i2 constraint of entry (1,2): content stays X5 minus x1
  Scheme broken = s.with_entry(1, 2, W("x3 x2 x4 x5"));
  CHECK(is_essential(broken));
  CHECK_FALSE(associated_permutation(broken).has_value());
}

TEST_CASE("associated permutation uniqueness under single-entry damage",
          "[scheme][property]") {
  test::Rng rng(33);
  for (int trial = 0; trial < 40; ++trial) {
    std::uint32_t n = std::uniform_int_distribution<std::uint32_t>(5, 7)(rng);
    Word w = test::random_word_full_content(rng, n, 4);
    Scheme s = scheme_from_word(w, n);
    auto pi = associated_permutation(s);
    REQUIRE(pi.has_value());
    // swap two adjacent letters of one entry's initial part
    auto key = std::next(s.entries().begin(),
                         std::uniform_int_distribution<std::size_t>(
                             0, s.entries().size() - 1)(rng))
                   ->first;
    Word ip = initial_part(s.entry(key.first, key.second));
    std::size_t at =
        std::uniform_int_distribution<std::size_t>(0, ip.size() - 2)(rng);
    std::vector<letter_type> swapped(ip.begin(), ip.end());
    std::swap(swapped[at], swapped[at + 1]);
    Scheme broken = s.with_entry(key.first, key.second, Word(std::move(swapped)));
    CHECK(is_essential(broken));
    CHECK_FALSE(associated_permutation(broken).has_value());
  }
}

TEST_CASE("associated permutation preconditions", "[scheme]") {
  CHECK_THROWS_AS(associated_permutation(scheme_from_word(x_run(4), 4), true),
                  scheme_error);  // strict needs n >= 5
  CHECK_THROWS_AS(associated_permutation(scheme_from_word(W("x1 x1 x2"), 3)),
                  scheme_error);  // not essential
}

TEST_CASE("derived scheme", "[scheme]") {
  Scheme s = scheme_from_word(x_run(5), 5);
  DerivedScheme d = derived_scheme(s, 5);
  CHECK(d.scheme.arity() == 4);
  CHECK(d.scheme.entry(1, 2) == W("x2 x2 x3 x4"));
  CHECK(is_essential(d.scheme));
  CHECK(d.alphabet == std::vector<letter_type>{1, 2, 3, 4});
  // reindexing drops the pivot and keeps order
  Scheme s2 = scheme_from_word(W("x1 x3 x2 x4 x5") + x_run(5), 5);
  auto pi = associated_permutation(s2);
  REQUIRE(pi.has_value());
  DerivedScheme d2 = derived_scheme(s2, pi->image(5));
  CHECK(is_essential(d2.scheme));
  CHECK(check_scheme(d2.scheme, Variety::a(3)).all_ok());
  // wrong pivot: sigma of the entries is x5, not x1
  CHECK_THROWS_AS(derived_scheme(s, 1), scheme_error);
}

TEST_CASE("derived scheme of a passing scheme passes", "[scheme][property]") {
  test::Rng rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    std::uint32_t n = std::uniform_int_distribution<std::uint32_t>(5, 7)(rng);
    Word w = test::random_word_full_content(rng, n, 5);
    Scheme s = scheme_from_word(w, n);
    auto pi = associated_permutation(s);
    REQUIRE(pi.has_value());
    DerivedScheme d = derived_scheme(s, pi->image(n));
    CHECK(is_essential(d.scheme));
    for (const auto& v : {Variety::b(2), Variety::a(3)}) {
      CHECK(check_scheme(d.scheme, v).all_ok());
    }
  }
}

TEST_CASE("comes_from", "[scheme]") {
  Word w = W("x1 x2 x3 x1");
  Scheme s = scheme_from_word(w, 3);
  CHECK(comes_from(s, w, Variety::all_bands()));
  CHECK(comes_from(s, w, Variety::parse("A3+A3~")));
  // equivalent but unequal candidate
  CHECK(comes_from(scheme_from_word(W("x1 x2 x1"), 2), W("x1 x2"),
                   Variety::all_bands()));
  // the entry (2,3) of the x1x2x3 family has initial part x1 x3; the
  // candidate x2x1x3 yields x3 x1 there, so left regular bands refuse it
  CHECK_FALSE(comes_from(scheme_from_word(W("x1 x2 x3"), 3), W("x2 x1 x3"),
                         Variety::b(2)));
}

TEST_CASE("solve for left regular bands recovers the initial part", "[scheme]") {
  Scheme s = scheme_from_word(x_run(5), 5);
  SolveResult result = solve_scheme(s, Variety::b(2));
  REQUIRE(result.ok());
  CHECK(initial_part(*result.word) == x_run(5));
  CHECK(comes_from(s, *result.word, Variety::b(2)));
}

TEST_CASE("solve round trips over chain varieties", "[scheme][property]") {
  test::Rng rng(35);
  const Variety varieties[] = {Variety::a(3), Variety::b(3), Variety::a(4),
                               Variety::dual_b(2), Variety::dual_a(3)};
  for (int trial = 0; trial < 12; ++trial) {
    std::uint32_t n = std::uniform_int_distribution<std::uint32_t>(6, 8)(rng);
    Word w = test::random_word_full_content(rng, n, 6);
    Scheme s = scheme_from_word(w, n);
    for (const auto& v : varieties) {
      SolveResult result = solve_scheme(s, v);
      INFO(v.str() << " on " << w.str_tokens());
      REQUIRE(result.ok());
      CHECK(satisfies(v, *result.word, w));
    }
  }
}

TEST_CASE("solve concatenates joinand solutions", "[scheme]") {
  test::Rng rng(36);
  Word w = test::random_word_full_content(rng, 7, 5);
  Scheme s = scheme_from_word(w, 7);
  Variety v = Variety::parse("A3+A3~");
  SolveResult result = solve_scheme(s, v);
  REQUIRE(result.ok());
  CHECK(satisfies(Variety::a(3), *result.word, w));
  CHECK(satisfies(Variety::dual_a(3), *result.word, w));
  // the left-chain part comes first
  Word left = solve_scheme(s, Variety::a(3)).word.value();
  CHECK(result.word->subword(0, left.size()) == left);
}

TEST_CASE("solve reports a violated identity on tampered schemes", "[scheme]") {
  Scheme s = scheme_from_word(x_run(6), 6);
  Scheme broken = s.with_entry(1, 2, W("x3 x2 x4 x5 x6"));
  SolveResult result = solve_scheme(broken, Variety::a(3));
  CHECK_FALSE(result.ok());
  CHECK(result.witness.find("!~") != std::string::npos);
}

TEST_CASE("solve refuses the top variety", "[scheme]") {
  Scheme s = scheme_from_word(x_run(5), 5);
  CHECK_THROWS_AS(solve_scheme(s, Variety::all_bands()), error);
}

TEST_CASE("solve stays total at tiny arities", "[scheme]") {
  // the chain recursion cannot derive an (n-1)-scheme from a 2-scheme; the
  // solver must still answer instead of leaking an exception
  for (const auto& v : {Variety::a(3), Variety::b(4), Variety::dual_a(3)}) {
    SolveResult result = solve_scheme(scheme_from_word(W("x1 x2"), 2), v);
    if (result.ok()) {
      CHECK(comes_from(scheme_from_word(W("x1 x2"), 2), *result.word, v));
    } else {
      CHECK_FALSE(result.witness.empty());
    }
  }
}

TEST_CASE("solve succeeds on equivalent but unequal entries", "[scheme][property]") {
  // replacing an entry by an equivalent word (squaring it, or duplicating a
  // prefix: both are consequences of idempotency, so they hold in every
  // band) must not throw the solver off
  test::Rng rng(38);
  const Variety varieties[] = {Variety::b(2), Variety::a(3), Variety::b(3),
                               Variety::dual_a(3), Variety::parse("A3+A3~")};
  for (int trial = 0; trial < 25; ++trial) {
    std::uint32_t n = std::uniform_int_distribution<std::uint32_t>(6, 7)(rng);
    Word w = test::random_word_full_content(rng, n, 4);
    Scheme s = scheme_from_word(w, n);
    auto key = std::next(s.entries().begin(),
                         std::uniform_int_distribution<std::size_t>(
                             0, s.entries().size() - 1)(rng))
                   ->first;
    Word entry = s.entry(key.first, key.second);
    Word replacement;
    if (trial % 2 == 0) {
      replacement = entry + entry;
    } else {
      std::size_t k =
          std::uniform_int_distribution<std::size_t>(1, entry.size())(rng);
      replacement = entry.subword(0, k) + entry;
    }
    REQUIRE(band_satisfies(replacement, entry));
    Scheme patched = s.with_entry(key.first, key.second, replacement);
    const Variety& v = varieties[trial % 5];
    SolveResult result = solve_scheme(patched, v);
    INFO(v.str() << " on " << w.str_tokens());
    REQUIRE(result.ok());
    CHECK(satisfies(v, *result.word, w));
  }
}

TEST_CASE("solver soundness on fuzzed schemes", "[scheme][property]") {
  test::Rng rng(37);
  const Variety varieties[] = {Variety::b(2), Variety::a(3), Variety::b(3),
                               Variety::dual_a(3), Variety::parse("A3+B2~")};
  for (int trial = 0; trial < 60; ++trial) {
    std::uint32_t n = std::uniform_int_distribution<std::uint32_t>(5, 7)(rng);
    Word w = test::random_word_full_content(rng, n, 5);
    Scheme s = scheme_from_word(w, n);
    // perturb one entry arbitrarily (may or may not stay solvable)
    auto key = std::next(s.entries().begin(),
                         std::uniform_int_distribution<std::size_t>(
                             0, s.entries().size() - 1)(rng))
                   ->first;
    Word entry = s.entry(key.first, key.second);
    std::vector<letter_type> letters(entry.begin(), entry.end());
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
      case 0:
        letters.push_back(std::uniform_int_distribution<letter_type>(1, n)(rng));
        break;
      case 1:
        std::shuffle(letters.begin(), letters.end(), rng);
        break;
      default:
        letters[std::uniform_int_distribution<std::size_t>(
            0, letters.size() - 1)(rng)] =
            std::uniform_int_distribution<letter_type>(1, n)(rng);
        break;
    }
    Scheme broken = s.with_entry(key.first, key.second, Word(std::move(letters)));
    const Variety& v = varieties[trial % 5];
    SolveResult result = solve_scheme(broken, v);
    if (result.ok()) {
      CHECK(comes_from(broken, *result.word, v));
    } else {
      CHECK_FALSE(result.witness.empty());
    }
  }
}
