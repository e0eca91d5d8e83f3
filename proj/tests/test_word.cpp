#include <random>

#include "doctest.h"
#include "howson/word.hpp"
#include "oracles.hpp"

using namespace howson;
using howson::test::w;

TEST_CASE("reduce cancels adjacent inverse pairs") {
  CHECK(w("abBA").empty());
  CHECK(w("aAa") == w("a"));
  CHECK(w("aba").to_string() == "aba");
  CHECK(w(" a b\ta ").to_string() == "aba");
}

TEST_CASE("reduce rejects letters outside the rank") {
  std::vector<Letter> raw{{0, 1}, {2, 1}};
  CHECK_THROWS_AS(Word::reduce(raw, 2), Error);
  try {
    (void) Word::parse("abc", 2);
  } catch (Error const& e) {
    CHECK(e.code() == Errc::invalid_letter);
  }
  CHECK_THROWS_AS(Word::parse("a1", 2), Error);
}

TEST_CASE("multiplication") {
  CHECK(mul(w("ab"), w("BA")).empty());
  CHECK(mul(w("ab"), w("ba")).to_string() == "abba");
  CHECK(mul(w("aB"), w("ba")).to_string() == "aa");
  CHECK_THROWS_AS((void) mul(w("a", 2), w("a", 3)), Error);
}

TEST_CASE("inversion") {
  CHECK(inv(w("")).empty());
  CHECK(inv(w("ab")).to_string() == "BA");
  CHECK(inv(w("aBa")).to_string() == "AbA");
}

TEST_CASE("commutators") {
  CHECK(commutator(w("a"), w("a")).empty());
  CHECK(commutator(w("a"), w("b")).to_string() == "abAB");
  // a and ab share no root, so they do not commute: a.ab.A.BA has no
  // cancelling pair.
  CHECK(commutator(w("a"), w("ab")).to_string() == "aabABA");
  // Powers of a common root commute.
  CHECK(commutator(w("ab"), w("abab")).empty());
}

TEST_CASE("cyclic reduction") {
  auto d = cyclically_reduce(w("abA"));
  CHECK(d.core == w("b"));
  CHECK(d.conjugator == w("a"));
  d = cyclically_reduce(w("ab"));
  CHECK(d.core == w("ab"));
  CHECK(d.conjugator.empty());
  d = cyclically_reduce(w("aabAA"));
  CHECK(d.core == w("b"));
  CHECK(d.conjugator == w("aa"));
  CHECK(are_conjugate(w("abAB"), w("BabA")));
  CHECK_FALSE(are_conjugate(w("ab"), w("aB")));
}

TEST_CASE("large ranks use x tokens") {
  auto u = Word::parse("x0 X29 x29 x5 X0", 30);
  CHECK(u.to_string() == "x0 x5 X0");
  CHECK(Word::parse(u.to_string(), 30) == u);
  CHECK_THROWS_AS(Word::parse("x30", 30), Error);
  CHECK_THROWS_AS(Word::parse("a", 30), Error);
}

TEST_CASE("all_words enumerates reduced words") {
  // 1 + 4 + 12 + 36 reduced words of length <= 3 in rank 2.
  auto all = all_words(2, 3);
  CHECK(all.size() == 53);
  for (auto const& u : all) {
    CHECK(Word::reduce(u.letters(), 2) == u);
  }
}

TEST_CASE("property: reduction agrees with naive reduction and is idempotent") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    std::vector<Letter> raw;
    std::uniform_int_distribution<int> len(0, 20), gen(0, 2), sign(0, 1);
    for (int k = len(rng); k > 0; --k) {
      raw.push_back(Letter{std::uint32_t(gen(rng)),
                           std::int8_t(sign(rng) ? 1 : -1)});
    }
    auto reduced = Word::reduce(raw, 3);
    auto naive   = test::naive_reduce(raw);
    CHECK(std::vector<Letter>(reduced.begin(), reduced.end()) == naive);
    CHECK(Word::reduce(reduced.letters(), 3) == reduced);
  }
}

TEST_CASE("property: group axioms and length parity") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    auto u = test::random_word(rng, 3, 10);
    auto v = test::random_word(rng, 3, 10);
    auto x = test::random_word(rng, 3, 10);
    CHECK(mul(mul(u, v), x) == mul(u, mul(v, x)));
    CHECK(mul(u, Word(3)) == u);
    CHECK(mul(u, inv(u)).empty());
    CHECK(mul(inv(u), u).empty());
    CHECK(inv(inv(u)) == u);
    auto uv = mul(u, v);
    CHECK(uv.size() <= u.size() + v.size());
    CHECK((uv.size() + u.size() + v.size()) % 2 == 0);
    auto d = cyclically_reduce(u);
    CHECK(mul(mul(d.conjugator, d.core), inv(d.conjugator)) == u);
    CHECK(Word::parse(u.to_string(), 3) == u);
  }
}
