#include "doctest.h"

#include <random>

#include "cuntz/word.hpp"

using namespace cuntz;

TEST_CASE("rank follows the reversed lexicographic convention") {
  CHECK(rank_word(word_from_string(2, "1111")) == 1);
  CHECK(rank_word(word_from_string(2, "1112")) == 9);
  CHECK(rank_word(word_from_string(2, "2121")) == 6);
  CHECK(rank_word(word_from_string(2, "2221")) == 8);
  CHECK(rank_word(Word{2, {}}) == 1);  // the empty word
  CHECK(rank_word(word_from_string(3, "21")) == 2);   // first letter is the low digit
  CHECK(rank_word(word_from_string(3, "12")) == 4);   // 1 + (2-1)*3
}

TEST_CASE("rank and unrank are mutually inverse") {
  // exhaustive on a few small alphabets
  for (auto [n, k] : {std::pair{2, 6}, {3, 4}, {4, 3}, {9, 2}}) {
    for (rank_t r = 1; r <= pow_nk(n, k); ++r)
      CHECK(rank_word(unrank_word(n, k, r)) == r);
  }
  // random spot checks near the documented 10^6 ceiling
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + static_cast<int>(rng() % 3);
    int k = 1;
    while (pow_nk(n, k + 1) <= 1000000) ++k;
    const rank_t r = rng() % pow_nk(n, k) + 1;
    const Word w = unrank_word(n, k, r);
    CHECK(rank_word(w) == r);
    CHECK(unrank_word(n, k, rank_word(w)) == w);
  }
}

TEST_CASE("word validation rejects bad input") {
  CHECK_THROWS_AS(rank_word(Word{2, {1, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(unrank_word(2, 3, 0), std::out_of_range);
  CHECK_THROWS_AS(unrank_word(2, 3, 9), std::out_of_range);
  CHECK_THROWS_AS(word_from_string(2, "123"), ParseError);
  try {
    word_from_string(2, "113");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
}

TEST_CASE("digit strings round-trip") {
  CHECK(to_string(word_from_string(2, "2111")) == "2111");
  CHECK(to_string(Word{2, {}}) == "0");
  CHECK(word_from_string(4, "0").letters.empty());
}
