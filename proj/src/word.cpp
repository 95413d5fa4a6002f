#include "cuntz/word.hpp"

#include <limits>
#include <stdexcept>

namespace cuntz {

std::uint64_t pow_nk(int n, int k) {
  if (n < 2) throw std::invalid_argument("alphabet size must be >= 2");
  if (k < 0) throw std::invalid_argument("word length must be >= 0");
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(n))
      throw std::overflow_error("n^k overflows 64 bits");
    r *= static_cast<std::uint64_t>(n);
  }
  return r;
}

void validate_word(const Word& w) {
  if (w.n < 2) throw std::invalid_argument("alphabet size must be >= 2");
  for (auto a : w.letters)
    if (a < 1 || a > w.n)
      throw std::invalid_argument("letter out of range 1.." + std::to_string(w.n));
}

rank_t rank_word(const Word& w) {
  validate_word(w);
  return word_index(w) + 1;
}

std::uint64_t word_index(const Word& w) {
  std::uint64_t idx = 0, weight = 1;
  for (auto a : w.letters) {
    idx += static_cast<std::uint64_t>(a - 1) * weight;
    weight *= static_cast<std::uint64_t>(w.n);
  }
  return idx;
}

Word unrank_word(int n, int k, rank_t r) {
  const auto size = pow_nk(n, k);
  if (r < 1 || r > size)
    throw std::out_of_range("rank " + std::to_string(r) + " outside 1..n^k");
  return word_from_index(n, k, r - 1);
}

Word word_from_index(int n, int k, std::uint64_t idx) {
  Word w;
  w.n = n;
  w.letters.resize(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    w.letters[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(idx % n + 1);
    idx /= static_cast<std::uint64_t>(n);
  }
  return w;
}

std::string to_string(const Word& w) {
  if (w.n > 9) throw std::invalid_argument("digit rendering requires n <= 9");
  if (w.letters.empty()) return "0";
  std::string s;
  s.reserve(w.letters.size());
  for (auto a : w.letters) s.push_back(static_cast<char>('0' + a));
  return s;
}

Word word_from_string(int n, std::string_view digits) {
  if (n < 2 || n > 9) throw std::invalid_argument("word strings require 2 <= n <= 9");
  Word w;
  w.n = n;
  if (digits == "0") return w;  // empty word
  w.letters.reserve(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const char c = digits[i];
    if (c < '1' || c > '0' + n)
      throw ParseError("invalid letter '" + std::string(1, c) + "' for alphabet 1.." +
                           std::to_string(n),
                       i);
    w.letters.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return w;
}

}  // namespace cuntz
