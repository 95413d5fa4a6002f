#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cuntz/errors.hpp"

namespace cuntz {

/// 1-based position of a word in the reversed lexicographic enumeration of
/// W_n^k (see Word below).
using rank_t = std::uint64_t;

/// n^k with overflow check.
std::uint64_t pow_nk(int n, int k);

/// A finite word over the alphabet {1,...,n}. The empty word (k = 0) is the
/// unit of concatenation.
///
/// Enumeration convention used throughout: words of a fixed length k are
/// ordered reversed-lexicographically, i.e. compared from the *last* letter
/// down to the first, and
///
///   rank(a_1 ... a_k) = 1 + sum_j (a_j - 1) n^{j-1}.
///
/// Equivalently, the first letter is the least significant digit. Under this
/// convention appending a suffix scales the high digits, which makes the
/// index arithmetic of embed/shift in perm.hpp plain radix splitting.
struct Word {
  int n = 2;
  std::vector<std::uint8_t> letters;  // each in 1..n

  int length() const { return static_cast<int>(letters.size()); }

  friend bool operator==(const Word&, const Word&) = default;
};

/// Throws std::invalid_argument if a letter is out of range or n < 2.
void validate_word(const Word& w);

rank_t rank_word(const Word& w);
Word unrank_word(int n, int k, rank_t r);

/// 0-based variants used by the table kernels.
std::uint64_t word_index(const Word& w);          // rank - 1
Word word_from_index(int n, int k, std::uint64_t idx);

/// Digit-string rendering, e.g. "2111". Requires n <= 9; the empty word
/// renders as "0" (the customary symbol for it). word_from_string accepts
/// both forms.
std::string to_string(const Word& w);
Word word_from_string(int n, std::string_view digits);

}  // namespace cuntz
