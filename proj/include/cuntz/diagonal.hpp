#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cuntz/perm.hpp"
#include "cuntz/word.hpp"

namespace cuntz {

/// A finite sum of diagonal projections P_alpha in canonical form: the word
/// set is an antichain under the prefix order, no full sibling family
/// {beta 1, ..., beta n} remains unmerged, and words are sorted by
/// (length, rank). Canonical form is unique for a given projection.
struct ProjectionSum {
  int n = 2;
  std::vector<Word> words;

  friend bool operator==(const ProjectionSum&, const ProjectionSum&) = default;
};

/// Merges bottom-up by length to a fixed point and sorts. Throws
/// std::invalid_argument if the input violates the antichain property (the
/// action of a permutation endomorphism never produces one).
ProjectionSum canonicalize(int n, std::vector<Word> words);

/// lambda_p(P_alpha): conjugates the rank set of P_alpha at level k+l-1 by
/// u_l and merges. Requires |alpha| >= 1.
ProjectionSum act_on_projection(const Perm& p, const Word& alpha);

/// Linear extension to canonical sums.
ProjectionSum act_on_sum(const Perm& p, const ProjectionSum& s);

/// Terms rendered "P2211+P2222", ordered like the published tables (plain
/// string order of the subscripts, which differs from canonical order when
/// lengths mix).
std::string to_string(const ProjectionSum& s);

struct DiagTable {
  int n = 0;
  int k = 0;
  int maxlen = 0;
  std::vector<std::pair<Word, ProjectionSum>> rows;  // alpha in length-then-lex order
};

DiagTable diag_table(const Perm& p, int maxlen);
std::string to_text(const DiagTable& t);

/// Exact partition-of-unity check: the union of the given word sets is an
/// antichain and the cylinder measures sum to 1 (integer arithmetic with
/// denominator n^maxlen).
bool is_partition_of_unity(int n, const std::vector<ProjectionSum>& parts);

/// The suffix-pattern law of the generator A: for every mu with
/// |mu| <= depth there are words nu1, nu2 of length |mu|+1 with
///   lambda_A(P_{mu 211}) = P_{nu1 211} + P_{nu2 222},
///   lambda_A(P_{mu 212}) = P_{nu1 212} + P_{nu2 221},
/// and every word ending in neither 211 nor 212 (lengths up to depth+3) maps
/// to a single projection of its own length. Returns true iff all instances
/// hold; `p` must be the level-4 generator A over n = 2.
bool lap_property_check(const Perm& p, int depth);

}  // namespace cuntz
