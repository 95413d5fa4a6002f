#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cuntz/word.hpp"

namespace cuntz {

/// A level-tagged permutation sigma of W_n^k, standing for the unitary
/// u = sum_{alpha} S_{sigma(alpha)} S_alpha^* in the Cuntz algebra O_n.
///
/// Conventions (fixed once, everything else follows):
///
///  * Products are function compositions: (p * q)(x) = p(q(x)). Under the
///    correspondence u ~ sigma this matches the unitary product, i.e.
///    uv ~ sigma tau. Formulas quoted from the operator side therefore read
///    left to right with the rightmost factor applied first.
///
///  * tensor(p, q) acts on concatenated words (alpha, beta) -- alpha first --
///    by (p(alpha), q(beta)). With the reversed-lexicographic rank of
///    word.hpp this is index arithmetic: i = a + |p| * b maps to
///    p(a) + |p| * q(b).
///
///  * embed(p, m) = p x id_m realizes P_n^k inside P_n^{k+m} (the unitary is
///    unchanged); shift(p, m) = id_m x p realizes the canonical endomorphism
///    power u -> phi^m(u).
///
/// Levels are explicit data. Mixed-level arguments are an error everywhere
/// except convolve, which performs the padding required by its defining
/// formula. Callers pad with embed/shift deliberately; silent coercion is
/// how level bugs slip in.
class Perm {
public:
  Perm() = default;

  static Perm identity(int n, int k);

  /// Validates that `table` (0-based images) is a bijection on n^k points.
  static Perm from_table(int n, int k, std::vector<std::uint32_t> table);

  int n() const { return n_; }
  int k() const { return k_; }
  std::uint64_t size() const { return table_.size(); }

  std::uint32_t operator()(std::uint32_t idx) const { return table_[idx]; }
  const std::vector<std::uint32_t>& table() const { return table_; }

  bool is_identity() const;

  friend bool operator==(const Perm&, const Perm&) = default;

private:
  Perm(int n, int k, std::vector<std::uint32_t> table);

  int n_ = 0;
  int k_ = 0;
  std::vector<std::uint32_t> table_;
};

/// Group operations; levels must match.
Perm compose(const Perm& p, const Perm& q);
Perm invert_perm(const Perm& p);

/// p x q on W_n^{kp + kq} (alphabets must match).
Perm tensor(const Perm& p, const Perm& q);

/// id_pre x p x id_post.
Perm mid_tensor(int pre, const Perm& p, int post);

Perm embed(const Perm& p, int m);  // p x id_m
Perm shift(const Perm& p, int m);  // id_m x p

/// phi^(r) = (id_{r-1} x p)(id_{r-2} x p x id_1)...(p x id_{r-1}),
/// level k -> k+r-1. phi_r(p, 1) = p. Throws for r < 1.
Perm phi_r(const Perm& p, int r);

/// Convolution p * q at level k+r-1, the permutation of u lambda_u(w):
/// (p x id_{r-1}) (phi^(r))^{-1} (q x id_{k-1}) phi^(r). Realizes
/// lambda_p . lambda_q = lambda_{convolve(p, q)}.
Perm convolve(const Perm& p, const Perm& q);

/// Permutation of phi(u)u^* for u ~ p, i.e. the unitary implementing Ad(u)
/// as a localized endomorphism: (id_1 x p)(p^{-1} x id_1), level k -> k+1.
Perm inner_image(const Perm& p);

/// (id_1 x phi) p (phi^{-1} x id_1): the effect of Ad(u), u ~ phi in
/// P_n^{k-1}, on p in P_n^k. Simultaneously relabels all tree maps by phi.
Perm relabel(const Perm& p, const Perm& phi);

/// Equality as endomorphisms of O_n: equal after padding the lower level
/// with embed. Alphabets must match.
bool endo_equal(const Perm& p, const Perm& q);

/// If p factors as q x id_m with m maximal, returns q (possibly p itself).
Perm strip_trailing_id(const Perm& p);

/// Cycle notation over {1..n^k}: "(1,9)(2,4,10,12,14,16)(6,8)". Whitespace
/// is ignored; "()" and "" denote the identity. format_cycles emits each
/// cycle starting at its smallest element, cycles sorted by that element,
/// fixed points omitted; the identity formats as "()".
Perm parse_cycles(int n, int k, std::string_view text);
std::string format_cycles(const Perm& p);

/// Packs the table into 64 bits (throws if it does not fit); used as a set
/// key by the enumeration drivers.
std::uint64_t encode_compact(const Perm& p);

}  // namespace cuntz
