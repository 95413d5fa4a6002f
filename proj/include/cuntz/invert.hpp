#pragma once

#include "cuntz/perm.hpp"

namespace cuntz {

/// u_m = u^* phi(u^*) ... phi^{m-1}(u^*) at level k+m-1. Satisfies the
/// cocycle law u_{a+b} = u_a phi^a(u_b) and equals (phi^(m))^{-1}; both are
/// exercised by tests rather than assumed. lambda_u acts on level-m words by
/// S_alpha -> u_m S_alpha.
Perm u_product(const Perm& p, int m);

struct StabilizationResult {
  bool found = false;
  Perm inverse;          // only meaningful when found; trailing id factors stripped
  int level = 0;         // level of `inverse`
  int iterations = 0;    // stabilization steps executed
  int cutoff = 0;        // effective level cutoff used
  bool memory_capped = false;  // cutoff was lowered to fit the table budget
};

/// Iterates v_m = Ad(phi^m(u) ... phi(u) u)(u^*) level by level. When the
/// sequence repeats (v_{m+1} equals v_m padded by one level) the candidate
/// is stripped of trailing identity factors and certified by
/// convolve(p, candidate) == id; a bogus coincidence fails the certificate
/// and iteration continues. The certificate makes false positives
/// impossible, so NotStabilized at the cutoff means either p is not an
/// automorphism or the cutoff was too small -- callers consult
/// is_automorphism to tell the cases apart.
///
/// cutoff < 0 selects the default: the worst-case stabilization level
/// n^{2(k-1)}, lowered to the memory budget (memory_capped is set when the
/// budget bites).
StabilizationResult invert_endo(const Perm& p, int cutoff = -1);

/// True iff lambda_p^2 = id, i.e. convolve(p, p) is the identity. The
/// equivalent conjugation identity u_k u u_k^* = u^* is evaluated as well
/// and a disagreement throws, keeping the two routes honest.
bool is_square_free(const Perm& p);

/// The coupled inverse-pair equations U_h V U_h^* = U^*, V_k U V_k^* = V^*,
/// evaluated as permutations at a common level.
bool verify_coupled(const Perm& U, const Perm& V);

struct NecUResult {
  bool holds = false;
  Perm candidate;  // U_r^* U^* U_r, the predicted inverse
};

/// The single-unknown equation (U_r^* U^* U_r)_r U (U_r^* U^* U_r)_r^* =
/// U_r^* U U_r. A solution certifies that lambda_U is an automorphism with
/// inverse induced by the returned candidate.
NecUResult verify_necU(const Perm& U, int r);

}  // namespace cuntz
