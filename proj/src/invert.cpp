#include "cuntz/invert.hpp"

#include <algorithm>
#include <stdexcept>

#include "cuntz/budget.hpp"

namespace cuntz {

Perm u_product(const Perm& p, int m) {
  if (m < 1) throw std::invalid_argument("u_product: m must be >= 1");
  const Perm pinv = invert_perm(p);
  // rightmost factor phi^{m-1}(u^*) = id_{m-1} x u^* is applied first
  Perm acc = shift(pinv, m - 1);
  for (int j = m - 2; j >= 0; --j) acc = compose(mid_tensor(j, pinv, m - 1 - j), acc);
  return acc;
}

StabilizationResult invert_endo(const Perm& p, int cutoff) {
  const int n = p.n();
  const int k = p.k();
  StabilizationResult res;

  // worst-case bound on the level of a localized inverse
  std::uint64_t bound = 1;
  bool bound_overflow = false;
  for (int i = 0; i < 2 * (k - 1); ++i) {
    bound *= static_cast<std::uint64_t>(n);
    if (bound > 1u << 30) {
      bound_overflow = true;
      break;
    }
  }
  const int mem_cap = max_level_for(n);
  if (cutoff < 0) {
    // the bound caps the level of the inverse; detecting stabilization needs
    // one level of slack beyond it
    const std::uint64_t want = bound_overflow
                                   ? static_cast<std::uint64_t>(mem_cap)
                                   : std::max<std::uint64_t>(bound, static_cast<std::uint64_t>(k) + 2);
    cutoff = static_cast<int>(std::min<std::uint64_t>(want, mem_cap));
    res.memory_capped = static_cast<std::uint64_t>(cutoff) < want || bound_overflow;
  } else if (cutoff > mem_cap) {
    cutoff = mem_cap;
    res.memory_capped = true;
  }
  if (cutoff < k) throw std::invalid_argument("invert_endo: cutoff below the level of p");
  res.cutoff = cutoff;

  const Perm pinv = invert_perm(p);
  Perm v = pinv;  // v_0 = u^* at level k
  int level = k;
  while (level + 1 <= cutoff) {
    const int m = level + 1 - k;
    ++res.iterations;
    ++level;
    const Perm ve = embed(v, 1);
    const Perm vn = compose(shift(p, m), compose(ve, shift(pinv, m)));
    if (vn == ve) {
      Perm tau = strip_trailing_id(v);
      if (tau.k() < 1) tau = embed(tau, 1);  // keep the inverse a genuine level-1+ unitary
      if (convolve(p, tau).is_identity()) {
        res.found = true;
        res.level = tau.k();
        res.inverse = std::move(tau);
        return res;
      }
    }
    v = vn;
  }
  return res;
}

bool is_square_free(const Perm& p) {
  const int k = p.k();
  const Perm uk = u_product(p, k);  // level 2k-1
  const bool via_convolution = convolve(p, p).is_identity();
  const bool via_conjugation =
      compose(uk, compose(embed(p, k - 1), invert_perm(uk))) == embed(invert_perm(p), k - 1);
  if (via_convolution != via_conjugation)
    throw std::logic_error("is_square_free: the two criteria disagree");
  return via_convolution;
}

bool verify_coupled(const Perm& U, const Perm& V) {
  if (U.n() != V.n()) throw std::invalid_argument("verify_coupled: alphabet mismatch");
  const int k = U.k(), h = V.k();
  const Perm Uh = u_product(U, h);  // level k+h-1
  const Perm Vk = u_product(V, k);  // level k+h-1
  const bool eq1 =
      compose(Uh, compose(embed(V, k - 1), invert_perm(Uh))) == embed(invert_perm(U), h - 1);
  const bool eq2 =
      compose(Vk, compose(embed(U, h - 1), invert_perm(Vk))) == embed(invert_perm(V), k - 1);
  return eq1 && eq2;
}

NecUResult verify_necU(const Perm& U, int r) {
  if (r < U.k()) throw std::invalid_argument("verify_necU: r must be at least the level of U");
  const int k = U.k();
  const Perm Ur = u_product(U, r);  // level k+r-1
  const int L1 = k + r - 1;
  NecUResult out;
  out.candidate =
      compose(invert_perm(Ur), compose(embed(invert_perm(U), r - 1), Ur));  // level L1
  const Perm Wr = u_product(out.candidate, r);  // level L1+r-1
  const int L2 = L1 + r - 1;
  const Perm lhs = compose(Wr, compose(embed(U, L2 - k), invert_perm(Wr)));
  const Perm rhs = embed(compose(invert_perm(Ur), compose(embed(U, r - 1), Ur)), r - 1);
  out.holds = lhs == rhs;
  return out;
}

}  // namespace cuntz
