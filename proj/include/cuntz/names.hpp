#pragma once

#include "cuntz/perm.hpp"

namespace cuntz::names {

/// The standard generator set for the level-4 classification over n = 2,
/// given in cycle notation over the reversed-lexicographic enumeration.
/// A and B are mutually inverse in Out(O_2); J is an order-2 outer
/// automorphism fixing S_1; G has order 6; F is the flip-flop S_1 <-> S_2.
Perm A();  // level 4: (1,9)(2,4,10,12,14,16)(6,8)
Perm B();  // level 4: (1,9)(2,4,6,10,16,12,14)
Perm J();  // level 4: (10,12), exchanges 2112 and 2212
Perm G();  // level 4: (9,13,15), 3-cycle on 1112, 1122, 1222
Perm F();  // level 1: (1,2)

/// Conjugators for the composition identities:
/// Ad(z) . lambda_A . lambda_B = id and Ad(y) . lambda_F . lambda_A =
/// lambda_B . lambda_F.
Perm y();  // level 3
Perm z();  // level 6

}  // namespace cuntz::names
