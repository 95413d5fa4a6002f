#include "cuntz/names.hpp"

namespace cuntz::names {

Perm A() { return parse_cycles(2, 4, "(1,9)(2,4,10,12,14,16)(6,8)"); }
Perm B() { return parse_cycles(2, 4, "(1,9)(2,4,6,10,16,12,14)"); }
Perm J() { return parse_cycles(2, 4, "(10,12)"); }
Perm G() { return parse_cycles(2, 4, "(9,13,15)"); }
Perm F() { return parse_cycles(2, 1, "(1,2)"); }
Perm y() { return parse_cycles(2, 3, "(1,3,5,7)(2,4,8)"); }

Perm z() {
  return parse_cycles(2, 6,
                      "(2,4,8)(3,7,15)(5,13,29)(9,25)(10,12)"
                      "(18,20,24)(19,23)(26,28)(34,36,40)"
                      "(35,39,47)(37,45)(42,44)(50,52,56)(51,55)(58,60)");
}

}  // namespace cuntz::names
