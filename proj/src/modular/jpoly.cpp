#include "ecj/jpoly.hpp"

#include "ecj/linsolve.hpp"
#include "ecj/ratfunc.hpp"

namespace ecj {

MPoly lemma_constant_poly() {
  auto reg = make_registry({"z", "c", "d", "e"});
  RatFuncField F{reg};
  auto v = [&](std::size_t i) { return RatFunc(MPoly::variable(reg, i)); };
  RatFunc z = v(0), c = v(1), d = v(2), e = v(3);
  RatFunc j = F.add(F.add(F.mul(F.constant(Rational(1, 2)), F.mul(c, F.mul(z, z))), F.mul(d, z)), e);
  RatFunc jp = F.add(F.mul(c, z), d);
  RatFunc eta = j_eta(F, j, jp, c);
  return eta.num();
}

}  // namespace ecj
