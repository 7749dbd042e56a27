#pragma once

#include "ecj/error.hpp"
#include "ecj/mpoly.hpp"
#include "ecj/rational.hpp"

namespace ecj {

// R(y) = (y^2 - 1968 y + 2654208) / (2 y^2 (y - 1728)^2) over any field type
// following the linsolve Field interface.
template <class Field, class Elem = typename Field::Elem>
Elem j_R(const Field& F, const Elem& y) {
  if (F.is_zero(y)) throw PoleError("y");
  Elem y1728 = F.sub(y, F.constant(1728));
  if (F.is_zero(y1728)) throw PoleError("y-1728");
  Elem num = F.add(F.sub(F.mul(y, y), F.mul(F.constant(1968), y)), F.constant(2654208));
  Elem den = F.mul(F.constant(2), F.mul(F.mul(y, y), F.mul(y1728, y1728)));
  return F.div(num, den);
}

// eta(y0, y1, y2) = 3/2 y2^2 / y1 - R(y0) y1^3, the value of y''' forced by the ODE.
template <class Field, class Elem = typename Field::Elem>
Elem j_eta(const Field& F, const Elem& y0, const Elem& y1, const Elem& y2) {
  if (F.is_zero(y1)) throw PoleError("y1");
  Elem first = F.div(F.mul(F.constant(Rational(3, 2)), F.mul(y2, y2)), y1);
  Elem cube = F.mul(y1, F.mul(y1, y1));
  return F.sub(first, F.mul(j_R(F, y0), cube));
}

// Psi = y3/y1 - 3/2 (y2/y1)^2 + R(y0) y1^2.
template <class Field, class Elem = typename Field::Elem>
Elem j_Psi(const Field& F, const Elem& y0, const Elem& y1, const Elem& y2, const Elem& y3) {
  if (F.is_zero(y1)) throw PoleError("y1");
  Elem ratio = F.div(y2, y1);
  Elem s = F.sub(F.div(y3, y1), F.mul(F.constant(Rational(3, 2)), F.mul(ratio, ratio)));
  return F.add(s, F.mul(j_R(F, y0), F.mul(y1, y1)));
}

// Numerator of eta(j, j', j'') after substituting j = (c/2) z^2 + d z + e,
// j' = c z + d, j'' = c. Registry is {z, c, d, e}.
MPoly lemma_constant_poly();

}  // namespace ecj
