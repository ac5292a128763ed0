#pragma once

#include <stdexcept>

#include "ellhall/coefficient.hpp"

namespace testutil {

// Evaluates a coefficient with no t-dependence at nu = x.
inline ellhall::Rational eval_nu(const ellhall::Coefficient& c, const ellhall::Rational& x) {
  ellhall::Rational s = 0;
  for (const auto& [e, v] : c.nt_form()) {
    if (e.k != 0) throw std::logic_error("coefficient depends on t");
    ellhall::Rational p = 1;
    const int m = e.m < 0 ? -e.m : e.m;
    for (int i = 0; i < m; ++i) p *= x;
    s += v * (e.m < 0 ? ellhall::Rational(1) / p : p);
  }
  return s;
}

inline ellhall::Coefficient nu() { return ellhall::Coefficient::nu(); }
inline ellhall::Coefficient nu_pow(int m) { return ellhall::Coefficient::nu_power(m); }
inline ellhall::Coefficient t_pow(int k) { return ellhall::Coefficient::t_power(k); }

}  // namespace testutil
