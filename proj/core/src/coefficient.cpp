#include "ellhall/coefficient.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace ellhall {

namespace {

bool same_parity(int a, int b) { return ((a - b) % 2) == 0; }

Exponent operator+(Exponent x, Exponent y) { return {x.a2 + y.a2, x.b2 + y.b2}; }
Exponent operator-(Exponent x, Exponent y) { return {x.a2 - y.a2, x.b2 - y.b2}; }

NuTExponent to_nt(Exponent e) {
  // sigma^a sigmabar^b = (-1)^{a+b} nu^{-(a+b)} t^{a-b}, a = a2/2, b = b2/2
  return {-(e.a2 + e.b2) / 2, (e.a2 - e.b2) / 2};
}

Exponent from_nt_exp(NuTExponent e) { return {e.k - e.m, -e.m - e.k}; }

bool odd(int x) { return (x % 2) != 0; }

std::string rational_string(const Rational& q) { return q.get_str(); }

}  // namespace

Coefficient::Coefficient(long c) {
  if (c != 0) terms_.emplace(Exponent{0, 0}, Rational(c));
}

Coefficient::Coefficient(const Rational& c) {
  if (c != 0) terms_.emplace(Exponent{0, 0}, c);
}

Coefficient Coefficient::monomial(int a2, int b2, const Rational& c) {
  if (!same_parity(a2, b2)) {
    throw CoefficientError("monomial exponents must have equal parity");
  }
  Coefficient x;
  if (c != 0) x.terms_.emplace(Exponent{a2, b2}, c);
  return x;
}

Coefficient Coefficient::sigma() { return monomial(2, 0); }
Coefficient Coefficient::sigmabar() { return monomial(0, 2); }
Coefficient Coefficient::nu() { return nu_t(1, 0); }
Coefficient Coefficient::nu_power(int m) { return nu_t(m, 0); }
Coefficient Coefficient::t_power(int k) { return nu_t(0, k); }

Coefficient Coefficient::nu_t(int m, int k, const Rational& c) {
  const Exponent e = from_nt_exp({m, k});
  return monomial(e.a2, e.b2, odd(m) ? Rational(-c) : c);
}

Coefficient Coefficient::from_nt(const NuTForm& form) {
  Coefficient x;
  for (const auto& [e, c] : form) x.add_term(from_nt_exp(e), odd(e.m) ? Rational(-c) : c);
  return x;
}

bool Coefficient::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first == Exponent{0, 0} &&
         terms_.begin()->second == 1;
}

void Coefficient::add_term(const Exponent& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Coefficient& Coefficient::operator+=(const Coefficient& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Coefficient& Coefficient::operator-=(const Coefficient& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Coefficient operator*(const Coefficient& a, const Coefficient& b) {
  Coefficient r;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
  }
  return r;
}

Coefficient& Coefficient::operator*=(const Coefficient& o) { return *this = *this * o; }

Coefficient& Coefficient::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Coefficient Coefficient::operator-() const {
  Coefficient r = *this;
  for (auto& [e, v] : r.terms_) v = -v;
  return r;
}

Coefficient Coefficient::bar() const {
  Coefficient r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(Exponent{-e.a2, -e.b2}, c);
  return r;
}

Coefficient Coefficient::swap_sigma() const {
  Coefficient r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(Exponent{e.b2, e.a2}, c);
  return r;
}

NuTForm Coefficient::nt_form() const {
  NuTForm f;
  for (const auto& [e, c] : terms_) {
    const NuTExponent n = to_nt(e);
    f.emplace(n, odd(n.m) ? Rational(-c) : c);
  }
  return f;
}

Coefficient Coefficient::monomial_inverse() const {
  if (!is_monomial()) throw CoefficientError("not a monomial");
  const auto& [e, c] = *terms_.begin();
  return monomial(-e.a2, -e.b2, Rational(1) / c);
}

Coefficient Coefficient::exact_div(const Coefficient& divisor) const {
  if (divisor.is_zero()) throw CoefficientError("division by zero");
  if (is_zero()) return {};
  if (divisor.is_monomial()) return *this * divisor.monomial_inverse();

  // Long division on the lexicographic leading term. Every quotient term q
  // satisfies q >= lexmin(dividend) - lexmin(divisor); falling below that
  // bound proves the division is inexact.
  const auto& [lead_e, lead_c] = *divisor.terms_.rbegin();
  const Exponent floor_e = terms_.begin()->first - divisor.terms_.begin()->first;
  Coefficient rem = *this;
  Coefficient quot;
  while (!rem.is_zero()) {
    const auto& [re, rc] = *rem.terms_.rbegin();
    const Exponent qe = re - lead_e;
    if (qe < floor_e) throw CoefficientError("inexact division");
    const Coefficient q = monomial(qe.a2, qe.b2, rc / lead_c);
    quot += q;
    rem -= q * divisor;
  }
  return quot;
}

bool Coefficient::in_positive_cone() const {
  for (const auto& [e, c] : terms_) {
    if (e.a2 + e.b2 >= 0) return false;
  }
  return true;
}

bool Coefficient::in_natural_cone(int min_nu) const {
  for (const auto& [e, c] : nt_form()) {
    if (e.m < min_nu) return false;
    if (c < 0 || c.get_den() != 1) return false;
  }
  return true;
}

std::complex<double> Coefficient::evaluate(std::complex<double> sigma_half,
                                           std::complex<double> sigmabar_half) const {
  std::complex<double> sum = 0.0;
  for (const auto& [e, c] : terms_) {
    sum += c.get_d() * std::pow(sigma_half, e.a2) * std::pow(sigmabar_half, e.b2);
  }
  return sum;
}

namespace {

template <typename Emit>
std::string format_nt(const NuTForm& f, Emit emit_monomial) {
  if (f.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest nu-power first reads naturally for Kostka-type tables.
  std::vector<std::pair<NuTExponent, Rational>> items(f.begin(), f.end());
  std::stable_sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
    if (x.first.m != y.first.m) return x.first.m > y.first.m;
    return x.first.k > y.first.k;
  });
  for (const auto& [e, c] : items) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const std::string mono = emit_monomial(e);
    if (mono.empty()) {
      os << rational_string(mag);
    } else if (mag == 1) {
      os << mono;
    } else {
      os << rational_string(mag) << "*" << mono;
    }
  }
  return os.str();
}

}  // namespace

std::string Coefficient::to_nt_string() const {
  return format_nt(nt_form(), [](NuTExponent e) {
    std::string s;
    auto part = [&](const char* var, int p) {
      if (p == 0) return;
      if (!s.empty()) s += "*";
      s += var;
      if (p != 1) s += "^" + std::to_string(p);
    };
    part("nu", e.m);
    part("t", e.k);
    return s;
  });
}

std::string Coefficient::to_tex() const {
  std::string body = format_nt(nt_form(), [](NuTExponent e) {
    std::string s;
    auto part = [&](const char* var, int p) {
      if (p == 0) return;
      s += var;
      if (p != 1) s += "^{" + std::to_string(p) + "}";
    };
    part("\\nu ", e.m);
    part("t", e.k);
    return s;
  });
  for (std::size_t pos = 0; (pos = body.find('*', pos)) != std::string::npos;) body.erase(pos, 1);
  return body;
}

Coefficient split_positive(const Coefficient& d) {
  Coefficient r;
  for (const auto& [e, c] : d.terms()) {
    const int deg = e.a2 + e.b2;
    if (deg == 0) {
      throw SplitObstruction("nonzero component on a + b = 0: " + d.to_nt_string());
    }
    if (deg < 0) r += Coefficient::monomial(e.a2, e.b2, c);
  }
  if (r - r.bar() != d) {
    throw SplitObstruction("input is not bar-antisymmetric: " + d.to_nt_string());
  }
  return r;
}

Coefficient pow(const Coefficient& x, unsigned n) {
  Coefficient r(1L);
  for (unsigned i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace ellhall
