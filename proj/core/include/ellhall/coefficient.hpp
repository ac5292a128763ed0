#pragma once

// Exact Laurent polynomials in sigma^{1/2}, sigmabar^{1/2} over Q.
//
// Exponents are stored doubled: the key (a2, b2) stands for the monomial
// sigma^{a2/2} sigmabar^{b2/2}. Every stored key has a2 = b2 (mod 2), which
// is exactly the condition for the monomial to be an integral monomial in
//
//   nu = -(sigma sigmabar)^{-1/2},   t = sigma^{1/2} sigmabar^{-1/2}.
//
// In those coordinates sigma^a sigmabar^b = (-1)^{a+b} nu^{-(a+b)} t^{a-b}.

#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace ellhall {

using Rational = mpq_class;

class CoefficientError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by split_positive when the input is not bar-antisymmetric or has a
/// nonzero component on monomials with a + b = 0.
class SplitObstruction : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Exponent {
  int a2 = 0;  // doubled sigma exponent
  int b2 = 0;  // doubled sigmabar exponent
  auto operator<=>(const Exponent&) const = default;
};

/// Exponents (m, k) of nu^m t^k.
struct NuTExponent {
  int m = 0;
  int k = 0;
  auto operator<=>(const NuTExponent&) const = default;
};

using NuTForm = std::map<NuTExponent, Rational>;

class Coefficient {
 public:
  using TermMap = std::map<Exponent, Rational>;

  Coefficient() = default;
  Coefficient(long c);  // NOLINT: integers embed as constants
  Coefficient(const Rational& c);  // NOLINT

  static Coefficient monomial(int a2, int b2, const Rational& c = 1);
  static Coefficient sigma();
  static Coefficient sigmabar();
  static Coefficient nu();
  static Coefficient nu_power(int m);
  static Coefficient t_power(int k);
  /// c * nu^m t^k
  static Coefficient nu_t(int m, int k, const Rational& c = 1);
  static Coefficient from_nt(const NuTForm& form);

  [[nodiscard]] const TermMap& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_one() const;
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  /// True for a single term (a unit of the Laurent ring when the rational is nonzero).
  [[nodiscard]] bool is_monomial() const { return terms_.size() == 1; }

  Coefficient& operator+=(const Coefficient& o);
  Coefficient& operator-=(const Coefficient& o);
  Coefficient& operator*=(const Coefficient& o);
  Coefficient& operator*=(const Rational& c);

  friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
  friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
  friend Coefficient operator*(const Coefficient& a, const Coefficient& b);
  friend Coefficient operator*(Coefficient a, const Rational& c) { return a *= c; }
  Coefficient operator-() const;

  friend bool operator==(const Coefficient& a, const Coefficient& b) { return a.terms_ == b.terms_; }

  /// Antilinear conjugation sigma -> sigma^{-1}, sigmabar -> sigmabar^{-1}.
  [[nodiscard]] Coefficient bar() const;
  /// Swap sigma <-> sigmabar.
  [[nodiscard]] Coefficient swap_sigma() const;
  [[nodiscard]] bool is_sigma_symmetric() const { return swap_sigma() == *this; }
  [[nodiscard]] NuTForm nt_form() const;

  /// Inverse of a monomial; throws CoefficientError otherwise.
  [[nodiscard]] Coefficient monomial_inverse() const;

  /// Exact quotient; throws CoefficientError if `divisor` does not divide.
  [[nodiscard]] Coefficient exact_div(const Coefficient& divisor) const;

  /// Terms with a + b < 0 (positive nu-degree).
  [[nodiscard]] bool in_positive_cone() const;
  /// Every nt_form coefficient is a nonnegative integer and every nu-exponent
  /// is at least `min_nu`.
  [[nodiscard]] bool in_natural_cone(int min_nu) const;

  /// Numeric specialization at given square roots; spot checks only.
  [[nodiscard]] std::complex<double> evaluate(std::complex<double> sigma_half,
                                              std::complex<double> sigmabar_half) const;

  /// Human-readable form in nu, t, e.g. "nu^2*t + 1/2*nu^-1".
  [[nodiscard]] std::string to_nt_string() const;
  /// LaTeX form in nu, t.
  [[nodiscard]] std::string to_tex() const;

 private:
  void add_term(const Exponent& e, const Rational& c);
  TermMap terms_;
};

/// The unique r supported on a + b < 0 with r - bar(r) = d.
Coefficient split_positive(const Coefficient& d);

Coefficient pow(const Coefficient& x, unsigned n);

}  // namespace ellhall
