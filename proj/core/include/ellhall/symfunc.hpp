#pragma once

// Partitions and classical symmetric-function transitions in one ray:
// power sums, complete homogeneous h_r, Schur and Hall-Littlewood P(nu).

#include <map>
#include <vector>

#include "ellhall/coefficient.hpp"
#include "ellhall/lattice.hpp"

namespace ellhall {

/// Polynomial in commuting generators g_1, g_2, ...; a monomial is the sorted
/// (descending) multiset of generator indices.
class RayPolynomial {
 public:
  using Monomial = Partition;
  using TermMap = std::map<Monomial, Coefficient>;

  RayPolynomial() = default;
  static RayPolynomial constant(const Coefficient& c);
  static RayPolynomial generator(int l);
  static RayPolynomial monomial(Monomial m, const Coefficient& c);

  [[nodiscard]] const TermMap& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] Coefficient coeff(const Monomial& m) const;
  void add(const Monomial& m, const Coefficient& c);

  RayPolynomial& operator+=(const RayPolynomial& o);
  RayPolynomial& operator-=(const RayPolynomial& o);
  RayPolynomial& operator*=(const Coefficient& c);
  friend RayPolynomial operator+(RayPolynomial a, const RayPolynomial& b) { return a += b; }
  friend RayPolynomial operator-(RayPolynomial a, const RayPolynomial& b) { return a -= b; }
  friend RayPolynomial operator*(const RayPolynomial& a, const RayPolynomial& b);
  friend RayPolynomial operator*(RayPolynomial a, const Coefficient& c) { return a *= c; }
  friend bool operator==(const RayPolynomial& a, const RayPolynomial& b) { return a.terms_ == b.terms_; }

  /// Drops every monomial of total degree > n.
  [[nodiscard]] RayPolynomial truncate(int n) const;
  /// Substitutes g_l -> images[l] (images indexed from 1).
  [[nodiscard]] RayPolynomial substitute(const std::vector<RayPolynomial>& images) const;

 private:
  TermMap terms_;
};

int partition_size(const Partition& p);
bool is_partition(const Partition& p);

/// All partitions of n, reverse-lexicographic: (n), (n-1,1), ..., (1^n).
std::vector<Partition> partitions(int n);
/// True when a >= b in dominance order (equal sizes).
bool dominates(const Partition& a, const Partition& b);
Partition conjugate(const Partition& p);

/// z_rho = prod_i i^{m_i} m_i!
Rational z_factor(const Partition& rho);
/// Irreducible character chi^lambda at cycle type rho (Murnaghan-Nakayama).
long mn_character(const Partition& lambda, const Partition& rho);

/// s_lambda expanded in power sums p_l (generator g_l = p_l).
RayPolynomial schur_in_powersum(const Partition& lambda);
/// Inverse character transform: p_rho expanded in Schur functions.
std::map<Partition, Rational> powersum_in_schur(const Partition& rho);

/// Semistandard tableaux of shape lambda and content mu, as rows.
using Tableau = std::vector<std::vector<int>>;
std::vector<Tableau> semistandard_tableaux(const Partition& shape, const Partition& content);
/// Lascoux-Schutzenberger charge of a tableau with partition content.
int charge(const Tableau& t);

/// K_{lambda mu}(nu) via the charge statistic.
Coefficient kostka_foulkes(const Partition& lambda, const Partition& mu);

/// Square matrix of Coefficients over partitions(n) in reverse-lex order.
struct PartitionMatrix {
  std::vector<Partition> index;
  std::vector<std::vector<Coefficient>> entries;
};
PartitionMatrix kostka_foulkes_matrix(int n);
/// Inverse of an upper unitriangular matrix; throws CoefficientError otherwise.
std::vector<std::vector<Coefficient>> invert_unitriangular(const std::vector<std::vector<Coefficient>>& m);

/// P_mu(nu) = sum_lambda (K^{-1})_{mu lambda} s_lambda.
std::map<Partition, Coefficient> hl_P_in_schur(const Partition& mu);
RayPolynomial hl_P_in_powersum(const Partition& mu);

enum class GeneratorChange { G_TO_P, P_TO_G };
/// G_TO_P: entry r is h_r in power sums. P_TO_G: entry r is p_r in the h's.
/// Entries 1..max_degree; entry 0 is unused.
std::vector<RayPolynomial> generator_change_exp(GeneratorChange direction, int max_degree);

}  // namespace ellhall
