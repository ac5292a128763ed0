#pragma once

// Bar involution on truncated elements, the canonical basis b_p and the
// elliptic Kostka tables.

#include <functional>
#include <map>
#include <mutex>
#include <vector>

#include "ellhall/hall_algebra.hpp"

namespace ellhall {

enum class Flavor { TILDE, PLAIN };
std::string to_string(Flavor f);
Flavor parse_flavor(const std::string& s);

struct KostkaTable {
  ClassZ weight;
  Slope floor;
  Flavor flavor = Flavor::PLAIN;
  std::string config_hash;
  std::vector<ConvexPath> paths;
  /// entries[i][j]: coefficient of beta_{paths[j]} (TILDE) or rho_{paths[j]}
  /// (PLAIN) in b_{paths[i]}.
  std::vector<std::vector<Coefficient>> entries;
  /// Rows with a strictly smaller path starting just below the floor; their
  /// full expansion has terms the table cannot show.
  std::vector<bool> boundary;

  [[nodiscard]] const Coefficient& at(const ConvexPath& p, const ConvexPath& q) const;
  [[nodiscard]] std::ptrdiff_t index_of(const ConvexPath& p) const;
};

struct Sl2PairCheck {
  ConvexPath p, q, gp, gq;
  Coefficient value, image_value;
  bool passed = false;
};

struct Sl2Report {
  SL2Matrix gamma;
  ClassZ weight, image_weight;
  Slope floor, image_floor;
  std::vector<Sl2PairCheck> pairs;
  std::size_t skipped = 0;  // pairs leaving the positive cone
  [[nodiscard]] bool passed() const;
};

class CanonicalBasis {
 public:
  explicit CanonicalBasis(HallAlgebra& algebra, unsigned jobs = 1);

  [[nodiscard]] HallAlgebra& algebra() const { return h_; }

  /// Coefficients a_p with e = sum a_p 1_p modulo paths below e.floor.
  Terms one_path_expansion(const AlgebraElement& e);
  /// Antilinear involution fixing every 1_p; result in the basis of e.
  AlgebraElement bar_element(const AlgebraElement& e);

  /// b_p in the beta basis, exact at floor.
  AlgebraElement canonical_element(const ConvexPath& p, const Slope& floor);

  KostkaTable kostka_table(const ClassZ& alpha, const Slope& floor, Flavor flavor);

  /// Compares table entries (p, q) with (gamma p, gamma q).
  Sl2Report sl2_invariance_check(const SL2Matrix& gamma, const ClassZ& alpha, const Slope& floor,
                                 Flavor flavor = Flavor::PLAIN);

 private:
  // bar(beta_q) in the beta basis for every q of the window.
  const std::map<ConvexPath, Terms>& bar_of_beta(const ClassZ& alpha, const Slope& floor);
  const Terms& one_path_ss(const ConvexPath& p, const Slope& floor);

  HallAlgebra& h_;
  unsigned jobs_;
  std::mutex mu_;
  std::map<std::pair<ClassZ, Slope>, std::map<ConvexPath, Terms>> bar_beta_cache_;
  std::map<std::pair<ConvexPath, Slope>, Terms> one_path_ss_cache_;
};

/// Runs f(i) for i in [0, n) on up to jobs threads; rethrows the first error.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& f);

}  // namespace ellhall
