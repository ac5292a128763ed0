#pragma once

// Weight-graded elements of the completed positive elliptic Hall algebra,
// truncated at a floor slope, and the distinguished bases.
//
// An element of weight alpha at floor f stores every PBW coefficient of a
// path with first slope >= f; paths below the floor are unknown. Paths with
// first slope below f span a right ideal, so right multiplication by exact
// elements is exact at f. Left multiplication is not: the missing tail of the
// right factor can feed paths above f. mul() therefore raises the floor of
// the result when needed (see product_floor).

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "ellhall/relations.hpp"

namespace ellhall {

enum class Basis { TTILDE, ONE_SS, BETA, RHO };
std::string to_string(Basis b);
/// Accepts ttilde, oness, beta, rho (any case).
Basis parse_basis(const std::string& s);

class SingularTransition : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AlgebraElement {
  ClassZ weight;
  Slope floor;
  Basis basis = Basis::TTILDE;
  Terms terms;
  std::string config_hash;

  [[nodiscard]] bool is_zero() const { return terms.empty(); }
  [[nodiscard]] Coefficient coeff(const ConvexPath& p) const;
  bool operator==(const AlgebraElement&) const = default;
};

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator*(const Coefficient& c, const AlgebraElement& a);
/// Restricts to a floor at or above the current one.
AlgebraElement truncate(const AlgebraElement& e, const Slope& floor);

/// Floor at which a product is exact, given a left factor of weight w known
/// at floor fa and a right factor known at floor fb.
Slope product_floor(const ClassZ& w, const Slope& fa, const Slope& fb);
/// Lowest floor the right factor needs so that the product with a left factor
/// of weight w is exact at f.
Slope right_floor(const ClassZ& w, const Slope& f);

/// Expansion of one slope block in t~ (to_ttilde) or from t~ (from_ttilde).
/// Keys are block partitions.
const std::map<Partition, Coefficient>& block_to_ttilde(Basis b, const Partition& lambda);
const std::map<Partition, Coefficient>& block_from_ttilde(Basis b, const Partition& rho);

class HallAlgebra {
 public:
  explicit HallAlgebra(std::shared_ptr<RelationEngine> engine);

  [[nodiscard]] RelationEngine& engine() const { return *engine_; }
  [[nodiscard]] const std::string& config_hash() const { return engine_->config_hash(); }

  [[nodiscard]] AlgebraElement zero(const ClassZ& weight, const Slope& floor, Basis b = Basis::TTILDE) const;
  /// The basis vector of p in basis b (zero if p starts below the floor).
  [[nodiscard]] AlgebraElement basis_vector(Basis b, const ConvexPath& p, const Slope& floor) const;

  AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b);
  [[nodiscard]] AlgebraElement convert(const AlgebraElement& e, Basis target) const;

  [[nodiscard]] AlgebraElement one_ss_path(const ConvexPath& p, const Slope& floor) const;
  [[nodiscard]] AlgebraElement beta_path(const ConvexPath& p, const Slope& floor) const;
  [[nodiscard]] AlgebraElement rho_path(const ConvexPath& p, const Slope& floor) const;
  AlgebraElement one_alpha(const ClassZ& alpha, const Slope& floor);
  AlgebraElement one_path(const ConvexPath& p, const Slope& floor);

 private:
  std::shared_ptr<RelationEngine> engine_;
  std::mutex mu_;
  std::map<std::pair<ClassZ, Slope>, AlgebraElement> alpha_cache_;
  std::map<std::pair<ConvexPath, Slope>, AlgebraElement> path_cache_;
};

}  // namespace ellhall
