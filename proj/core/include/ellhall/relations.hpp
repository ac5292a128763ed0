#pragma once

// Structure constants of the positive elliptic Hall algebra in the rank-one
// commutator presentation, and straightening of words in the generators
// t~_x into the convex-path PBW basis.
//
// Conventions. Products are written left to right; a PBW monomial t~_p lists
// its segments by increasing slope. For slope(v) > slope(u) with one of u, v
// primitive and no lattice point strictly inside the triangle 0, u, u + v,
//
//   [t~_v, t~_u] = zeta_{deg u} zeta_{deg v} / zeta_1 * kappa^{-1} * theta_{u+v},
//
// where theta_{l w} (w primitive) is the s^l coefficient of
// exp(sum_r c_r t~_{r w} s^r). Every other commutator is derived from these
// by the Jacobi identity.

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "ellhall/coefficient.hpp"
#include "ellhall/lattice.hpp"

namespace ellhall {

class NotMinimalTriangle : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The configured constants are inconsistent: an inexact division, a
/// support-bound violation or a recursion that cannot be closed.
class ConfigIncoherent : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Terms = std::map<ConvexPath, Coefficient>;

void add_scaled(Terms& acc, const Terms& x, const Coefficient& c);
void add_term(Terms& acc, const ConvexPath& p, const Coefficient& c);
/// Drops every path whose first slope is below floor.
void truncate_terms(Terms& t, const Slope& floor);

struct RelationConfig {
  std::string version;
  Coefficient kappa;
  std::vector<Coefficient> theta_log;  // c_1, c_2, ...
  std::vector<Coefficient> ray_scale;  // zeta_1, zeta_2, ...

  static RelationConfig default_config();
  /// Hex digest of the canonical serialization.
  [[nodiscard]] std::string hash() const;
  [[nodiscard]] std::string canonical_text() const;
  /// Throws ConfigIncoherent on a non-symmetric or vanishing constant.
  void validate() const;

  [[nodiscard]] const Coefficient& c(std::int64_t r) const;
  [[nodiscard]] const Coefficient& zeta(std::int64_t l) const;
};

/// Identifies an element (r, d) ordered for use as a cache key.
struct LetterPair {
  ClassZ y, x;
  auto operator<=>(const LetterPair&) const = default;
};

class RelationEngine {
 public:
  explicit RelationEngine(RelationConfig cfg);

  [[nodiscard]] const RelationConfig& config() const { return cfg_; }
  [[nodiscard]] const std::string& config_hash() const { return hash_; }

  /// Degree-l coefficient of exp(sum_j c_j t~_{j delta} s^j).
  [[nodiscard]] Terms theta_element(const ClassZ& delta, int l) const;

  /// True when [t~_y, t~_x] is given directly by the base relation.
  [[nodiscard]] static bool is_base_pair(const ClassZ& y, const ClassZ& x);
  /// Base relation; throws NotMinimalTriangle outside its range.
  [[nodiscard]] Terms base_commutator(const ClassZ& y, const ClassZ& x) const;

  /// t~_y t~_x - t~_x t~_y, exact.
  Terms commutator(const ClassZ& y, const ClassZ& x);

  /// t~_p * t~_z modulo paths with first slope below floor.
  Terms mul_letter(const ConvexPath& p, const ClassZ& z, const Slope& floor);
  /// t~_p * t~_q modulo paths with first slope below floor.
  Terms multiply(const ConvexPath& p, const ConvexPath& q, const Slope& floor);
  /// Multiplies an expansion on the right by a word of letters.
  Terms times_word(const Terms& x, const std::vector<ClassZ>& word, const Slope& floor);
  Terms straighten(const std::vector<ClassZ>& word, const Slope& floor);
  Terms product(const Terms& a, const Terms& b, const Slope& floor);

  /// Every strategy that applies to the pair, evaluated independently.
  std::vector<Terms> commutator_all_routes(const ClassZ& y, const ClassZ& x);

  void clear_caches();

 private:
  enum class Route { Base, SplitHigh, SplitLow, ThetaHigh, ThetaLow };
  Terms commutator_uncached(const ClassZ& y, const ClassZ& x);
  Terms commutator_by(Route route, const ClassZ& y, const ClassZ& x, bool reducing_only);
  Terms bracket(const Terms& a, const Terms& b);
  Terms letter_terms(const ClassZ& x) const;
  Terms rest_of_theta(const ClassZ& v) const;

  RelationConfig cfg_;
  std::string hash_;

  mutable std::shared_mutex mu_;
  std::map<LetterPair, Terms> comm_cache_;
  std::map<std::tuple<ConvexPath, ClassZ, Slope>, Terms> letter_cache_;
};

/// Shared engine per configuration hash.
std::shared_ptr<RelationEngine> engine_for(const RelationConfig& cfg);

struct SelfTestResult {
  std::string name;
  bool passed = false;
  std::string detail;
};
/// Associativity, support bound, sigma symmetry and route agreement on small
/// classes.
std::vector<SelfTestResult> relation_selftest(RelationEngine& engine);

/// 64-bit FNV-1a digest as 16 hex digits.
std::string content_digest(const std::string& s);

/// min over prefixes w_1 + ... + w_j of the slope.
Slope min_prefix_slope(const std::vector<ClassZ>& word);

}  // namespace ellhall
