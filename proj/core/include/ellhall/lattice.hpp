#pragma once

// Classes (rank, degree), slopes, convex paths and the weak order on them.

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ellhall {

class LatticeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an SL(2,Z) image leaves the positive cone.
class OutOfCone : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

using Partition = std::vector<int>;

struct ClassZ {
  std::int64_t rank = 0;
  std::int64_t degree = 0;

  auto operator<=>(const ClassZ&) const = default;
  ClassZ operator+(const ClassZ& o) const { return {rank + o.rank, degree + o.degree}; }
  ClassZ operator-(const ClassZ& o) const { return {rank - o.rank, degree - o.degree}; }
  ClassZ operator*(std::int64_t k) const { return {rank * k, degree * k}; }

  /// rank > 0, or rank = 0 and degree > 0.
  [[nodiscard]] bool in_positive_cone() const { return rank > 0 || (rank == 0 && degree > 0); }
  [[nodiscard]] std::string to_string() const;
};

/// det(x, y) = x.rank * y.degree - x.degree * y.rank.
inline std::int64_t det(const ClassZ& x, const ClassZ& y) {
  return x.rank * y.degree - x.degree * y.rank;
}

/// Euler form of a genus-one curve: <x, y> = r_x d_y - d_x r_y.
inline std::int64_t euler_form(const ClassZ& x, const ClassZ& y) { return det(x, y); }

/// An exact element of Q u {+inf}; NegInf marks an absent lower bound.
class Slope {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  constexpr Slope() = default;
  Slope(std::int64_t num, std::int64_t den);
  static Slope integer(std::int64_t n) { return {n, 1}; }
  static constexpr Slope infinity() { return Slope(Kind::PosInf); }
  static constexpr Slope unbounded() { return Slope(Kind::NegInf); }
  /// Parses "d/r", an integer, "inf" or "-inf".
  static Slope parse(const std::string& s);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] bool is_finite() const { return kind_ == Kind::Finite; }
  [[nodiscard]] bool is_infinite() const { return kind_ == Kind::PosInf; }
  [[nodiscard]] bool is_unbounded() const { return kind_ == Kind::NegInf; }
  [[nodiscard]] std::int64_t num() const { return num_; }
  [[nodiscard]] std::int64_t den() const { return den_; }
  [[nodiscard]] std::string to_string() const;

  friend std::strong_ordering operator<=>(const Slope& a, const Slope& b);
  friend bool operator==(const Slope& a, const Slope& b) { return (a <=> b) == 0; }

  /// this - k, for finite slopes.
  [[nodiscard]] Slope minus(const Slope& k) const;

 private:
  constexpr explicit Slope(Kind k) : kind_(k) {}
  Kind kind_ = Kind::Finite;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

Slope slope(const ClassZ& x);

/// (l, delta) with x = l * delta, delta primitive.
std::pair<std::int64_t, ClassZ> ray_decompose(const ClassZ& x);
/// The ray multiple l of x.
std::int64_t class_deg(const ClassZ& x);
ClassZ primitive_of(const ClassZ& x);

/// Number of lattice points strictly inside the triangle 0, x, x + y.
std::int64_t interior_points(const ClassZ& x, const ClassZ& y);

/// A canonical-form convex path: slopes weakly increase, and within one slope
/// the ray multiples weakly decrease.
class ConvexPath {
 public:
  ConvexPath() = default;
  /// Sorts into canonical form; throws LatticeError on an empty input or a
  /// segment outside the positive cone.
  static ConvexPath from_segments(std::vector<ClassZ> segments);

  [[nodiscard]] const std::vector<ClassZ>& segments() const { return segments_; }
  [[nodiscard]] std::size_t length() const { return segments_.size(); }
  [[nodiscard]] bool empty() const { return segments_.empty(); }
  [[nodiscard]] ClassZ weight() const;
  [[nodiscard]] Slope first_slope() const;
  [[nodiscard]] std::string to_string() const;

  auto operator<=>(const ConvexPath&) const = default;

 private:
  std::vector<ClassZ> segments_;
};

inline ConvexPath canonical_path(std::vector<ClassZ> segments) {
  return ConvexPath::from_segments(std::move(segments));
}

/// True when the segments, in the given order, already form a canonical path.
bool is_canonical_order(const std::vector<ClassZ>& segments);
bool segment_precedes(const ClassZ& a, const ClassZ& b);

std::int64_t deg_at_slope(const ConvexPath& p, const Slope& mu);
std::int64_t deg_above(const ConvexPath& p, const Slope& mu);
std::int64_t deg_at_least(const ConvexPath& p, const Slope& mu);

enum class Order { Less, Greater, Equivalent, Equal, Incomparable };
std::string to_string(Order o);

/// The weak order on paths of equal weight.
Order path_cmp(const ConvexPath& p, const ConvexPath& q);
inline bool strictly_below(const ConvexPath& p, const ConvexPath& q) {
  return path_cmp(p, q) == Order::Less;
}

using HNType = std::vector<ClassZ>;
HNType hn_of_path(const ConvexPath& p);
/// Order on HN types: compare blocks from the top; at the first divergence
/// the higher slope is smaller, and for equal slopes the larger ray multiple
/// is smaller.
Order hn_cmp(const HNType& h1, const HNType& h2);

/// Total order refining the weak order: strictly smaller paths come first,
/// ties within an equivalence class are broken slope by slope from the top
/// by lexicographic comparison of the block partitions.
bool linear_before(const ConvexPath& p, const ConvexPath& q);

/// All HN types of weight alpha whose first block has slope >= floor.
std::vector<HNType> enumerate_hn_types(const ClassZ& alpha, const Slope& floor);

/// All canonical convex paths of weight alpha whose first slope is >= floor,
/// sorted by linear_before.
std::vector<ConvexPath> enumerate_paths(const ClassZ& alpha, const Slope& floor);

struct OmegaBlock {
  ClassZ direction;
  Partition partition;
  auto operator<=>(const OmegaBlock&) const = default;
};
std::vector<OmegaBlock> omega_index(const ConvexPath& p);
ConvexPath omega_inverse(const std::vector<OmegaBlock>& blocks);

struct SL2Matrix {
  std::int64_t a = 1, b = 0, c = 0, d = 1;
  SL2Matrix() = default;
  SL2Matrix(std::int64_t a_, std::int64_t b_, std::int64_t c_, std::int64_t d_);
  [[nodiscard]] ClassZ apply(const ClassZ& x) const {
    return {a * x.rank + b * x.degree, c * x.rank + d * x.degree};
  }
  SL2Matrix operator*(const SL2Matrix& o) const;
};

ConvexPath sl2_apply(const SL2Matrix& g, const ConvexPath& p);

}  // namespace ellhall
