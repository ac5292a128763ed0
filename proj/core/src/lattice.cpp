#include "ellhall/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace ellhall {

std::string ClassZ::to_string() const {
  return "(" + std::to_string(rank) + "," + std::to_string(degree) + ")";
}

Slope::Slope(std::int64_t num, std::int64_t den) {
  if (den == 0) {
    if (num <= 0) throw LatticeError("slope with zero denominator needs positive numerator");
    kind_ = Kind::PosInf;
    return;
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Slope Slope::parse(const std::string& s) {
  if (s == "inf" || s == "+inf") return infinity();
  if (s == "-inf") return unbounded();
  try {
    std::size_t pos = 0;
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
      const long long n = std::stoll(s, &pos);
      if (pos != s.size()) throw LatticeError("bad slope: " + s);
      return integer(n);
    }
    const long long n = std::stoll(s.substr(0, slash), &pos);
    if (pos != slash) throw LatticeError("bad slope: " + s);
    const std::string dpart = s.substr(slash + 1);
    const long long d = std::stoll(dpart, &pos);
    if (pos != dpart.size() || d <= 0) throw LatticeError("bad slope: " + s);
    return {n, d};
  } catch (const std::logic_error&) {
    throw LatticeError("bad slope: " + s);
  }
}

std::string Slope::to_string() const {
  switch (kind_) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "inf";
    case Kind::Finite: break;
  }
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Slope& a, const Slope& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  if (!a.is_finite()) return std::strong_ordering::equal;
  const __int128 l = static_cast<__int128>(a.num_) * b.den_;
  const __int128 r = static_cast<__int128>(b.num_) * a.den_;
  return l <=> r;
}

Slope Slope::minus(const Slope& k) const {
  if (!is_finite()) return *this;
  if (!k.is_finite()) throw LatticeError("slope shift must be finite");
  return {num_ * k.den_ - k.num_ * den_, den_ * k.den_};
}

Slope slope(const ClassZ& x) {
  if (x.rank == 0) {
    if (x.degree <= 0) throw LatticeError("slope of a class outside the positive cone");
    return Slope::infinity();
  }
  return {x.degree, x.rank};
}

std::pair<std::int64_t, ClassZ> ray_decompose(const ClassZ& x) {
  const std::int64_t g = std::gcd(x.rank, x.degree);
  if (g == 0) throw LatticeError("ray of the zero class");
  return {g, ClassZ{x.rank / g, x.degree / g}};
}

std::int64_t class_deg(const ClassZ& x) { return ray_decompose(x).first; }
ClassZ primitive_of(const ClassZ& x) { return ray_decompose(x).second; }

std::int64_t interior_points(const ClassZ& x, const ClassZ& y) {
  const ClassZ s = x + y;
  const std::int64_t twice_area = std::llabs(det(x, y));
  if (twice_area == 0) return 0;
  const std::int64_t boundary = std::gcd(x.rank, x.degree) + std::gcd(y.rank, y.degree) +
                                std::gcd(s.rank, s.degree);
  return (twice_area - boundary + 2) / 2;
}

bool segment_precedes(const ClassZ& a, const ClassZ& b) {
  const auto c = slope(a) <=> slope(b);
  if (c != 0) return c < 0;
  return class_deg(a) > class_deg(b);
}

bool is_canonical_order(const std::vector<ClassZ>& segments) {
  for (std::size_t i = 1; i < segments.size(); ++i) {
    if (segment_precedes(segments[i], segments[i - 1])) return false;
  }
  return true;
}

ConvexPath ConvexPath::from_segments(std::vector<ClassZ> segments) {
  if (segments.empty()) throw LatticeError("a convex path needs at least one segment");
  for (const auto& s : segments) {
    if (!s.in_positive_cone()) throw LatticeError("segment " + s.to_string() + " not in positive cone");
  }
  std::stable_sort(segments.begin(), segments.end(), segment_precedes);
  ConvexPath p;
  p.segments_ = std::move(segments);
  return p;
}

ClassZ ConvexPath::weight() const {
  ClassZ w;
  for (const auto& s : segments_) w = w + s;
  return w;
}

Slope ConvexPath::first_slope() const {
  if (segments_.empty()) return Slope::infinity();
  return slope(segments_.front());
}

std::string ConvexPath::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (i) s += ",";
    s += segments_[i].to_string();
  }
  return s + ")";
}

std::int64_t deg_at_slope(const ConvexPath& p, const Slope& mu) {
  std::int64_t n = 0;
  for (const auto& s : p.segments()) {
    if (slope(s) == mu) n += class_deg(s);
  }
  return n;
}

std::int64_t deg_above(const ConvexPath& p, const Slope& mu) {
  std::int64_t n = 0;
  for (const auto& s : p.segments()) {
    if (slope(s) > mu) n += class_deg(s);
  }
  return n;
}

std::int64_t deg_at_least(const ConvexPath& p, const Slope& mu) {
  return deg_above(p, mu) + deg_at_slope(p, mu);
}

std::string to_string(Order o) {
  switch (o) {
    case Order::Less: return "LESS";
    case Order::Greater: return "GREATER";
    case Order::Equivalent: return "EQUIVALENT";
    case Order::Equal: return "EQUAL";
    case Order::Incomparable: return "INCOMPARABLE";
  }
  return "?";
}

namespace {

// slope -> total ray multiple, highest slope first.
std::map<Slope, std::int64_t, std::greater<>> deg_profile(const ConvexPath& p) {
  std::map<Slope, std::int64_t, std::greater<>> m;
  for (const auto& s : p.segments()) m[slope(s)] += class_deg(s);
  return m;
}

// slope -> multiset of ray multiples (descending), highest slope first.
std::map<Slope, Partition, std::greater<>> block_partitions(const ConvexPath& p) {
  std::map<Slope, Partition, std::greater<>> m;
  for (const auto& s : p.segments()) m[slope(s)].push_back(static_cast<int>(class_deg(s)));
  for (auto& [k, v] : m) std::sort(v.begin(), v.end(), std::greater<>());
  return m;
}

}  // namespace

Order path_cmp(const ConvexPath& p, const ConvexPath& q) {
  if (p.weight() != q.weight()) throw LatticeError("path_cmp needs equal weights");
  if (p == q) return Order::Equal;
  const auto dp = deg_profile(p);
  const auto dq = deg_profile(q);
  std::set<Slope, std::greater<>> slopes;
  for (const auto& [k, v] : dp) slopes.insert(k);
  for (const auto& [k, v] : dq) slopes.insert(k);
  for (const auto& mu : slopes) {
    const auto ip = dp.find(mu);
    const auto iq = dq.find(mu);
    const std::int64_t a = ip == dp.end() ? 0 : ip->second;
    const std::int64_t b = iq == dq.end() ? 0 : iq->second;
    if (a != b) return a > b ? Order::Less : Order::Greater;
  }
  return Order::Equivalent;
}

HNType hn_of_path(const ConvexPath& p) {
  HNType h;
  for (const auto& s : p.segments()) {
    if (!h.empty() && slope(h.back()) == slope(s)) {
      h.back() = h.back() + s;
    } else {
      h.push_back(s);
    }
  }
  return h;
}

Order hn_cmp(const HNType& h1, const HNType& h2) {
  ClassZ w1, w2;
  for (const auto& b : h1) w1 = w1 + b;
  for (const auto& b : h2) w2 = w2 + b;
  if (w1 != w2) throw LatticeError("hn_cmp needs equal weights");
  auto i = h1.rbegin();
  auto j = h2.rbegin();
  for (; i != h1.rend() && j != h2.rend(); ++i, ++j) {
    if (*i == *j) continue;
    const auto c = slope(*i) <=> slope(*j);
    if (c != 0) return c > 0 ? Order::Less : Order::Greater;
    return class_deg(*i) > class_deg(*j) ? Order::Less : Order::Greater;
  }
  // Equal weights force both to run out together.
  return Order::Equal;
}

bool linear_before(const ConvexPath& p, const ConvexPath& q) {
  if (p.weight() != q.weight()) return p.weight() < q.weight();
  const Order o = path_cmp(p, q);
  if (o == Order::Less) return true;
  if (o != Order::Equivalent) return false;
  const auto bp = block_partitions(p);
  const auto bq = block_partitions(q);
  for (auto ip = bp.begin(), iq = bq.begin(); ip != bp.end(); ++ip, ++iq) {
    if (ip->second != iq->second) return ip->second < iq->second;
  }
  return false;
}

namespace {

std::int64_t ceil_mul(const Slope& f, std::int64_t r) {
  // ceil(f * r) for finite f, r >= 0
  const __int128 n = static_cast<__int128>(f.num()) * r;
  const std::int64_t d = f.den();
  __int128 q = n / d;
  if (n % d != 0 && n > 0) ++q;
  return static_cast<std::int64_t>(q);
}

void enum_hn(const ClassZ& rest, const Slope& lower, bool strict, HNType& cur,
             std::vector<HNType>& out) {
  if (rest == ClassZ{}) {
    out.push_back(cur);
    return;
  }
  if (!rest.in_positive_cone()) return;
  auto admissible = [&](const Slope& s) { return strict ? s > lower : s >= lower; };
  if (rest.rank == 0) {
    if (admissible(Slope::infinity())) {
      cur.push_back(rest);
      out.push_back(cur);
      cur.pop_back();
    }
    return;
  }
  // First block (r, d), 1 <= r <= R. Remaining blocks have slope > d/r, so
  // their degrees are bounded below by the ranks they carry.
  if (lower.is_infinite()) return;
  if (lower.is_unbounded()) throw LatticeError("path enumeration needs a finite floor");
  for (std::int64_t r = 1; r <= rest.rank; ++r) {
    const std::int64_t dmin = ceil_mul(lower, r);
    std::int64_t dmax = rest.degree;
    if (r < rest.rank) {
      // d/r must stay below the slope of what is left: d R < r D.
      const __int128 num = static_cast<__int128>(r) * rest.degree;
      __int128 q = num / rest.rank;
      if (num % rest.rank != 0 && num < 0) q -= 1;
      if (num % rest.rank == 0) q -= 1;
      dmax = static_cast<std::int64_t>(q);
    }
    for (std::int64_t d = dmin; d <= dmax; ++d) {
      const ClassZ b{r, d};
      const Slope s = slope(b);
      if (!admissible(s)) continue;
      cur.push_back(b);
      enum_hn(rest - b, s, true, cur, out);
      cur.pop_back();
    }
  }
}

void partitions_into(int n, int maxpart, Partition& cur, std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, maxpart); k >= 1; --k) {
    cur.push_back(k);
    partitions_into(n - k, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<HNType> enumerate_hn_types(const ClassZ& alpha, const Slope& floor) {
  if (!alpha.in_positive_cone()) throw LatticeError("weight " + alpha.to_string() + " not in positive cone");
  if (floor.is_unbounded() && alpha.rank > 0) {
    throw LatticeError("the set of paths is infinite without a floor");
  }
  std::vector<HNType> hns;
  HNType cur;
  enum_hn(alpha, floor, false, cur, hns);
  return hns;
}

std::vector<ConvexPath> enumerate_paths(const ClassZ& alpha, const Slope& floor) {
  const std::vector<HNType> hns = enumerate_hn_types(alpha, floor);

  std::vector<ConvexPath> out;
  for (const auto& h : hns) {
    // Expand each block into partitions of its ray multiple.
    std::vector<std::vector<Partition>> choices;
    for (const auto& b : h) {
      std::vector<Partition> ps;
      Partition c;
      const auto n = static_cast<int>(class_deg(b));
      partitions_into(n, n, c, ps);
      choices.push_back(std::move(ps));
    }
    std::vector<std::size_t> idx(h.size(), 0);
    while (true) {
      std::vector<ClassZ> segs;
      for (std::size_t i = 0; i < h.size(); ++i) {
        const ClassZ delta = primitive_of(h[i]);
        for (int part : choices[i][idx[i]]) segs.push_back(delta * part);
      }
      out.push_back(ConvexPath::from_segments(std::move(segs)));
      std::size_t i = 0;
      while (i < idx.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
      if (i == idx.size()) break;
    }
  }
  std::sort(out.begin(), out.end(), linear_before);
  return out;
}

std::vector<OmegaBlock> omega_index(const ConvexPath& p) {
  std::vector<OmegaBlock> blocks;
  for (const auto& s : p.segments()) {
    const auto [l, delta] = ray_decompose(s);
    if (blocks.empty() || blocks.back().direction != delta) blocks.push_back({delta, {}});
    blocks.back().partition.push_back(static_cast<int>(l));
  }
  return blocks;
}

ConvexPath omega_inverse(const std::vector<OmegaBlock>& blocks) {
  std::vector<ClassZ> segs;
  for (const auto& b : blocks) {
    if (class_deg(b.direction) != 1) throw LatticeError("omega direction must be primitive");
    for (int part : b.partition) {
      if (part <= 0) throw LatticeError("partition parts must be positive");
      segs.push_back(b.direction * part);
    }
  }
  return ConvexPath::from_segments(std::move(segs));
}

SL2Matrix::SL2Matrix(std::int64_t a_, std::int64_t b_, std::int64_t c_, std::int64_t d_)
    : a(a_), b(b_), c(c_), d(d_) {
  if (a * d - b * c != 1) throw LatticeError("matrix is not in SL(2,Z)");
}

SL2Matrix SL2Matrix::operator*(const SL2Matrix& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

ConvexPath sl2_apply(const SL2Matrix& g, const ConvexPath& p) {
  std::vector<ClassZ> segs;
  segs.reserve(p.length());
  for (const auto& s : p.segments()) {
    const ClassZ t = g.apply(s);
    if (!t.in_positive_cone()) throw OutOfCone("image " + t.to_string() + " leaves the positive cone");
    segs.push_back(t);
  }
  return ConvexPath::from_segments(std::move(segs));
}

}  // namespace ellhall
