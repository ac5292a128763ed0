#include "ellhall/relations.hpp"

#include <cstdio>
#include <sstream>
#include <tuple>

#include "ellhall/symfunc.hpp"

namespace ellhall {

namespace {

// Raised inside the commutator recursion when a route runs into a pair that
// is already being computed, or no route applies.
struct Unresolved {
  LetterPair pair;
};

thread_local std::set<LetterPair> in_progress;

Coefficient div_exact(const Coefficient& a, const Coefficient& d, const char* what) {
  try {
    return a.exact_div(d);
  } catch (const CoefficientError&) {
    throw ConfigIncoherent(std::string("inexact division by ") + what + ": " + a.to_nt_string() + " / " +
                           d.to_nt_string());
  }
}

Terms div_terms(const Terms& t, const Coefficient& d, const char* what) {
  Terms r;
  for (const auto& [p, c] : t) r.emplace(p, div_exact(c, d, what));
  return r;
}

Terms scaled(const Terms& t, const Coefficient& c) {
  Terms r;
  add_scaled(r, t, c);
  return r;
}

Terms sum(const Terms& a, const Terms& b, long sign_b = 1) {
  Terms r = a;
  add_scaled(r, b, Coefficient(sign_b));
  return r;
}

bool collinear(const ClassZ& a, const ClassZ& b) { return det(a, b) == 0; }

// Splits x = x1 + x2 with det(x1, x2) = 1 and both parts in the positive cone;
// x1 has the lower slope.
std::vector<std::pair<ClassZ, ClassZ>> unimodular_splits(const ClassZ& x) {
  std::vector<std::pair<ClassZ, ClassZ>> out;
  if (x.rank <= 0) return out;
  for (std::int64_t r = 0; r <= x.rank; ++r) {
    const std::int64_t num = r * x.degree - 1;
    if (num % x.rank != 0) continue;
    const ClassZ a{r, num / x.rank};
    const ClassZ b = x - a;
    if (a.in_positive_cone() && b.in_positive_cone()) out.emplace_back(a, b);
  }
  return out;
}

// Primitive w with det(w, v0) = 1 such that w and v - w lie in the cone.
std::vector<ClassZ> theta_partners(const ClassZ& v) {
  const auto [n, v0] = ray_decompose(v);
  std::vector<ClassZ> out;
  if (v0.rank <= 0) return out;
  for (std::int64_t r = 0; r <= v.rank; ++r) {
    const std::int64_t num = r * v0.degree - 1;
    if (num % v0.rank != 0) continue;
    const ClassZ w{r, num / v0.rank};
    if (w.in_positive_cone() && (v - w).in_positive_cone()) out.push_back(w);
  }
  return out;
}

}  // namespace

std::string content_digest(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::string coefficient_text(const Coefficient& c) {
  std::ostringstream os;
  os << "[";
  for (const auto& [e, q] : c.terms()) os << "(" << e.a2 << "," << e.b2 << "):" << q.get_str() << ";";
  os << "]";
  return os.str();
}

}  // namespace

void add_term(Terms& acc, const ConvexPath& p, const Coefficient& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = acc.try_emplace(p, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

void add_scaled(Terms& acc, const Terms& x, const Coefficient& c) {
  if (c.is_zero()) return;
  for (const auto& [p, v] : x) add_term(acc, p, c.is_one() ? v : v * c);
}

void truncate_terms(Terms& t, const Slope& floor) {
  if (floor.is_unbounded()) return;
  for (auto it = t.begin(); it != t.end();) {
    if (!it->first.empty() && it->first.first_slope() < floor) {
      it = t.erase(it);
    } else {
      ++it;
    }
  }
}

Slope min_prefix_slope(const std::vector<ClassZ>& word) {
  Slope m = Slope::infinity();
  ClassZ s;
  for (const auto& w : word) {
    s = s + w;
    const Slope k = slope(s);
    if (k < m) m = k;
  }
  return m;
}

RelationConfig RelationConfig::default_config() {
  RelationConfig cfg;
  cfg.version = "ellhall-default-1";
  const Coefficient nu = Coefficient::nu();
  cfg.kappa = Coefficient::nu_power(-1) - nu;
  const Coefficient one(1L);
  for (int r = 1; r <= 16; ++r) {
    cfg.theta_log.push_back(Coefficient::nu_power(-r) - Coefficient::nu_power(r));
    const Coefficient s = pow(Coefficient::sigma(), static_cast<unsigned>(r));
    const Coefficient sb = pow(Coefficient::sigmabar(), static_cast<unsigned>(r));
    cfg.ray_scale.push_back(Coefficient::nu_power(r) * (one - s) * (one - sb) * Coefficient(Rational(1, r)));
  }
  return cfg;
}

std::string RelationConfig::canonical_text() const {
  std::ostringstream os;
  os << "version=" << version << "\n";
  os << "kappa=" << coefficient_text(kappa) << "\n";
  for (std::size_t i = 0; i < theta_log.size(); ++i) os << "c" << i + 1 << "=" << coefficient_text(theta_log[i]) << "\n";
  for (std::size_t i = 0; i < ray_scale.size(); ++i) os << "z" << i + 1 << "=" << coefficient_text(ray_scale[i]) << "\n";
  return os.str();
}

std::string RelationConfig::hash() const { return content_digest(canonical_text()); }

void RelationConfig::validate() const {
  auto check = [](const Coefficient& c, const std::string& name) {
    if (c.is_zero()) throw ConfigIncoherent(name + " vanishes");
    if (!c.is_sigma_symmetric()) throw ConfigIncoherent(name + " is not symmetric in sigma, sigmabar");
  };
  check(kappa, "kappa");
  if (theta_log.empty() || ray_scale.empty()) throw ConfigIncoherent("theta_log and ray_scale must be nonempty");
  for (std::size_t i = 0; i < theta_log.size(); ++i) check(theta_log[i], "c" + std::to_string(i + 1));
  for (std::size_t i = 0; i < ray_scale.size(); ++i) check(ray_scale[i], "zeta" + std::to_string(i + 1));
}

const Coefficient& RelationConfig::c(std::int64_t r) const {
  if (r < 1 || static_cast<std::size_t>(r) > theta_log.size()) {
    throw ConfigIncoherent("theta_log has no entry " + std::to_string(r));
  }
  return theta_log[static_cast<std::size_t>(r - 1)];
}

const Coefficient& RelationConfig::zeta(std::int64_t l) const {
  if (l < 1 || static_cast<std::size_t>(l) > ray_scale.size()) {
    throw ConfigIncoherent("ray_scale has no entry " + std::to_string(l));
  }
  return ray_scale[static_cast<std::size_t>(l - 1)];
}

RelationEngine::RelationEngine(RelationConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  hash_ = cfg_.hash();
}

void RelationEngine::clear_caches() {
  std::unique_lock lock(mu_);
  comm_cache_.clear();
  letter_cache_.clear();
}

Terms RelationEngine::letter_terms(const ClassZ& x) const { return {{ConvexPath::from_segments({x}), Coefficient(1L)}}; }

Terms RelationEngine::theta_element(const ClassZ& delta, int l) const {
  if (class_deg(delta) != 1) throw LatticeError("theta_element needs a primitive direction");
  if (l < 1) throw LatticeError("theta_element needs l >= 1");
  RayPolynomial x;
  for (int j = 1; j <= l; ++j) x += RayPolynomial::generator(j) * cfg_.c(j);
  // Only the degree-l part of exp(x) is needed.
  RayPolynomial power = RayPolynomial::constant(Coefficient(1L));
  RayPolynomial total;
  Rational fact = 1;
  for (int k = 1; k <= l; ++k) {
    power = (power * x).truncate(l);
    fact *= k;
    total += power * Coefficient(Rational(1) / fact);
  }
  Terms out;
  for (const auto& [m, c] : total.terms()) {
    if (partition_size(m) != l) continue;
    std::vector<ClassZ> segs;
    for (int j : m) segs.push_back(delta * j);
    add_term(out, ConvexPath::from_segments(std::move(segs)), c);
  }
  return out;
}

Terms RelationEngine::rest_of_theta(const ClassZ& v) const {
  const auto [n, v0] = ray_decompose(v);
  Terms t = theta_element(v0, static_cast<int>(n));
  t.erase(ConvexPath::from_segments({v}));
  return t;
}

bool RelationEngine::is_base_pair(const ClassZ& y, const ClassZ& x) {
  if (!x.in_positive_cone() || !y.in_positive_cone() || collinear(x, y)) return false;
  const bool y_high = slope(y) > slope(x);
  const ClassZ& u = y_high ? x : y;
  const ClassZ& v = y_high ? y : x;
  if (class_deg(u) != 1 && class_deg(v) != 1) return false;
  return interior_points(u, v) == 0;
}

Terms RelationEngine::base_commutator(const ClassZ& y, const ClassZ& x) const {
  if (!is_base_pair(y, x)) {
    throw NotMinimalTriangle("no base relation for " + y.to_string() + ", " + x.to_string());
  }
  if (slope(y) < slope(x)) return scaled(base_commutator(x, y), Coefficient(-1L));
  const ClassZ& u = x;
  const ClassZ& v = y;
  const Coefficient scale =
      div_exact(cfg_.zeta(class_deg(u)) * cfg_.zeta(class_deg(v)), cfg_.zeta(1), "zeta_1");
  const auto [n, w] = ray_decompose(u + v);
  Terms t = theta_element(w, static_cast<int>(n));
  Terms out;
  for (const auto& [p, c] : t) add_term(out, p, div_exact(c * scale, cfg_.kappa, "kappa"));
  return out;
}

Terms RelationEngine::commutator(const ClassZ& y, const ClassZ& x) {
  if (!x.in_positive_cone() || !y.in_positive_cone()) {
    throw LatticeError("commutator of classes outside the positive cone");
  }
  if (collinear(x, y)) return {};
  if (slope(y) < slope(x)) return scaled(commutator(x, y), Coefficient(-1L));
  const LetterPair key{y, x};
  {
    std::shared_lock lock(mu_);
    if (auto it = comm_cache_.find(key); it != comm_cache_.end()) return it->second;
  }
  if (in_progress.count(key)) throw Unresolved{key};
  const bool outermost = in_progress.empty();
  in_progress.insert(key);
  Terms result;
  try {
    result = commutator_uncached(y, x);
  } catch (const Unresolved&) {
    in_progress.erase(key);
    if (outermost) {
      throw ConfigIncoherent("commutator recursion does not close for " + y.to_string() + ", " + x.to_string());
    }
    throw;
  } catch (...) {
    in_progress.erase(key);
    throw;
  }
  in_progress.erase(key);
  std::unique_lock lock(mu_);
  comm_cache_.emplace(key, result);
  return result;
}

Terms RelationEngine::commutator_uncached(const ClassZ& v, const ClassZ& u) {
  if (is_base_pair(v, u)) return base_commutator(v, u);
  for (bool reducing : {true, false}) {
    for (Route r : {Route::SplitHigh, Route::SplitLow, Route::ThetaHigh, Route::ThetaLow}) {
      try {
        return commutator_by(r, v, u, reducing);
      } catch (const Unresolved&) {
        // try the next route
      }
    }
  }
  throw Unresolved{{v, u}};
}

std::vector<Terms> RelationEngine::commutator_all_routes(const ClassZ& y, const ClassZ& x) {
  std::vector<Terms> out;
  if (collinear(x, y)) return out;
  const bool flip = slope(y) < slope(x);
  const ClassZ& v = flip ? x : y;
  const ClassZ& u = flip ? y : x;
  const Coefficient sign(flip ? -1L : 1L);
  if (is_base_pair(v, u)) out.push_back(scaled(base_commutator(v, u), sign));
  for (Route r : {Route::SplitHigh, Route::SplitLow, Route::ThetaHigh, Route::ThetaLow}) {
    try {
      out.push_back(scaled(commutator_by(r, v, u, false), sign));
    } catch (const Unresolved&) {
    }
  }
  return out;
}

Terms RelationEngine::bracket(const Terms& a, const Terms& b) {
  const Slope all = Slope::unbounded();
  return sum(product(a, b, all), product(b, a, all), -1);
}

// One rewriting route for [t~_v, t~_u], slope(v) > slope(u). Throws
// Unresolved when the route does not apply.
Terms RelationEngine::commutator_by(Route route, const ClassZ& v, const ClassZ& u, bool reducing_only) {
  const Coefficient& z1 = cfg_.zeta(1);
  switch (route) {
    case Route::Base:
      if (!is_base_pair(v, u)) throw Unresolved{{v, u}};
      return base_commutator(v, u);

    case Route::SplitHigh: {
      if (class_deg(v) != 1) break;
      for (const auto& [v1, v2] : unimodular_splits(v)) {
        if (reducing_only && (det(u, v1) <= 0 || det(u, v2) <= 0)) continue;
        try {
          // t~_v = zeta_1^{-1} [t~_{v2}, t~_{v1}]
          const Terms a = bracket(letter_terms(v2), commutator(v1, u));
          const Terms b = bracket(letter_terms(v1), commutator(v2, u));
          return div_terms(sum(a, b, -1), z1, "zeta_1");
        } catch (const Unresolved&) {
        }
      }
      break;
    }

    case Route::SplitLow: {
      if (class_deg(u) != 1) break;
      for (const auto& [u1, u2] : unimodular_splits(u)) {
        if (reducing_only && (det(u1, v) <= 0 || det(u2, v) <= 0)) continue;
        try {
          // [t~_v, [t~_{u2}, t~_{u1}]] = [[t~_v, t~_{u2}], t~_{u1}] + [t~_{u2}, [t~_v, t~_{u1}]]
          const Terms a = bracket(commutator(v, u2), letter_terms(u1));
          const Terms b = bracket(letter_terms(u2), commutator(v, u1));
          return div_terms(sum(a, b), z1, "zeta_1");
        } catch (const Unresolved&) {
        }
      }
      break;
    }

    case Route::ThetaHigh: {
      const std::int64_t n = class_deg(v);
      if (n < 2) break;
      for (const ClassZ& w : theta_partners(v)) {
        const ClassZ y = v - w;
        if (reducing_only && (det(u, w) <= 0 || det(u, y) <= 0)) continue;
        try {
          // theta_v = kappa zeta_1^{-1} [t~_y, t~_w];  t~_v = c_n^{-1} (theta_v - rest)
          const Terms a = bracket(letter_terms(y), commutator(w, u));
          const Terms b = bracket(letter_terms(w), commutator(y, u));
          const Terms jac = scaled(div_terms(sum(a, b, -1), z1, "zeta_1"), cfg_.kappa);
          const Terms rest = bracket(rest_of_theta(v), letter_terms(u));
          return div_terms(sum(jac, rest, -1), cfg_.c(n), "c_n");
        } catch (const Unresolved&) {
        }
      }
      break;
    }

    case Route::ThetaLow: {
      const std::int64_t m = class_deg(u);
      if (m < 2) break;
      for (const ClassZ& w : theta_partners(u)) {
        const ClassZ y = u - w;
        if (reducing_only && (det(w, v) <= 0 || det(y, v) <= 0)) continue;
        try {
          // [t~_v, [t~_y, t~_w]] = [[t~_v, t~_y], t~_w] + [t~_y, [t~_v, t~_w]]
          const Terms a = bracket(commutator(v, y), letter_terms(w));
          const Terms b = bracket(letter_terms(y), commutator(v, w));
          const Terms jac = scaled(div_terms(sum(a, b), z1, "zeta_1"), cfg_.kappa);
          const Terms rest = bracket(letter_terms(v), rest_of_theta(u));
          return div_terms(sum(jac, rest, -1), cfg_.c(m), "c_m");
        } catch (const Unresolved&) {
        }
      }
      break;
    }
  }
  throw Unresolved{{v, u}};
}

Terms RelationEngine::mul_letter(const ConvexPath& p, const ClassZ& z, const Slope& floor) {
  if (!z.in_positive_cone()) throw LatticeError("letter " + z.to_string() + " not in positive cone");
  if (p.empty()) {
    Terms t = letter_terms(z);
    truncate_terms(t, floor);
    return t;
  }
  const ClassZ last = p.segments().back();
  if (slope(last) <= slope(z)) {
    std::vector<ClassZ> segs = p.segments();
    segs.push_back(z);
    Terms t{{ConvexPath::from_segments(std::move(segs)), Coefficient(1L)}};
    truncate_terms(t, floor);
    return t;
  }
  // Every output path starts at or below the slope of wt(p) + z.
  if (!floor.is_unbounded() && slope(p.weight() + z) < floor) return {};

  const auto key = std::make_tuple(p, z, floor);
  {
    std::shared_lock lock(mu_);
    if (auto it = letter_cache_.find(key); it != letter_cache_.end()) return it->second;
  }
  std::vector<ClassZ> head(p.segments().begin(), p.segments().end() - 1);
  const ConvexPath rest = head.empty() ? ConvexPath() : ConvexPath::from_segments(head);

  // p z = (rest z) last + rest [last, z]
  Terms out;
  for (const auto& [q, c] : mul_letter(rest, z, floor)) add_scaled(out, mul_letter(q, last, floor), c);
  const Terms comm = commutator(last, z);
  const Terms base{{rest, Coefficient(1L)}};
  for (const auto& [q, c] : comm) add_scaled(out, times_word(base, q.segments(), floor), c);
  truncate_terms(out, floor);

  std::unique_lock lock(mu_);
  letter_cache_.emplace(key, out);
  return out;
}

Terms RelationEngine::times_word(const Terms& x, const std::vector<ClassZ>& word, const Slope& floor) {
  Terms cur = x;
  for (const auto& z : word) {
    Terms next;
    for (const auto& [q, c] : cur) add_scaled(next, mul_letter(q, z, floor), c);
    cur = std::move(next);
  }
  return cur;
}

Terms RelationEngine::multiply(const ConvexPath& p, const ConvexPath& q, const Slope& floor) {
  Terms start{{p, Coefficient(1L)}};
  truncate_terms(start, floor);
  return times_word(start, q.segments(), floor);
}

Terms RelationEngine::straighten(const std::vector<ClassZ>& word, const Slope& floor) {
  return times_word({{ConvexPath(), Coefficient(1L)}}, word, floor);
}

Terms RelationEngine::product(const Terms& a, const Terms& b, const Slope& floor) {
  Terms out;
  for (const auto& [p, cp] : a) {
    if (!floor.is_unbounded() && !p.empty() && p.first_slope() < floor) continue;
    for (const auto& [q, cq] : b) add_scaled(out, multiply(p, q, floor), cp * cq);
  }
  return out;
}

std::shared_ptr<RelationEngine> engine_for(const RelationConfig& cfg) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<RelationEngine>> engines;
  const std::string h = cfg.hash();
  std::lock_guard lock(mu);
  auto it = engines.find(h);
  if (it == engines.end()) it = engines.emplace(h, std::make_shared<RelationEngine>(cfg)).first;
  return it->second;
}


namespace {

std::vector<ClassZ> small_classes(std::int64_t max_rank, std::int64_t dmin, std::int64_t dmax) {
  std::vector<ClassZ> out;
  for (std::int64_t r = 0; r <= max_rank; ++r) {
    for (std::int64_t d = dmin; d <= dmax; ++d) {
      const ClassZ x{r, d};
      if (x.in_positive_cone()) out.push_back(x);
    }
  }
  return out;
}

bool symmetric_terms(const Terms& t) {
  for (const auto& [p, c] : t) {
    if (!c.is_sigma_symmetric()) return false;
  }
  return true;
}

}  // namespace

std::vector<SelfTestResult> relation_selftest(RelationEngine& engine) {
  std::vector<SelfTestResult> out;
  auto run = [&](const std::string& name, auto&& body) {
    SelfTestResult r{name, true, ""};
    try {
      r.detail = body(r.passed);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = e.what();
    }
    out.push_back(std::move(r));
  };

  run("config", [&](bool&) {
    engine.config().validate();
    return std::string("constants symmetric and nonzero");
  });

  const auto classes = small_classes(2, -2, 2);

  run("route agreement", [&](bool& ok) {
    int pairs = 0;
    for (const auto& y : classes) {
      for (const auto& x : classes) {
        if (det(x, y) <= 0) continue;
        const auto routes = engine.commutator_all_routes(y, x);
        if (routes.empty()) {
          ok = false;
          return "no route for " + y.to_string() + ", " + x.to_string();
        }
        for (const auto& r : routes) {
          if (r != routes.front()) {
            ok = false;
            return "routes disagree for " + y.to_string() + ", " + x.to_string();
          }
        }
        ++pairs;
      }
    }
    return std::to_string(pairs) + " pairs";
  });

  const auto letters = small_classes(1, -1, 1);
  const Slope all = Slope::unbounded();

  run("associativity", [&](bool& ok) {
    int n = 0;
    for (const auto& a : letters) {
      for (const auto& b : letters) {
        for (const auto& c : letters) {
          const Terms ta = engine.straighten({a}, all);
          const Terms tb = engine.straighten({b}, all);
          const Terms tc = engine.straighten({c}, all);
          const Terms left = engine.product(engine.product(ta, tb, all), tc, all);
          const Terms right = engine.product(ta, engine.product(tb, tc, all), all);
          if (left != right) {
            ok = false;
            return "fails on " + a.to_string() + " " + b.to_string() + " " + c.to_string();
          }
          ++n;
        }
      }
    }
    return std::to_string(n) + " triples";
  });

  run("support bound", [&](bool& ok) {
    int n = 0;
    for (const auto& a : letters) {
      for (const auto& b : letters) {
        for (const auto& c : letters) {
          const std::vector<ClassZ> word{a, b, c};
          const Slope bound = min_prefix_slope(word);
          const Terms t = engine.straighten(word, all);
          for (const auto& [p, coef] : t) {
            if (p.weight() != a + b + c || bound < p.first_slope()) {
              ok = false;
              return "path " + p.to_string() + " escapes the bound";
            }
          }
          if (!symmetric_terms(t)) {
            ok = false;
            return std::string("non-symmetric coefficient");
          }
          ++n;
        }
      }
    }
    return std::to_string(n) + " words";
  });
  return out;
}

}  // namespace ellhall
