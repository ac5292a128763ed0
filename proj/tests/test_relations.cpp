#include <random>

#include "doctest.h"
#include "ellhall/relations.hpp"
#include "ellhall/symfunc.hpp"
#include "test_util.hpp"

using namespace ellhall;
using testutil::nu;
using testutil::nu_pow;

namespace {

ConvexPath path(std::vector<ClassZ> segs) { return ConvexPath::from_segments(std::move(segs)); }

RelationEngine& default_engine() {
  static RelationEngine e(RelationConfig::default_config());
  return e;
}

Terms apply_shear(const SL2Matrix& g, const Terms& t) {
  Terms out;
  for (const auto& [p, c] : t) add_term(out, sl2_apply(g, p), c);
  return out;
}

}  // namespace

TEST_CASE("default constants") {
  const auto cfg = RelationConfig::default_config();
  CHECK(cfg.kappa == nu_pow(-1) - nu());
  CHECK(cfg.c(1) == cfg.kappa);
  CHECK(cfg.c(3) == nu_pow(-3) - nu_pow(3));
  const Coefficient one(1L);
  CHECK(cfg.zeta(1) == nu() * (one - Coefficient::sigma()) * (one - Coefficient::sigmabar()));
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.hash().size() == 16);
  CHECK(cfg.hash() == RelationConfig::default_config().hash());

  auto other = cfg;
  other.theta_log[0] = other.theta_log[0] * Coefficient(2L);
  CHECK(other.hash() != cfg.hash());
  other.kappa = Coefficient::sigma();
  CHECK_THROWS_AS(other.validate(), ConfigIncoherent);
  CHECK_THROWS_AS(static_cast<void>(cfg.c(17)), ConfigIncoherent);
}

TEST_CASE("theta elements") {
  // With c_j = 1/j the generating series is that of complete symmetric
  // functions, whose power-sum coefficients are 1/z_rho.
  auto cfg = RelationConfig::default_config();
  for (std::size_t j = 0; j < cfg.theta_log.size(); ++j) {
    cfg.theta_log[j] = Coefficient(Rational(1, static_cast<long>(j + 1)));
  }
  RelationEngine h(cfg);
  const ClassZ w{1, 1};
  for (int l = 1; l <= 6; ++l) {
    const Terms t = h.theta_element(w, l);
    CHECK(t.size() == partitions(l).size());
    for (const auto& rho : partitions(l)) {
      std::vector<ClassZ> segs;
      for (int part : rho) segs.push_back(w * part);
      const auto it = t.find(path(segs));
      REQUIRE(it != t.end());
      CHECK(it->second == Coefficient(Rational(1) / z_factor(rho)));
    }
  }

  auto& e = default_engine();
  const auto& c = e.config();
  const ClassZ d{0, 1};
  const Terms t2 = e.theta_element(d, 2);
  CHECK(t2.size() == 2);
  CHECK(t2.at(path({{0, 2}})) == c.c(2));
  CHECK(t2.at(path({{0, 1}, {0, 1}})) == c.c(1) * c.c(1) * Coefficient(Rational(1, 2)));
  CHECK_THROWS_AS(static_cast<void>(e.theta_element({0, 2}, 1)), LatticeError);
}

TEST_CASE("base relation and straightening") {
  auto& e = default_engine();
  const Coefficient z1 = e.config().zeta(1);
  CHECK(RelationEngine::is_base_pair({0, 1}, {1, 0}));
  CHECK(RelationEngine::is_base_pair({0, 3}, {1, 0}));
  CHECK_FALSE(RelationEngine::is_base_pair({0, 1}, {0, 2}));
  CHECK_FALSE(RelationEngine::is_base_pair({1, 2}, {2, -2}));
  CHECK_THROWS_AS(static_cast<void>(e.base_commutator({1, 2}, {2, -2})), NotMinimalTriangle);

  const Terms c = e.commutator({0, 1}, {1, 0});
  CHECK(c == Terms{{path({{1, 1}}), z1}});
  CHECK(e.commutator({1, 0}, {0, 1}) == Terms{{path({{1, 1}}), -z1}});

  const Terms s = e.straighten({{0, 1}, {1, 0}}, Slope::unbounded());
  CHECK(s == Terms{{path({{1, 0}, {0, 1}}), Coefficient(1L)}, {path({{1, 1}}), z1}});

  // Already ordered words straighten to themselves; collinear letters commute.
  CHECK(e.straighten({{1, 0}, {0, 1}}, Slope::unbounded()) == Terms{{path({{1, 0}, {0, 1}}), Coefficient(1L)}});
  CHECK(e.straighten({{0, 1}, {0, 2}}, Slope::unbounded()) == e.straighten({{0, 2}, {0, 1}}, Slope::unbounded()));
  CHECK(e.commutator({1, 1}, {2, 2}).empty());

  // Base commutator with a non-primitive partner pulls in the whole theta element.
  const Terms c2 = e.commutator({0, 1}, {2, 0});
  for (const auto& [p, x] : c2) CHECK(p.weight() == ClassZ{2, 1});
}

TEST_CASE("commutators are shear invariant") {
  auto& e = default_engine();
  const SL2Matrix shear(1, 0, 1, 1);
  std::vector<ClassZ> cls;
  for (std::int64_t r = 0; r <= 2; ++r) {
    for (std::int64_t d = -2; d <= 2; ++d) {
      if (ClassZ{r, d}.in_positive_cone()) cls.push_back({r, d});
    }
  }
  for (const auto& y : cls) {
    for (const auto& x : cls) {
      if (det(x, y) <= 0 || x.rank == 0 || y.rank == 0) continue;
      const Terms a = e.commutator(y, x);
      const Terms b = e.commutator(shear.apply(y), shear.apply(x));
      CHECK_MESSAGE(apply_shear(shear, a) == b, y.to_string() << " " << x.to_string());
    }
  }
}

TEST_CASE("selftest") {
  for (const auto& r : relation_selftest(default_engine())) {
    CHECK_MESSAGE(r.passed, r.name << ": " << r.detail);
  }
}

TEST_CASE("truncated products agree with exact ones") {
  auto& e = default_engine();
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> rank(0, 2), deg(-2, 2), len(2, 4);
  for (int iter = 0; iter < 40; ++iter) {
    std::vector<ClassZ> word;
    while (static_cast<int>(word.size()) < len(rng)) {
      const ClassZ x{rank(rng), deg(rng)};
      if (x.in_positive_cone()) word.push_back(x);
    }
    const Terms exact = e.straighten(word, Slope::unbounded());
    const Slope bound = min_prefix_slope(word);
    for (const auto& [p, c] : exact) {
      CHECK_FALSE(bound < p.first_slope());
      CHECK(c.is_sigma_symmetric());
    }
    for (const Slope f : {Slope::integer(-1), Slope(-1, 2), Slope::integer(0), Slope::integer(1)}) {
      Terms cut = exact;
      truncate_terms(cut, f);
      CHECK(e.straighten(word, f) == cut);
    }
  }
}

// Every t~_o in t~_p t~_q has at least as much rank as q above any slope,
// and at least its torsion length. Counting ray multiples instead fails.
TEST_CASE("support of products") {
  auto& e = default_engine();
  auto above = [](const ConvexPath& p, const Slope& mu, bool torsion) {
    std::int64_t s = 0;
    for (const auto& g : p.segments()) {
      if (!(slope(g) < mu)) s += torsion ? (g.rank == 0 ? g.degree : 0) : g.rank;
    }
    return s;
  };
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> rank(0, 2), deg(-3, 3);
  auto gen = [&] {
    for (;;) {
      const ClassZ x{rank(rng), deg(rng)};
      if (x.in_positive_cone()) return x;
    }
  };
  const Slope f = Slope::integer(-3);
  for (int iter = 0; iter < 60; ++iter) {
    const Terms ps = e.straighten({gen(), gen()}, f), qs = e.straighten({gen(), gen()}, f);
    for (const auto& [p, cp] : ps) {
      for (const auto& [q, cq] : qs) {
        const Terms out = e.multiply(p, q, f);
        for (const auto& [o, c] : out) {
          CHECK(above(o, Slope::infinity(), true) >= above(q, Slope::infinity(), true));
          for (const auto* x : {&o, &q}) {
            for (const auto& s : x->segments()) CHECK(above(o, slope(s), false) >= above(q, slope(s), false));
          }
        }
      }
    }
  }
  const auto q = path({{1, 0}, {1, 0}, {1, 0}});
  const auto o = path({{1, 0}, {3, 2}});
  CHECK_FALSE(e.multiply(path({{1, 2}}), q, f).at(o).is_zero());
  CHECK(deg_at_least(o, Slope::integer(0)) < deg_at_least(q, Slope::integer(0)));
}
