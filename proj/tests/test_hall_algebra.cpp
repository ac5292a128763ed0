#include <random>

#include "doctest.h"
#include "ellhall/hall_algebra.hpp"
#include "test_util.hpp"

using namespace ellhall;
using testutil::nu;
using testutil::nu_pow;

namespace {

ConvexPath path(std::vector<ClassZ> segs) { return ConvexPath::from_segments(std::move(segs)); }

HallAlgebra& algebra() {
  static HallAlgebra h(engine_for(RelationConfig::default_config()));
  return h;
}

Coefficient half() { return Coefficient(Rational(1, 2)); }

// Keeps only the nu^0 part of every coefficient.
Terms at_nu_zero(const Terms& t) {
  Terms out;
  for (const auto& [p, c] : t) {
    Coefficient z;
    for (const auto& [e, q] : c.nt_form()) {
      if (e.m == 0) z += Coefficient::nu_t(0, e.k, q);
    }
    add_term(out, p, z);
  }
  return out;
}

}  // namespace

TEST_CASE("multiplication") {
  auto& h = algebra();
  const Slope f = Slope::integer(-2);
  const auto a = h.basis_vector(Basis::TTILDE, path({{1, 0}}), f);
  const auto b = h.basis_vector(Basis::TTILDE, path({{0, 1}}), f);
  CHECK(h.mul(a, b).terms == Terms{{path({{1, 0}, {0, 1}}), Coefficient(1L)}});
  const auto ba = h.mul(b, a);
  CHECK(ba.weight == ClassZ{1, 1});
  CHECK(ba.terms == Terms{{path({{1, 0}, {0, 1}}), Coefficient(1L)},
                          {path({{1, 1}}), h.engine().config().zeta(1)}});
  CHECK(h.mul(a, h.zero({0, 1}, f)).is_zero());
  CHECK(ba.config_hash == h.config_hash());
}

TEST_CASE("product floors") {
  // Vertical left factor shifts by its degree; a right floor above the left
  // slope is kept; otherwise the mediant bound applies.
  CHECK(product_floor({0, 2}, Slope::integer(-5), Slope::integer(-3)) == Slope::integer(-1));
  CHECK(product_floor({1, 0}, Slope::integer(-5), Slope::integer(1)) == Slope::integer(1));
  CHECK(product_floor({1, 0}, Slope::integer(-5), Slope::integer(-2)) == Slope::integer(-1));
  CHECK(product_floor({1, 0}, Slope::integer(0), Slope::integer(-2)) == Slope::integer(0));
  CHECK(product_floor({1, 0}, Slope::integer(0), Slope::unbounded()) == Slope::integer(0));
  for (const ClassZ w : {ClassZ{0, 1}, ClassZ{1, 0}, ClassZ{2, 1}, ClassZ{1, -2}}) {
    for (int f = -3; f <= 1; ++f) {
      const Slope fs = Slope::integer(f);
      CHECK(product_floor(w, fs, right_floor(w, fs)) == fs);
    }
  }

  // The stamped floor is honest: compare against a product computed with
  // much more of the right factor.
  auto& h = algebra();
  const ClassZ x{1, 0}, y{1, -1};
  const Slope fa = Slope::integer(-2);
  for (int fb = -3; fb <= 0; ++fb) {
    const auto a = h.one_alpha(x, fa);
    const auto r = h.mul(a, h.one_alpha(y, Slope::integer(fb)));
    const auto deep = h.mul(a, h.one_alpha(y, Slope::integer(-8)));
    REQUIRE_FALSE(deep.floor > r.floor);
    CHECK(truncate(deep, r.floor) == r);
  }
}

TEST_CASE("ray dictionary") {
  auto& h = algebra();
  const Slope f = Slope::integer(0);
  CHECK(h.one_ss_path(path({{0, 1}}), f).terms == Terms{{path({{0, 1}}), Coefficient(1L)}});
  CHECK(h.one_ss_path(path({{0, 2}}), f).terms ==
        Terms{{path({{0, 2}}), Coefficient(1L)}, {path({{0, 1}, {0, 1}}), half()}});
  CHECK(h.one_ss_path(path({{1, 0}, {0, 1}}), f).terms == Terms{{path({{1, 0}, {0, 1}}), Coefficient(1L)}});

  CHECK(h.beta_path(path({{0, 1}, {0, 1}}), f).terms ==
        Terms{{path({{0, 1}, {0, 1}}), half()}, {path({{0, 2}}), Coefficient(-1L)}});
  for (const ClassZ x : {ClassZ{0, 3}, ClassZ{2, 2}, ClassZ{1, 0}}) {
    CHECK(h.beta_path(path({x}), Slope::integer(-1)) == h.one_ss_path(path({x}), Slope::integer(-1)));
  }
  for (int n = 1; n <= 4; ++n) {
    for (const auto& p : enumerate_paths({0, n}, f)) {
      CHECK(at_nu_zero(h.rho_path(p, f).terms) == h.beta_path(p, f).terms);
    }
  }
  CHECK(h.beta_path(path({{1, -3}}), f).is_zero());
}

TEST_CASE("basis conversions roundtrip") {
  auto& h = algebra();
  const Slope f = Slope::integer(-1);
  for (const ClassZ w : {ClassZ{0, 4}, ClassZ{2, 2}, ClassZ{1, 1}, ClassZ{0, 6}}) {
    for (const auto& p : enumerate_paths(w, f)) {
      for (Basis b : {Basis::ONE_SS, Basis::BETA, Basis::RHO}) {
        const auto v = h.basis_vector(b, p, f);
        const auto t = h.convert(v, Basis::TTILDE);
        CHECK(h.convert(t, b) == v);
        // The transition mixes only equivalent paths.
        for (const auto& [q, c] : t.terms) CHECK(path_cmp(q, p) == (q == p ? Order::Equal : Order::Equivalent));
      }
      const auto t = h.basis_vector(Basis::TTILDE, p, f);
      CHECK(h.convert(h.convert(h.convert(t, Basis::RHO), Basis::BETA), Basis::TTILDE) == t);
    }
  }
  CHECK(h.convert(h.one_alpha({0, 2}, Slope::integer(0)), Basis::BETA).terms ==
        Terms{{path({{0, 2}}), Coefficient(1L)}});
  CHECK_THROWS_AS(parse_basis("gamma"), std::invalid_argument);
  CHECK(parse_basis("ONESS") == Basis::ONE_SS);
}

TEST_CASE("one_alpha") {
  auto& h = algebra();
  CHECK(h.one_alpha({0, 1}, Slope::integer(0)).terms == Terms{{path({{0, 1}}), Coefficient(1L)}});
  CHECK(h.one_alpha({0, 3}, Slope::integer(-2)) == h.one_ss_path(path({{0, 3}}), Slope::integer(-2)));

  // Independent construction from products of exact 1^ss elements.
  const Slope f = Slope::integer(-2);
  const Slope all = Slope::unbounded();
  auto expected = h.one_ss_path(path({{1, 0}}), all);
  expected = expected + nu() * h.mul(h.one_ss_path(path({{1, -1}}), all), h.one_ss_path(path({{0, 1}}), all));
  expected = expected + nu_pow(2) * h.mul(h.one_ss_path(path({{1, -2}}), all), h.one_ss_path(path({{0, 2}}), all));
  CHECK(expected.floor == all);
  CHECK(h.one_alpha({1, 0}, f).terms == truncate(expected, f).terms);

  for (const ClassZ a : {ClassZ{1, 0}, ClassZ{2, 1}, ClassZ{2, -1}, ClassZ{0, 2}}) {
    const auto one = h.convert(h.one_alpha(a, f), Basis::ONE_SS);
    const ConvexPath top = path({a});
    CHECK(one.coeff(top).is_one());
    for (const auto& [q, c] : one.terms) {
      if (q != top) CHECK(strictly_below(q, top));
      CHECK(c.is_sigma_symmetric());
      CHECK_FALSE(q.first_slope() < f);
    }
  }
}

TEST_CASE("one_path") {
  auto& h = algebra();
  const Slope f = Slope::integer(-2);
  const auto p = path({{1, 0}, {0, 1}});
  CHECK(h.one_path(path({{1, 1}}), f) == h.one_alpha({1, 1}, f));
  CHECK(h.one_path(path({{0, 1}, {0, 1}}), f).terms == Terms{{path({{0, 1}, {0, 1}}), Coefficient(1L)}});
  CHECK(h.one_path(p, f).weight == ClassZ{1, 1});
  CHECK(h.one_path(path({{1, -3}, {0, 1}}), f).is_zero());

  for (const ClassZ w : {ClassZ{1, 1}, ClassZ{2, 0}, ClassZ{1, -1}, ClassZ{0, 3}}) {
    for (const auto& q : enumerate_paths(w, f)) {
      const auto e = h.convert(h.one_path(q, f), Basis::ONE_SS);
      CHECK(e.floor == f);
      CHECK(e.coeff(q).is_one());
      for (const auto& [r, c] : e.terms) {
        if (r != q) CHECK_MESSAGE(strictly_below(r, q), q.to_string() << " has " << r.to_string());
        CHECK(c.is_sigma_symmetric());
      }
    }
  }
}
