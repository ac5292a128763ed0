#include "ellhall/hall_algebra.hpp"

#include <algorithm>
#include <cctype>

#include "ellhall/symfunc.hpp"

namespace ellhall {

namespace {

Rational to_rational(const Slope& s) { return Rational(s.num(), s.den()); }

Slope from_rational(Rational q) {
  q.canonicalize();
  if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p()) throw LatticeError("floor out of range");
  return {q.get_num().get_si(), q.get_den().get_si()};
}

long parts_product(const Partition& rho) {
  long prod = 1;
  for (int part : rho) prod *= part;
  return prod;
}

RayPolynomial product_of(const std::vector<RayPolynomial>& table, const Partition& lambda) {
  RayPolynomial r = RayPolynomial::constant(Coefficient(1L));
  for (int part : lambda) r = r * table[static_cast<std::size_t>(part)];
  return r;
}

// p-polynomial -> t~ block coefficients, using p_rho = prod(rho) t~_rho.
std::map<Partition, Coefficient> powersum_to_ttilde(const RayPolynomial& f) {
  std::map<Partition, Coefficient> out;
  for (const auto& [rho, c] : f.terms()) out.emplace(rho, c * Coefficient(parts_product(rho)));
  return out;
}

using BlockCache = std::map<std::pair<Basis, Partition>, std::map<Partition, Coefficient>>;

std::map<Partition, Coefficient> compute_to_ttilde(Basis b, const Partition& lambda) {
  const int n = partition_size(lambda);
  switch (b) {
    case Basis::TTILDE:
      return {{lambda, Coefficient(1L)}};
    case Basis::ONE_SS:
      return powersum_to_ttilde(product_of(generator_change_exp(GeneratorChange::G_TO_P, n), lambda));
    case Basis::BETA:
      return powersum_to_ttilde(schur_in_powersum(lambda));
    case Basis::RHO:
      return powersum_to_ttilde(hl_P_in_powersum(lambda));
  }
  return {};
}

std::map<Partition, Coefficient> compute_from_ttilde(Basis b, const Partition& rho) {
  const int n = partition_size(rho);
  const Coefficient inv_weight(Rational(1, parts_product(rho)));
  std::map<Partition, Coefficient> out;
  auto add = [&](const Partition& mu, const Coefficient& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = out.try_emplace(mu, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) out.erase(it);
    }
  };
  switch (b) {
    case Basis::TTILDE:
      add(rho, Coefficient(1L));
      break;
    case Basis::ONE_SS:
    {
      const RayPolynomial ph = product_of(generator_change_exp(GeneratorChange::P_TO_G, n), rho);
      for (const auto& [mu, c] : ph.terms()) add(mu, c * inv_weight);
      break;
    }
    case Basis::BETA:
      for (const auto& [lam, c] : powersum_in_schur(rho)) add(lam, inv_weight * Coefficient(c));
      break;
    case Basis::RHO: {
      // s_lambda = sum_mu K_{lambda mu} P_mu
      const auto k = kostka_foulkes_matrix(n);
      for (const auto& [lam, c] : powersum_in_schur(rho)) {
        const auto i = static_cast<std::size_t>(std::find(k.index.begin(), k.index.end(), lam) - k.index.begin());
        for (std::size_t j = 0; j < k.index.size(); ++j) add(k.index[j], k.entries[i][j] * c * inv_weight);
      }
      break;
    }
  }
  return out;
}

const std::map<Partition, Coefficient>& cached_block(bool to, Basis b, const Partition& lambda) {
  static std::mutex mu;
  static BlockCache to_cache, from_cache;
  BlockCache& cache = to ? to_cache : from_cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find({b, lambda}); it != cache.end()) return it->second;
  }
  auto value = to ? compute_to_ttilde(b, lambda) : compute_from_ttilde(b, lambda);
  std::lock_guard lock(mu);
  return cache.try_emplace({b, lambda}, std::move(value)).first->second;
}

// Cartesian product of per-block expansions, blocks in increasing slope.
Terms expand_blocks(const std::vector<std::pair<ClassZ, const std::map<Partition, Coefficient>*>>& blocks,
                    const Coefficient& scale) {
  std::vector<std::pair<std::vector<OmegaBlock>, Coefficient>> partial{{{}, scale}};
  for (const auto& [dir, expansion] : blocks) {
    std::vector<std::pair<std::vector<OmegaBlock>, Coefficient>> next;
    for (const auto& [prefix, c] : partial) {
      for (const auto& [part, x] : *expansion) {
        auto blocks_so_far = prefix;
        blocks_so_far.push_back({dir, part});
        next.emplace_back(std::move(blocks_so_far), c * x);
      }
    }
    partial = std::move(next);
  }
  Terms out;
  for (const auto& [bl, c] : partial) add_term(out, omega_inverse(bl), c);
  return out;
}

Terms convert_terms(const Terms& t, Basis from, Basis to) {
  if (from == to) return t;
  Terms out;
  auto step = [](const Terms& in, Basis b, bool to_tt) {
    Terms res;
    for (const auto& [p, c] : in) {
      std::vector<std::pair<ClassZ, const std::map<Partition, Coefficient>*>> blocks;
      for (const auto& ob : omega_index(p)) blocks.emplace_back(ob.direction, &cached_block(to_tt, b, ob.partition));
      add_scaled(res, expand_blocks(blocks, Coefficient(1L)), c);
    }
    return res;
  };
  const Terms tt = from == Basis::TTILDE ? t : step(t, from, true);
  return to == Basis::TTILDE ? tt : step(tt, to, false);
}

}  // namespace

std::string to_string(Basis b) {
  switch (b) {
    case Basis::TTILDE:
      return "ttilde";
    case Basis::ONE_SS:
      return "oness";
    case Basis::BETA:
      return "beta";
    case Basis::RHO:
      return "rho";
  }
  return "?";
}

Basis parse_basis(const std::string& s) {
  std::string l = s;
  std::transform(l.begin(), l.end(), l.begin(), [](unsigned char c) { return std::tolower(c); });
  if (l == "ttilde") return Basis::TTILDE;
  if (l == "oness" || l == "one_ss") return Basis::ONE_SS;
  if (l == "beta") return Basis::BETA;
  if (l == "rho") return Basis::RHO;
  throw std::invalid_argument("unknown basis '" + s + "'");
}

Coefficient AlgebraElement::coeff(const ConvexPath& p) const {
  auto it = terms.find(p);
  return it == terms.end() ? Coefficient() : it->second;
}

namespace {

void check_compatible(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.weight != b.weight || a.basis != b.basis) {
    throw std::invalid_argument("adding elements of different weight or basis");
  }
  if (!a.config_hash.empty() && !b.config_hash.empty() && a.config_hash != b.config_hash) {
    throw std::invalid_argument("elements come from different relation configs");
  }
}

}  // namespace

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  check_compatible(a, b);
  AlgebraElement r = truncate(a, std::max(a.floor, b.floor));
  add_scaled(r.terms, b.terms, Coefficient(1L));
  truncate_terms(r.terms, r.floor);
  if (r.config_hash.empty()) r.config_hash = b.config_hash;
  return r;
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  return a + Coefficient(-1L) * b;
}

AlgebraElement operator*(const Coefficient& c, const AlgebraElement& a) {
  AlgebraElement r = a;
  r.terms.clear();
  add_scaled(r.terms, a.terms, c);
  return r;
}

AlgebraElement truncate(const AlgebraElement& e, const Slope& floor) {
  if (floor < e.floor) throw std::invalid_argument("cannot lower the floor of an element");
  AlgebraElement r = e;
  r.floor = floor;
  truncate_terms(r.terms, floor);
  return r;
}

Slope product_floor(const ClassZ& w, const Slope& fa, const Slope& fb) {
  Slope fb_star;
  if (fb.is_unbounded() || fb.is_infinite()) {
    fb_star = fb;
  } else if (w.rank > 0 && to_rational(fb) >= Rational(w.degree, w.rank)) {
    fb_star = fb;
  } else {
    // (fb + D) / (1 + R): the largest first slope a missing right term can reach.
    fb_star = from_rational((to_rational(fb) + w.degree) / (1 + w.rank));
  }
  return std::max(fa, fb_star);
}

Slope right_floor(const ClassZ& w, const Slope& f) {
  if (!f.is_finite()) return f;
  const Rational q = to_rational(f);
  const Rational gap = w.degree - q * w.rank;
  return gap > 0 ? from_rational(q - gap) : f;
}

const std::map<Partition, Coefficient>& block_to_ttilde(Basis b, const Partition& lambda) {
  return cached_block(true, b, lambda);
}

const std::map<Partition, Coefficient>& block_from_ttilde(Basis b, const Partition& rho) {
  return cached_block(false, b, rho);
}

HallAlgebra::HallAlgebra(std::shared_ptr<RelationEngine> engine) : engine_(std::move(engine)) {}

AlgebraElement HallAlgebra::zero(const ClassZ& weight, const Slope& floor, Basis b) const {
  return {weight, floor, b, {}, config_hash()};
}

AlgebraElement HallAlgebra::basis_vector(Basis b, const ConvexPath& p, const Slope& floor) const {
  AlgebraElement e = zero(p.weight(), floor, b);
  if (!(p.first_slope() < floor)) e.terms.emplace(p, Coefficient(1L));
  return e;
}

AlgebraElement HallAlgebra::convert(const AlgebraElement& e, Basis target) const {
  AlgebraElement r = e;
  r.terms = convert_terms(e.terms, e.basis, target);
  r.basis = target;
  return r;
}

AlgebraElement HallAlgebra::mul(const AlgebraElement& a, const AlgebraElement& b) {
  for (const auto* x : {&a, &b}) {
    if (!x->config_hash.empty() && x->config_hash != config_hash()) {
      throw std::invalid_argument("element comes from a different relation config");
    }
  }
  const AlgebraElement ta = convert(a, Basis::TTILDE);
  const AlgebraElement tb = convert(b, Basis::TTILDE);
  const Slope f = product_floor(a.weight, a.floor, b.floor);
  AlgebraElement r = zero(a.weight + b.weight, f);
  r.terms = engine_->product(ta.terms, tb.terms, f);
  truncate_terms(r.terms, f);
  return r;
}

AlgebraElement HallAlgebra::one_ss_path(const ConvexPath& p, const Slope& floor) const {
  return convert(basis_vector(Basis::ONE_SS, p, floor), Basis::TTILDE);
}

AlgebraElement HallAlgebra::beta_path(const ConvexPath& p, const Slope& floor) const {
  return convert(basis_vector(Basis::BETA, p, floor), Basis::TTILDE);
}

AlgebraElement HallAlgebra::rho_path(const ConvexPath& p, const Slope& floor) const {
  return convert(basis_vector(Basis::RHO, p, floor), Basis::TTILDE);
}

AlgebraElement HallAlgebra::one_alpha(const ClassZ& alpha, const Slope& floor) {
  if (!alpha.in_positive_cone()) throw LatticeError("one_alpha needs a class in the positive cone");
  {
    std::lock_guard lock(mu_);
    if (auto it = alpha_cache_.find({alpha, floor}); it != alpha_cache_.end()) return it->second;
  }
  AlgebraElement e = zero(alpha, floor);
  for (const HNType& h : enumerate_hn_types(alpha, floor)) {
    std::int64_t exponent = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      for (std::size_t j = i + 1; j < h.size(); ++j) exponent += euler_form(h[i], h[j]);
    }
    std::vector<std::pair<ClassZ, const std::map<Partition, Coefficient>*>> blocks;
    for (const ClassZ& x : h) {
      const auto [l, dir] = ray_decompose(x);
      blocks.emplace_back(dir, &block_to_ttilde(Basis::ONE_SS, {static_cast<int>(l)}));
    }
    add_scaled(e.terms, expand_blocks(blocks, Coefficient::nu_power(static_cast<int>(exponent))), Coefficient(1L));
  }
  std::lock_guard lock(mu_);
  alpha_cache_.emplace(std::make_pair(alpha, floor), e);
  return e;
}

AlgebraElement HallAlgebra::one_path(const ConvexPath& p, const Slope& floor) {
  if (p.empty()) throw LatticeError("one_path of the empty path");
  if (p.first_slope() < floor) return zero(p.weight(), floor);
  {
    std::lock_guard lock(mu_);
    if (auto it = path_cache_.find({p, floor}); it != path_cache_.end()) return it->second;
  }
  const ClassZ head = p.segments().front();
  AlgebraElement e = one_alpha(head, floor);
  if (p.length() > 1) {
    const ConvexPath tail = ConvexPath::from_segments({p.segments().begin() + 1, p.segments().end()});
    e = mul(e, one_path(tail, right_floor(head, floor)));
    if (e.floor != floor) throw std::logic_error("one_path lost exactness at its floor");
  }
  std::lock_guard lock(mu_);
  path_cache_.emplace(std::make_pair(p, floor), e);
  return e;
}

}  // namespace ellhall
