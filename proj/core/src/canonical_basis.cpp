#include "ellhall/canonical_basis.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <thread>

namespace ellhall {

std::string to_string(Flavor f) { return f == Flavor::TILDE ? "tilde" : "plain"; }

Flavor parse_flavor(const std::string& s) {
  std::string l = s;
  std::transform(l.begin(), l.end(), l.begin(), [](unsigned char c) { return std::tolower(c); });
  if (l == "tilde") return Flavor::TILDE;
  if (l == "plain") return Flavor::PLAIN;
  throw std::invalid_argument("unknown flavor '" + s + "'");
}

std::ptrdiff_t KostkaTable::index_of(const ConvexPath& p) const {
  const auto it = std::find(paths.begin(), paths.end(), p);
  return it == paths.end() ? -1 : it - paths.begin();
}

const Coefficient& KostkaTable::at(const ConvexPath& p, const ConvexPath& q) const {
  const auto i = index_of(p);
  const auto j = index_of(q);
  if (i < 0 || j < 0) throw std::out_of_range("path not in the table");
  return entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

bool Sl2Report::passed() const {
  return std::all_of(pairs.begin(), pairs.end(), [](const Sl2PairCheck& c) { return c.passed; });
}

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& f) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

CanonicalBasis::CanonicalBasis(HallAlgebra& algebra, unsigned jobs) : h_(algebra), jobs_(std::max(1u, jobs)) {}

const Terms& CanonicalBasis::one_path_ss(const ConvexPath& p, const Slope& floor) {
  {
    std::lock_guard lock(mu_);
    if (auto it = one_path_ss_cache_.find({p, floor}); it != one_path_ss_cache_.end()) return it->second;
  }
  Terms t = h_.convert(h_.one_path(p, floor), Basis::ONE_SS).terms;
  std::lock_guard lock(mu_);
  return one_path_ss_cache_.try_emplace({p, floor}, std::move(t)).first->second;
}

Terms CanonicalBasis::one_path_expansion(const AlgebraElement& e) {
  if (e.floor.is_unbounded()) throw std::invalid_argument("the 1_p expansion needs a floor");
  Terms rest = h_.convert(e, Basis::ONE_SS).terms;
  Terms out;
  if (rest.empty()) return out;
  const auto window = enumerate_paths(e.weight, e.floor);
  // 1_p = 1^ss_p + strictly smaller terms, so peel off from the top.
  for (auto it = window.rbegin(); it != window.rend(); ++it) {
    const auto found = rest.find(*it);
    if (found == rest.end()) continue;
    const Coefficient c = found->second;
    out.emplace(*it, c);
    add_scaled(rest, one_path_ss(*it, e.floor), -c);
    if (rest.count(*it)) throw std::logic_error("1_p is not unitriangular at " + it->to_string());
  }
  if (!rest.empty()) {
    throw std::logic_error("1_p elimination left " + rest.begin()->first.to_string());
  }
  return out;
}

AlgebraElement CanonicalBasis::bar_element(const AlgebraElement& e) {
  AlgebraElement r = h_.zero(e.weight, e.floor, Basis::ONE_SS);
  for (const auto& [p, a] : one_path_expansion(e)) add_scaled(r.terms, one_path_ss(p, e.floor), a.bar());
  r.config_hash = e.config_hash.empty() ? h_.config_hash() : e.config_hash;
  return h_.convert(r, e.basis);
}

const std::map<ConvexPath, Terms>& CanonicalBasis::bar_of_beta(const ClassZ& alpha, const Slope& floor) {
  {
    std::lock_guard lock(mu_);
    if (auto it = bar_beta_cache_.find({alpha, floor}); it != bar_beta_cache_.end()) return it->second;
  }
  const auto window = enumerate_paths(alpha, floor);
  std::vector<Terms> rows(window.size());
  parallel_for(window.size(), jobs_, [&](std::size_t i) {
    const ConvexPath& q = window[i];
    rows[i] = h_.convert(bar_element(h_.convert(h_.beta_path(q, floor), Basis::BETA)), Basis::BETA).terms;
    // bar(beta_q) lies in beta_q plus strictly smaller paths.
    for (const auto& [r, c] : rows[i]) {
      if (r == q ? !c.is_one() : !strictly_below(r, q)) {
        throw std::logic_error("bar of beta_" + q.to_string() + " is not unitriangular at " + r.to_string());
      }
    }
  });
  std::map<ConvexPath, Terms> b;
  for (std::size_t i = 0; i < window.size(); ++i) b.emplace(window[i], std::move(rows[i]));
  std::lock_guard lock(mu_);
  return bar_beta_cache_.try_emplace({alpha, floor}, std::move(b)).first->second;
}

AlgebraElement CanonicalBasis::canonical_element(const ConvexPath& p, const Slope& floor) {
  if (p.first_slope() < floor) throw std::invalid_argument("path " + p.to_string() + " starts below the floor");
  const ClassZ alpha = p.weight();
  const auto& bar_beta = bar_of_beta(alpha, floor);
  const auto window = enumerate_paths(alpha, floor);
  const auto top = std::find(window.begin(), window.end(), p);

  // b_p = sum c_q beta_q with c_p = 1; bar invariance gives, for q' below p,
  // c_{q'} - bar(c_{q'}) = sum_{q above q'} bar(c_q) B_{q', q}.
  AlgebraElement b = h_.zero(alpha, floor, Basis::BETA);
  b.terms.emplace(p, Coefficient(1L));
  for (auto it = std::make_reverse_iterator(top); it != window.rend(); ++it) {
    Coefficient d;
    for (const auto& [q, c] : b.terms) {
      const auto& row = bar_beta.at(q);
      if (auto e = row.find(*it); e != row.end()) d += c.bar() * e->second;
    }
    if (d.is_zero()) continue;
    if (!strictly_below(*it, p)) {
      throw std::logic_error("canonical element mixes equivalent paths " + p.to_string() + ", " + it->to_string());
    }
    b.terms.emplace(*it, split_positive(d));
  }
  return b;
}

KostkaTable CanonicalBasis::kostka_table(const ClassZ& alpha, const Slope& floor, Flavor flavor) {
  if (!alpha.in_positive_cone()) throw LatticeError("kostka_table needs a class in the positive cone");
  KostkaTable t;
  t.weight = alpha;
  t.floor = floor;
  t.flavor = flavor;
  t.config_hash = h_.config_hash();
  t.paths = enumerate_paths(alpha, floor);
  const std::size_t n = t.paths.size();
  t.entries.assign(n, std::vector<Coefficient>(n));
  t.boundary.assign(n, false);
  bar_of_beta(alpha, floor);
  parallel_for(n, jobs_, [&](std::size_t i) {
    AlgebraElement b = canonical_element(t.paths[i], floor);
    if (flavor == Flavor::PLAIN) b = h_.convert(b, Basis::RHO);
    for (std::size_t j = 0; j < n; ++j) t.entries[i][j] = b.coeff(t.paths[j]);
  });
  if (floor.is_finite()) {
    for (const auto& q : enumerate_paths(alpha, floor.minus(Slope::integer(1)))) {
      if (!(q.first_slope() < floor)) continue;
      for (std::size_t i = 0; i < n; ++i) {
        if (strictly_below(q, t.paths[i])) t.boundary[i] = true;
      }
    }
  }
  return t;
}

Sl2Report CanonicalBasis::sl2_invariance_check(const SL2Matrix& gamma, const ClassZ& alpha, const Slope& floor,
                                               Flavor flavor) {
  Sl2Report rep;
  rep.gamma = gamma;
  rep.weight = alpha;
  rep.floor = floor;
  rep.image_weight = gamma.apply(alpha);
  if (!rep.image_weight.in_positive_cone()) throw OutOfCone("image weight leaves the positive cone");

  const KostkaTable src = kostka_table(alpha, floor, flavor);
  std::vector<std::optional<ConvexPath>> image(src.paths.size());
  Slope image_floor = Slope::infinity();
  for (std::size_t i = 0; i < src.paths.size(); ++i) {
    try {
      image[i] = sl2_apply(gamma, src.paths[i]);
      image_floor = std::min(image_floor, image[i]->first_slope());
    } catch (const OutOfCone&) {
    }
  }
  rep.image_floor = image_floor;
  const KostkaTable dst = kostka_table(rep.image_weight, image_floor, flavor);
  for (std::size_t i = 0; i < src.paths.size(); ++i) {
    for (std::size_t j = 0; j < src.paths.size(); ++j) {
      if (!image[i] || !image[j]) {
        ++rep.skipped;
        continue;
      }
      Sl2PairCheck c{src.paths[i], src.paths[j], *image[i], *image[j], src.entries[i][j], {}, false};
      c.image_value = dst.at(c.gp, c.gq);
      c.passed = c.value == c.image_value;
      rep.pairs.push_back(std::move(c));
    }
  }
  return rep;
}

}  // namespace ellhall
