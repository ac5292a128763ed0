#include "ellhall/symfunc.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>

namespace ellhall {

RayPolynomial RayPolynomial::constant(const Coefficient& c) { return monomial({}, c); }

RayPolynomial RayPolynomial::generator(int l) { return monomial({l}, Coefficient(1L)); }

RayPolynomial RayPolynomial::monomial(Monomial m, const Coefficient& c) {
  std::sort(m.begin(), m.end(), std::greater<>());
  RayPolynomial r;
  r.add(m, c);
  return r;
}

Coefficient RayPolynomial::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Coefficient() : it->second;
}

void RayPolynomial::add(const Monomial& m, const Coefficient& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

RayPolynomial& RayPolynomial::operator+=(const RayPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

RayPolynomial& RayPolynomial::operator-=(const RayPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

RayPolynomial& RayPolynomial::operator*=(const Coefficient& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

RayPolynomial operator*(const RayPolynomial& a, const RayPolynomial& b) {
  RayPolynomial r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      RayPolynomial::Monomial m;
      m.reserve(ma.size() + mb.size());
      std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m), std::greater<>());
      r.add(m, ca * cb);
    }
  }
  return r;
}

RayPolynomial RayPolynomial::truncate(int n) const {
  RayPolynomial r;
  for (const auto& [m, c] : terms_) {
    if (partition_size(m) <= n) r.terms_.emplace(m, c);
  }
  return r;
}

RayPolynomial RayPolynomial::substitute(const std::vector<RayPolynomial>& images) const {
  RayPolynomial r;
  for (const auto& [m, c] : terms_) {
    RayPolynomial term = constant(c);
    for (int g : m) {
      if (g <= 0 || static_cast<std::size_t>(g) >= images.size()) {
        throw CoefficientError("substitution table too short");
      }
      term = term * images[g];
    }
    r += term;
  }
  return r;
}

int partition_size(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

bool is_partition(const Partition& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) return false;
    if (i && p[i] > p[i - 1]) return false;
  }
  return true;
}

namespace {

void gen_partitions(int n, int maxpart, Partition& cur, std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, maxpart); k >= 1; --k) {
    cur.push_back(k);
    gen_partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

Rational factorial(int n) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

std::vector<Partition> partitions(int n) {
  if (n < 0) throw CoefficientError("partitions of a negative integer");
  std::vector<Partition> out;
  Partition cur;
  gen_partitions(n, n, cur, out);
  return out;
}

bool dominates(const Partition& a, const Partition& b) {
  int sa = 0, sb = 0;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    sa += i < a.size() ? a[i] : 0;
    sb += i < b.size() ? b[i] : 0;
    if (sa < sb) return false;
  }
  return sa == sb;
}

Partition conjugate(const Partition& p) {
  Partition c;
  if (p.empty()) return c;
  for (int j = 1; j <= p.front(); ++j) {
    int n = 0;
    for (int part : p) n += part >= j ? 1 : 0;
    c.push_back(n);
  }
  return c;
}

Rational z_factor(const Partition& rho) {
  std::map<int, int> mult;
  for (int part : rho) ++mult[part];
  Rational z = 1;
  for (const auto& [i, m] : mult) {
    for (int k = 0; k < m; ++k) z *= i;
    z *= factorial(m);
  }
  return z;
}

namespace {

// Beta-numbers of lambda padded to `len` rows.
std::vector<int> beta_set(const Partition& lambda, std::size_t len) {
  std::vector<int> b(len);
  for (std::size_t i = 0; i < len; ++i) {
    const int part = i < lambda.size() ? lambda[i] : 0;
    b[i] = part + static_cast<int>(len - 1 - i);
  }
  return b;
}

Partition from_beta(std::vector<int> b) {
  std::sort(b.begin(), b.end(), std::greater<>());
  Partition p;
  const std::size_t len = b.size();
  for (std::size_t i = 0; i < len; ++i) {
    const int part = b[i] - static_cast<int>(len - 1 - i);
    if (part > 0) p.push_back(part);
  }
  return p;
}

long mn_rec(const Partition& lambda, const Partition& rho, std::size_t pos,
            std::map<std::pair<Partition, std::size_t>, long>& memo) {
  if (pos == rho.size()) return lambda.empty() ? 1 : 0;
  const auto key = std::make_pair(lambda, pos);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const int k = rho[pos];
  const auto beta = beta_set(lambda, lambda.size() + static_cast<std::size_t>(k));
  const std::set<int> occupied(beta.begin(), beta.end());
  long total = 0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    const int target = beta[i] - k;
    if (target < 0 || occupied.count(target)) continue;
    int between = 0;
    for (int x : beta) between += (x > target && x < beta[i]) ? 1 : 0;
    auto moved = beta;
    moved[i] = target;
    const long sub = mn_rec(from_beta(moved), rho, pos + 1, memo);
    total += (between % 2 ? -sub : sub);
  }
  memo.emplace(key, total);
  return total;
}

}  // namespace

long mn_character(const Partition& lambda, const Partition& rho) {
  if (partition_size(lambda) != partition_size(rho)) {
    throw CoefficientError("character arguments of different sizes");
  }
  std::map<std::pair<Partition, std::size_t>, long> memo;
  return mn_rec(lambda, rho, 0, memo);
}

RayPolynomial schur_in_powersum(const Partition& lambda) {
  RayPolynomial r;
  for (const auto& rho : partitions(partition_size(lambda))) {
    const long chi = mn_character(lambda, rho);
    if (chi != 0) r.add(rho, Coefficient(Rational(chi) / z_factor(rho)));
  }
  return r;
}

std::map<Partition, Rational> powersum_in_schur(const Partition& rho) {
  std::map<Partition, Rational> r;
  for (const auto& lambda : partitions(partition_size(rho))) {
    const long chi = mn_character(lambda, rho);
    if (chi != 0) r.emplace(lambda, Rational(chi));
  }
  return r;
}

std::vector<Tableau> semistandard_tableaux(const Partition& shape, const Partition& content) {
  std::vector<Tableau> out;
  if (partition_size(shape) != partition_size(content)) return out;
  // Add the letters 1, 2, ... one horizontal strip at a time.
  const std::size_t rows = shape.size();
  Tableau t(rows);
  std::function<void(std::size_t)> place_letter;
  std::function<void(std::size_t, std::size_t, int, int)> fill_strip;

  place_letter = [&](std::size_t letter) {
    if (letter == content.size()) {
      out.push_back(t);
      return;
    }
    fill_strip(letter, 0, content[letter], 0);
  };
  // Distribute `left` boxes of the current letter over rows >= row; `prev_len`
  // is the length of row-1 before this letter was added.
  fill_strip = [&](std::size_t letter, std::size_t row, int left, int) {
    if (left == 0) {
      place_letter(letter + 1);
      return;
    }
    if (row >= rows) return;
    const int len = static_cast<int>(t[row].size());
    // Boxes may only sit below filled boxes holding smaller letters.
    int cap = shape[row] - len;
    if (row > 0) {
      int above_old = 0;
      for (int v : t[row - 1]) above_old += v < static_cast<int>(letter) + 1 ? 1 : 0;
      cap = std::min(cap, above_old - len);
    }
    cap = std::min(cap, left);
    for (int k = cap; k >= 0; --k) {
      for (int j = 0; j < k; ++j) t[row].push_back(static_cast<int>(letter) + 1);
      fill_strip(letter, row + 1, left - k, 0);
      t[row].resize(static_cast<std::size_t>(len));
    }
  };
  place_letter(0);
  return out;
}

int charge(const Tableau& t) {
  // Reading word: rows from bottom to top, each left to right.
  std::vector<int> word;
  for (auto it = t.rbegin(); it != t.rend(); ++it) word.insert(word.end(), it->begin(), it->end());
  std::vector<bool> used(word.size(), false);
  std::size_t remaining = word.size();
  int total = 0;
  while (remaining > 0) {
    // Extract one standard subword 1, 2, ..., scanning leftwards cyclically.
    std::size_t pos = word.size();
    int letter = 1;
    int index = 0;
    while (true) {
      bool found = false;
      bool wrapped = false;
      std::size_t i = pos;
      for (std::size_t step = 0; step < word.size(); ++step) {
        if (i == 0) {
          i = word.size();
          wrapped = true;
        }
        --i;
        if (!used[i] && word[i] == letter) {
          found = true;
          break;
        }
      }
      if (!found) break;
      if (letter > 1 && wrapped) ++index;
      total += index;
      used[i] = true;
      --remaining;
      pos = i;
      ++letter;
    }
  }
  return total;
}

Coefficient kostka_foulkes(const Partition& lambda, const Partition& mu) {
  if (partition_size(lambda) != partition_size(mu)) {
    throw CoefficientError("Kostka-Foulkes arguments of different sizes");
  }
  Coefficient k;
  for (const auto& t : semistandard_tableaux(lambda, mu)) k += Coefficient::nu_power(charge(t));
  return k;
}

PartitionMatrix kostka_foulkes_matrix(int n) {
  static std::mutex mu;
  static std::map<int, PartitionMatrix> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  PartitionMatrix m;
  m.index = partitions(n);
  for (const auto& lambda : m.index) {
    std::vector<Coefficient> row;
    for (const auto& nu : m.index) row.push_back(kostka_foulkes(lambda, nu));
    m.entries.push_back(std::move(row));
  }
  std::lock_guard lock(mu);
  cache.emplace(n, m);
  return m;
}

std::vector<std::vector<Coefficient>> invert_unitriangular(const std::vector<std::vector<Coefficient>>& m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!m[i][i].is_one()) throw CoefficientError("matrix is not unitriangular");
    for (std::size_t j = 0; j < i; ++j) {
      if (!m[i][j].is_zero()) throw CoefficientError("matrix is not upper triangular");
    }
  }
  std::vector<std::vector<Coefficient>> inv(n, std::vector<Coefficient>(n));
  for (std::size_t j = 0; j < n; ++j) {
    inv[j][j] = Coefficient(1L);
    for (std::size_t i = j; i-- > 0;) {
      Coefficient s;
      for (std::size_t k = i + 1; k <= j; ++k) s += m[i][k] * inv[k][j];
      inv[i][j] = -s;
    }
  }
  return inv;
}

std::map<Partition, Coefficient> hl_P_in_schur(const Partition& mu) {
  static std::mutex mtx;
  static std::map<int, std::vector<std::vector<Coefficient>>> inverses;
  const int n = partition_size(mu);
  const PartitionMatrix k = kostka_foulkes_matrix(n);
  std::vector<std::vector<Coefficient>> inv;
  {
    std::lock_guard lock(mtx);
    auto it = inverses.find(n);
    if (it == inverses.end()) it = inverses.emplace(n, invert_unitriangular(k.entries)).first;
    inv = it->second;
  }
  const auto pos = std::find(k.index.begin(), k.index.end(), mu);
  if (pos == k.index.end()) throw CoefficientError("not a partition");
  const auto row = static_cast<std::size_t>(pos - k.index.begin());
  std::map<Partition, Coefficient> r;
  for (std::size_t j = 0; j < k.index.size(); ++j) {
    if (!inv[row][j].is_zero()) r.emplace(k.index[j], inv[row][j]);
  }
  return r;
}

RayPolynomial hl_P_in_powersum(const Partition& mu) {
  RayPolynomial r;
  for (const auto& [lambda, c] : hl_P_in_schur(mu)) r += schur_in_powersum(lambda) * c;
  return r;
}

std::vector<RayPolynomial> generator_change_exp(GeneratorChange direction, int max_degree) {
  if (max_degree < 1) throw CoefficientError("max_degree must be positive");
  std::vector<RayPolynomial> out(static_cast<std::size_t>(max_degree) + 1);
  if (direction == GeneratorChange::G_TO_P) {
    // h_r = sum_{|rho| = r} p_rho / z_rho
    for (int r = 1; r <= max_degree; ++r) {
      for (const auto& rho : partitions(r)) {
        out[static_cast<std::size_t>(r)].add(rho, Coefficient(Rational(1) / z_factor(rho)));
      }
    }
    return out;
  }
  // sum_l p_l s^l / l = log(1 + X), X = sum_r h_r s^r, graded by s-degree.
  RayPolynomial x;
  for (int r = 1; r <= max_degree; ++r) x += RayPolynomial::generator(r);
  RayPolynomial log_series;
  RayPolynomial power = RayPolynomial::constant(Coefficient(1L));
  for (int k = 1; k <= max_degree; ++k) {
    power = (power * x).truncate(max_degree);
    const Rational c = Rational(k % 2 ? 1 : -1, k);
    log_series += power * Coefficient(c);
  }
  for (const auto& [m, c] : log_series.terms()) {
    const int deg = partition_size(m);
    out[static_cast<std::size_t>(deg)].add(m, c * Coefficient(Rational(deg)));
  }
  return out;
}

}  // namespace ellhall
