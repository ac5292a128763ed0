#include "ellhall/serialize.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "json.hpp"

namespace ellhall {

using nlohmann::json;

namespace {

json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

mpz_class integer_from(const json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  if (j.is_string()) return mpz_class(j.get<std::string>());
  throw ParseError("expected an integer");
}

json coeff_json(const Coefficient& c) {
  json a = json::array();
  for (const auto& [e, q] : c.terms()) {
    a.push_back({{"s_half", e.a2}, {"sbar_half", e.b2}, {"num", integer_json(q.get_num())},
                 {"den", integer_json(q.get_den())}});
  }
  return a;
}

Coefficient coeff_from(const json& j) {
  if (!j.is_array()) throw ParseError("a coefficient is a list of records");
  Coefficient c;
  for (const auto& t : j) {
    Rational q(integer_from(t.at("num")), integer_from(t.at("den")));
    if (q.get_den() == 0) throw ParseError("zero denominator");
    q.canonicalize();
    c += Coefficient::monomial(t.at("s_half").get<int>(), t.at("sbar_half").get<int>(), q);
  }
  return c;
}

json nt_json(const Coefficient& c) {
  json a = json::array();
  for (const auto& [e, q] : c.nt_form()) {
    a.push_back({{"nu", e.m}, {"t", e.k}, {"num", integer_json(q.get_num())}, {"den", integer_json(q.get_den())}});
  }
  return a;
}

json class_json(const ClassZ& x) { return json::array({x.rank, x.degree}); }

json path_json(const ConvexPath& p) {
  json a = json::array();
  for (const auto& s : p.segments()) a.push_back(class_json(s));
  return a;
}

ClassZ class_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("a class is [rank, degree]");
  return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

ConvexPath path_from(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("a path is a nonempty list of classes");
  std::vector<ClassZ> segs;
  for (const auto& s : j) segs.push_back(class_from(s));
  return ConvexPath::from_segments(std::move(segs));
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string basis_symbol(Basis b) {
  switch (b) {
    case Basis::TTILDE:
      return "\\tilde t";
    case Basis::ONE_SS:
      return "1^{ss}";
    case Basis::BETA:
      return "\\beta";
    case Basis::RHO:
      return "\\rho";
  }
  return "?";
}

std::string path_tex(const ConvexPath& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.segments().size(); ++i) {
    const auto& x = p.segments()[i];
    if (i) s += ",";
    s += "(" + std::to_string(x.rank) + "," + std::to_string(x.degree) + ")";
  }
  return s + ")";
}

std::string coeff_tex(const Coefficient& c) {
  if (c.is_zero()) return "0";
  const bool sum = c.nt_form().size() > 1;
  return sum ? "\\left(" + c.to_tex() + "\\right)" : c.to_tex();
}

std::string header(const std::string& kind, const ClassZ& w, const Slope& f, const std::string& extra) {
  return "# " + kind + " weight " + w.to_string() + " floor " + f.to_string() + extra + "\n";
}

}  // namespace

Format parse_format(const std::string& s) {
  if (s == "json") return Format::JSON;
  if (s == "text") return Format::TEXT;
  if (s == "tex") return Format::TEX;
  throw ParseError("unknown format '" + s + "'");
}

std::string coefficient_to_json(const Coefficient& c) { return coeff_json(c).dump(); }

Coefficient coefficient_from_json(const std::string& doc) {
  try {
    return coeff_from(json::parse(doc));
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

ClassZ parse_class(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw ParseError("expected r,d but got '" + s + "'");
  try {
    std::size_t p1 = 0, p2 = 0;
    const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
    const ClassZ x{std::stoll(a, &p1), std::stoll(b, &p2)};
    if (p1 != a.size() || p2 != b.size()) throw ParseError("bad class '" + s + "'");
    return x;
  } catch (const std::logic_error&) {
    throw ParseError("bad class '" + s + "'");
  }
}

ConvexPath parse_path(const std::string& s) {
  std::vector<ClassZ> segs;
  std::string spaced = s;
  std::replace(spaced.begin(), spaced.end(), ';', ' ');
  std::stringstream ss(spaced);
  std::string part;
  while (ss >> part) segs.push_back(parse_class(part));
  if (segs.empty()) throw ParseError("empty path");
  return ConvexPath::from_segments(std::move(segs));
}

std::string render_paths(const std::vector<ConvexPath>& paths, const ClassZ& weight, const Slope& floor, Format f) {
  if (f == Format::JSON) {
    json a = json::array();
    for (const auto& p : paths) a.push_back(path_json(p));
    return dump({{"weight", class_json(weight)}, {"floor", floor.to_string()}, {"count", paths.size()}, {"paths", a}});
  }
  std::string out;
  if (f == Format::TEXT) {
    out = header("paths", weight, floor, " count " + std::to_string(paths.size()));
    for (const auto& p : paths) out += p.to_string() + "\n";
    return out;
  }
  out = "\\begin{enumerate}\n";
  for (const auto& p : paths) out += "  \\item $" + path_tex(p) + "$\n";
  return out + "\\end{enumerate}\n";
}

std::string render_element(const AlgebraElement& e, Format f) {
  if (f == Format::JSON) {
    json terms = json::array();
    for (const auto& [p, c] : e.terms) terms.push_back({{"path", path_json(p)}, {"coeff", coeff_json(c)}});
    return dump({{"weight", class_json(e.weight)},
                 {"floor", e.floor.to_string()},
                 {"basis", to_string(e.basis)},
                 {"config", e.config_hash},
                 {"terms", terms}});
  }
  if (f == Format::TEXT) {
    std::string out = header("element", e.weight, e.floor, " basis " + to_string(e.basis));
    for (const auto& [p, c] : e.terms) out += c.to_nt_string() + "  " + p.to_string() + "\n";
    return out;
  }
  if (e.terms.empty()) return "$0$\n";
  std::string out = "$";
  bool first = true;
  for (const auto& [p, c] : e.terms) {
    if (!first) out += " + ";
    first = false;
    out += coeff_tex(c) + "\\," + basis_symbol(e.basis) + "_{" + path_tex(p) + "}";
  }
  return out + "$\n";
}

AlgebraElement element_from_json(const std::string& doc) {
  try {
    const json j = json::parse(doc);
    AlgebraElement e;
    e.weight = class_from(j.at("weight"));
    e.floor = Slope::parse(j.at("floor").get<std::string>());
    e.basis = parse_basis(j.value("basis", std::string("ttilde")));
    e.config_hash = j.value("config", std::string());
    for (const auto& t : j.at("terms")) {
      const ConvexPath p = path_from(t.at("path"));
      if (p.weight() != e.weight) throw ParseError("term " + p.to_string() + " has the wrong weight");
      add_term(e.terms, p, coeff_from(t.at("coeff")));
    }
    truncate_terms(e.terms, e.floor);
    return e;
  } catch (const json::exception& ex) {
    throw ParseError(ex.what());
  }
}

std::string render_kostka(const KostkaTable& t, Format f) {
  const std::size_t n = t.paths.size();
  if (f == Format::JSON) {
    json paths = json::array(), entries = json::array(), text = json::array(), boundary = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      paths.push_back(path_json(t.paths[i]));
      json row = json::array(), trow = json::array();
      for (const auto& c : t.entries[i]) {
        row.push_back(nt_json(c));
        trow.push_back(c.to_nt_string());
      }
      entries.push_back(row);
      text.push_back(trow);
      boundary.push_back(static_cast<bool>(t.boundary[i]));
    }
    return dump({{"weight", class_json(t.weight)},
                 {"floor", t.floor.to_string()},
                 {"flavor", to_string(t.flavor)},
                 {"config", t.config_hash},
                 {"paths", paths},
                 {"entries", entries},
                 {"entries_text", text},
                 {"boundary_rows", boundary}});
  }
  if (f == Format::TEXT) {
    std::string out = header("kostka " + to_string(t.flavor), t.weight, t.floor, "");
    for (std::size_t i = 0; i < n; ++i) {
      out += "p" + std::to_string(i + 1) + " = " + t.paths[i].to_string() + (t.boundary[i] ? "  (boundary)" : "") + "\n";
    }
    std::vector<std::vector<std::string>> cells(n + 1, std::vector<std::string>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
      cells[0][i + 1] = cells[i + 1][0] = "p" + std::to_string(i + 1);
      for (std::size_t j = 0; j < n; ++j) cells[i + 1][j + 1] = t.entries[i][j].to_nt_string();
    }
    std::vector<std::size_t> width(n + 1, 0);
    for (const auto& row : cells) {
      for (std::size_t j = 0; j <= n; ++j) width[j] = std::max(width[j], row[j].size());
    }
    for (const auto& row : cells) {
      std::string line;
      for (std::size_t j = 0; j <= n; ++j) {
        line += row[j] + std::string(width[j] - row[j].size(), ' ');
        if (j < n) line += "  ";
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out += line + "\n";
    }
    return out;
  }
  std::string out = "\\[\n\\begin{array}{l|" + std::string(n, 'c') + "}\n";
  for (std::size_t j = 0; j < n; ++j) out += " & " + path_tex(t.paths[j]);
  out += " \\\\ \\hline\n";
  for (std::size_t i = 0; i < n; ++i) {
    out += path_tex(t.paths[i]);
    for (std::size_t j = 0; j < n; ++j) out += " & " + (t.entries[i][j].is_zero() ? "0" : t.entries[i][j].to_tex());
    out += " \\\\\n";
  }
  return out + "\\end{array}\n\\]\n";
}

std::string render_sl2(const Sl2Report& r, Format f) {
  const auto& g = r.gamma;
  std::size_t failed = 0;
  for (const auto& c : r.pairs) failed += c.passed ? 0 : 1;
  if (f == Format::JSON) {
    json pairs = json::array();
    for (const auto& c : r.pairs) {
      pairs.push_back({{"p", path_json(c.p)},
                       {"q", path_json(c.q)},
                       {"gp", path_json(c.gp)},
                       {"gq", path_json(c.gq)},
                       {"value", c.value.to_nt_string()},
                       {"image_value", c.image_value.to_nt_string()},
                       {"passed", c.passed}});
    }
    return dump({{"gamma", json::array({g.a, g.b, g.c, g.d})},
                 {"weight", class_json(r.weight)},
                 {"floor", r.floor.to_string()},
                 {"image_weight", class_json(r.image_weight)},
                 {"image_floor", r.image_floor.to_string()},
                 {"checked", r.pairs.size()},
                 {"failed", failed},
                 {"skipped", r.skipped},
                 {"passed", r.passed()},
                 {"pairs", pairs}});
  }
  std::ostringstream os;
  os << (f == Format::TEX ? "% " : "# ") << "sl2check gamma (" << g.a << "," << g.b << ";" << g.c << "," << g.d
     << ") weight " << r.weight.to_string() << " floor " << r.floor.to_string() << " -> "
     << r.image_weight.to_string() << " floor " << r.image_floor.to_string() << "\n";
  for (const auto& c : r.pairs) {
    if (!c.passed || f == Format::TEXT) {
      os << (c.passed ? "ok   " : "FAIL ") << c.p.to_string() << " " << c.q.to_string() << "  " << c.value.to_nt_string()
         << " | " << c.image_value.to_nt_string() << "\n";
    }
  }
  os << (r.passed() ? "PASS" : "FAIL") << " checked " << r.pairs.size() << " failed " << failed << " skipped "
     << r.skipped << "\n";
  return os.str();
}

std::string render_selftest(const std::vector<SelfTestResult>& results, const std::string& config_hash, Format f) {
  bool all = true;
  for (const auto& r : results) all = all && r.passed;
  if (f == Format::JSON) {
    json checks = json::array();
    for (const auto& r : results) checks.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    return dump({{"config", config_hash}, {"passed", all}, {"checks", checks}});
  }
  std::string out = (f == Format::TEX ? "% selftest config " : "# selftest config ") + config_hash + "\n";
  for (const auto& r : results) out += std::string(r.passed ? "PASS " : "FAIL ") + r.name + ": " + r.detail + "\n";
  return out + (all ? "PASS\n" : "FAIL\n");
}

std::string config_to_json(const RelationConfig& cfg) {
  json theta = json::array(), scale = json::array();
  for (const auto& c : cfg.theta_log) theta.push_back(coeff_json(c));
  for (const auto& c : cfg.ray_scale) scale.push_back(coeff_json(c));
  return dump({{"version", cfg.version}, {"kappa", coeff_json(cfg.kappa)}, {"theta_log", theta}, {"ray_scale", scale}});
}

RelationConfig config_from_json(const std::string& doc) {
  try {
    const json j = json::parse(doc);
    RelationConfig cfg;
    cfg.version = j.at("version").get<std::string>();
    cfg.kappa = coeff_from(j.at("kappa"));
    for (const auto& c : j.at("theta_log")) cfg.theta_log.push_back(coeff_from(c));
    if (j.contains("ray_scale")) {
      for (const auto& c : j.at("ray_scale")) cfg.ray_scale.push_back(coeff_from(c));
    } else {
      cfg.ray_scale = RelationConfig::default_config().ray_scale;
    }
    return cfg;
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
}

RelationConfig load_config(const std::string& source) {
  if (source.empty() || source == "default") return RelationConfig::default_config();
  std::ifstream in(source);
  if (!in) throw ParseError("cannot read config " + source);
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json(ss.str());
}

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ResultCache::file_for(const std::string& key) const {
  return dir_ / (content_digest(key) + ".out");
}

std::optional<std::string> ResultCache::get(const std::string& key) const {
  std::ifstream in(file_for(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::string stored_key;
  if (!std::getline(in, stored_key) || stored_key != key) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void ResultCache::put(const std::string& key, const std::string& content) const {
  std::filesystem::create_directories(dir_);
  const auto target = file_for(key);
  std::random_device rd;
  const auto tmp = dir_ / (target.filename().string() + ".tmp" + std::to_string(rd()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    out << key << "\n" << content;
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace ellhall
