// ellhall: tables and elements of the positive elliptic Hall algebra.
//
// Exit status: 0 ok, 1 invalid input, 2 the relation config failed its
// checks, 3 an internal invariant broke.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ellhall/serialize.hpp"

using namespace ellhall;

namespace {

struct Options {
  std::string weight;
  std::string floor;
  std::string basis = "ttilde";
  std::string from = "ttilde";
  std::string flavor = "plain";
  std::string config = "default";
  std::string format = "json";
  std::string cache;
  std::string path;
  std::string gamma = "1,0,0,1";
  std::vector<std::string> inputs;
  unsigned jobs = 1;
};

struct ConfigFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& name) {
  if (name == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(name);
  if (!in) throw ParseError("cannot read " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ClassZ weight_of(const Options& o) {
  if (o.weight.empty()) throw ParseError("--weight is required");
  const ClassZ w = parse_class(o.weight);
  if (!w.in_positive_cone()) throw ParseError("weight " + w.to_string() + " is not in the positive cone");
  return w;
}

// Default floor: two below the slope of the weight, or 0 on the vertical ray.
Slope floor_of(const Options& o, const ClassZ& w) {
  Slope f;
  if (!o.floor.empty()) {
    f = Slope::parse(o.floor);
  } else if (w.rank == 0) {
    f = Slope::integer(0);
  } else {
    f = slope(w).minus(Slope::integer(2));
  }
  if (f.is_unbounded()) throw ParseError("the floor must be a rational or inf");
  if (slope(w) < f) throw ParseError("floor " + f.to_string() + " is above the slope of " + w.to_string());
  return f;
}

SL2Matrix gamma_of(const Options& o) {
  std::vector<std::int64_t> v;
  std::stringstream ss(o.gamma);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      v.push_back(std::stoll(part));
    } catch (const std::logic_error&) {
      throw ParseError("bad --gamma entry '" + part + "'");
    }
  }
  if (v.size() != 4) throw ParseError("--gamma takes a,b,c,d");
  return {v[0], v[1], v[2], v[3]};
}

class Runner {
 public:
  explicit Runner(const Options& o)
      : o_(o),
        fmt_(parse_format(o.format)),
        engine_(engine_for(load_config(o.config))),
        h_(engine_),
        cb_(h_, o.jobs) {}

  // Produces the output document, going through the cache for pure jobs.
  std::string run(const std::string& command) {
    const std::string key = cache_key(command);
    std::optional<ResultCache> cache;
    if (!key.empty()) {
      const char* env = std::getenv("ELLHALL_CACHE");
      const std::string dir = env && *env ? env : o_.cache;
      if (!dir.empty()) cache.emplace(dir);
    }
    if (cache) {
      if (auto hit = cache->get(key)) return *hit;
    }
    const std::string out = compute(command);
    if (cache) cache->put(key, out);
    return out;
  }

 private:
  std::string cache_key(const std::string& command) const {
    if (command != "paths" && command != "canonical" && command != "kostka" && command != "sl2check") return {};
    std::string k = command + "|" + o_.weight + "|" + o_.floor + "|" + o_.flavor + "|" + engine_->config_hash() +
                    "|" + ELLHALL_VERSION + "|" + o_.format;
    if (command == "canonical") k += "|" + o_.path + "|" + o_.basis;
    if (command == "sl2check") k += "|" + o_.gamma;
    return k;
  }

  AlgebraElement input_element() const {
    if (!o_.inputs.empty()) {
      AlgebraElement e = element_from_json(read_file(o_.inputs.front()));
      if (!e.config_hash.empty() && e.config_hash != engine_->config_hash()) {
        throw ParseError("element was computed with config " + e.config_hash);
      }
      e.config_hash = engine_->config_hash();
      return e;
    }
    if (o_.path.empty()) throw ParseError("give an element file or --path");
    const ConvexPath p = parse_path(o_.path);
    return h_.basis_vector(parse_basis(o_.from), p, floor_of(o_, p.weight()));
  }

  std::string compute(const std::string& command) {
    if (command == "paths") {
      const ClassZ w = weight_of(o_);
      const Slope f = floor_of(o_, w);
      return render_paths(enumerate_paths(w, f), w, f, fmt_);
    }
    if (command == "mul") {
      if (o_.inputs.size() != 2) throw ParseError("mul takes two element files");
      AlgebraElement a = element_from_json(read_file(o_.inputs[0]));
      AlgebraElement b = element_from_json(read_file(o_.inputs[1]));
      for (auto* e : {&a, &b}) {
        if (e->config_hash.empty()) e->config_hash = engine_->config_hash();
      }
      return render_element(h_.convert(h_.mul(a, b), parse_basis(o_.basis)), fmt_);
    }
    if (command == "convert") {
      return render_element(h_.convert(input_element(), parse_basis(o_.basis)), fmt_);
    }
    if (command == "bar") {
      return render_element(cb_.bar_element(input_element()), fmt_);
    }
    if (command == "canonical") {
      if (o_.path.empty()) throw ParseError("--path is required");
      const ConvexPath p = parse_path(o_.path);
      const Slope f = floor_of(o_, p.weight());
      if (p.first_slope() < f) throw ParseError("path starts below the floor");
      const Basis b = o_.basis == "ttilde" ? Basis::BETA : parse_basis(o_.basis);
      return render_element(h_.convert(cb_.canonical_element(p, f), b), fmt_);
    }
    if (command == "kostka") {
      const ClassZ w = weight_of(o_);
      return render_kostka(cb_.kostka_table(w, floor_of(o_, w), parse_flavor(o_.flavor)), fmt_);
    }
    if (command == "sl2check") {
      const ClassZ w = weight_of(o_);
      return render_sl2(cb_.sl2_invariance_check(gamma_of(o_), w, floor_of(o_, w), parse_flavor(o_.flavor)), fmt_);
    }
    if (command == "selftest") {
      const auto results = relation_selftest(*engine_);
      const std::string out = render_selftest(results, engine_->config_hash(), fmt_);
      for (const auto& r : results) {
        if (!r.passed) throw ConfigFailure(out);
      }
      return out;
    }
    throw ParseError("unknown command " + command);
  }

  const Options& o_;
  Format fmt_;
  std::shared_ptr<RelationEngine> engine_;
  mutable HallAlgebra h_;
  CanonicalBasis cb_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Canonical bases and elliptic Kostka polynomials of the elliptic Hall algebra"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "relation config document, or 'default'");
    sub->add_option("--format", o.format, "json | text | tex")->check(CLI::IsMember({"json", "text", "tex"}));
    sub->add_option("--cache", o.cache, "cache directory (ELLHALL_CACHE overrides)");
    sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1u, 256u));
    return sub;
  };
  auto weighted = [&](CLI::App* sub) {
    sub->add_option("--weight", o.weight, "class r,d")->required();
    sub->add_option("--floor", o.floor, "lowest first slope: rational d/r or inf");
    return common(sub);
  };

  weighted(app.add_subcommand("paths", "convex paths of a weight above a floor"));
  auto* mul = common(app.add_subcommand("mul", "product of two element documents"));
  mul->add_option("inputs", o.inputs, "two element files")->expected(2)->required();
  mul->add_option("--basis", o.basis, "output basis");
  for (const char* name : {"convert", "bar"}) {
    auto* sub = common(app.add_subcommand(name, std::string(name) == "bar" ? "bar involution of an element"
                                                                         : "change of basis of an element"));
    sub->add_option("inputs", o.inputs, "element file ('-' for stdin)")->expected(0, 1);
    sub->add_option("--path", o.path, "use the basis vector of this path, r,d;r,d;...");
    sub->add_option("--from", o.from, "basis of --path");
    sub->add_option("--floor", o.floor, "floor for --path");
    if (std::string(name) == "convert") sub->add_option("--basis", o.basis, "target basis")->required();
  }
  auto* canon = common(app.add_subcommand("canonical", "canonical basis element b_p"));
  canon->add_option("--path", o.path, "path r,d;r,d;... or r,d r,d ...")->required();
  canon->add_option("--floor", o.floor, "floor");
  canon->add_option("--basis", o.basis, "output basis (default beta)");
  auto* kostka = weighted(app.add_subcommand("kostka", "elliptic Kostka table"));
  kostka->add_option("--flavor", o.flavor, "tilde | plain");
  auto* sl2 = weighted(app.add_subcommand("sl2check", "SL(2,Z) invariance of the Kostka table"));
  sl2->add_option("--gamma", o.gamma, "matrix a,b,c,d");
  sl2->add_option("--flavor", o.flavor, "tilde | plain");
  common(app.add_subcommand("selftest", "validate the relation config"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Runner runner(o);
    std::cout << runner.run(command);
    return 0;
  } catch (const ConfigFailure& e) {
    std::cout << e.what();
    return 2;
  } catch (const ConfigIncoherent& e) {
    std::cerr << "config: " << e.what() << "\n";
    return 2;
  } catch (const SplitObstruction& e) {
    std::cerr << "invariant: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "invariant: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
