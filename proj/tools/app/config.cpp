#include "app/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "fracspec/charts.hpp"
#include "fracspec/errors.hpp"
#include "fracspec/spectral.hpp"

namespace fracspec::app {

using nlohmann::json;

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::VerifyBergman: return "verify-bergman";
    case Experiment::VerifyHardy: return "verify-hardy";
    case Experiment::DimensionFractal: return "dimension-fractal";
    case Experiment::DimensionBergman: return "dimension-bergman";
    case Experiment::Zeta: return "zeta";
    case Experiment::Attractor: return "attractor";
    case Experiment::Conditions: return "conditions";
  }
  return "unknown";
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

// Object view that remembers which keys were read so leftovers can be rejected.
class Fields {
 public:
  Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const json& require(const std::string& key) {
    const json* v = find(key);
    if (!v) fail(path_, "missing required field '" + key + "'");
    return *v;
  }

  std::string at(const std::string& key) const { return path_ + "." + key; }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) fail(path_, "unknown field '" + it.key() + "'");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

double as_double(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(path, "expected a finite number");
  return d;
}

std::uint64_t as_unsigned(const json& v, const std::string& path) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  fail(path, "expected a non-negative integer");
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<int>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

Complex as_complex(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) fail(path, "expected [re, im]");
  return {as_double(v[0], path + "[0]"), as_double(v[1], path + "[1]")};
}

std::vector<Complex> as_points(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected a list of [x, y] points");
  std::vector<Complex> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_complex(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

template <typename T, typename Convert>
std::vector<T> as_list(const json& v, const std::string& path, Convert convert) {
  if (!v.is_array() || v.empty()) fail(path, "expected a non-empty list");
  std::vector<T> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(convert(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

template <typename T, typename Convert>
void read(Fields& f, const std::string& key, T& target, Convert convert) {
  if (const json* v = f.find(key)) target = convert(*v, f.at(key));
}

void read_double(Fields& f, const std::string& key, double& target) { read(f, key, target, as_double); }
void read_int(Fields& f, const std::string& key, int& target) { read(f, key, target, as_int); }
void read_string(Fields& f, const std::string& key, std::string& target) { read(f, key, target, as_string); }
void read_size(Fields& f, const std::string& key, std::size_t& target) {
  read(f, key, target, [](const json& v, const std::string& p) { return static_cast<std::size_t>(as_unsigned(v, p)); });
}
void read_u64(Fields& f, const std::string& key, std::uint64_t& target) { read(f, key, target, as_unsigned); }

void require_positive(double v, const std::string& path) {
  if (!(v > 0.0)) fail(path, "must be positive");
}

void require_cutoff(std::size_t k, const std::string& path) {
  if (k < 8) fail(path, "truncation K must be >= 8, got " + std::to_string(k));
}

void require_one_of(const std::string& v, std::initializer_list<const char*> options, const std::string& path) {
  std::string list;
  for (const char* o : options) {
    if (v == o) return;
    list += list.empty() ? o : std::string(", ") + o;
  }
  fail(path, "'" + v + "' is not one of " + list);
}

IfsSystem parse_ifs(const json& j, const std::string& path) {
  Fields f(j, path);
  if (const json* preset = f.find("preset")) {
    const std::string name = as_string(*preset, f.at("preset"));
    if (name != "sierpinski") fail(f.at("preset"), "unknown preset '" + name + "'");
    f.finish();
    return sierpinski_ifs();
  }
  const json& maps_json = f.require("maps");
  if (!maps_json.is_array() || maps_json.empty()) fail(f.at("maps"), "expected a non-empty list");
  std::vector<Similarity> maps;
  for (std::size_t i = 0; i < maps_json.size(); ++i) {
    const std::string p = f.at("maps") + "[" + std::to_string(i) + "]";
    Fields m(maps_json[i], p);
    const Complex a = as_complex(m.require("a"), m.at("a"));
    const Complex b = as_complex(m.require("b"), m.at("b"));
    m.finish();
    if (std::abs(a) == 0.0) fail(m.at("a"), "scale coefficient must be non-zero");
    maps.emplace_back(a, b);
  }
  std::optional<OpenSetCandidate> candidate;
  if (const json* osc = f.find("osc_candidate")) {
    Fields o(*osc, f.at("osc_candidate"));
    const json* disk = o.find("disk");
    const json* poly = o.find("polygon");
    o.finish();
    if ((disk != nullptr) == (poly != nullptr)) fail(f.at("osc_candidate"), "give exactly one of 'disk' or 'polygon'");
    if (disk) {
      Fields d(*disk, o.at("disk"));
      DiskRegion region{as_complex(d.require("center"), d.at("center")), as_double(d.require("radius"), d.at("radius"))};
      d.finish();
      require_positive(region.radius, d.at("radius"));
      candidate = region;
    } else {
      candidate = PolygonRegion{as_points(*poly, o.at("polygon"))};
    }
  }
  f.finish();
  try {
    return IfsSystem(std::move(maps), std::move(candidate));
  } catch (const DomainError& e) {
    fail(path, e.what());
  }
}

std::vector<Complex> parse_polygon(const json& j, const std::string& path) {
  Fields f(j, path);
  std::vector<Complex> vertices;
  if (const json* preset = f.find("preset")) {
    const std::string name = as_string(*preset, f.at("preset"));
    if (name != "sierpinski-triangle") fail(f.at("preset"), "unknown preset '" + name + "'");
    vertices = sierpinski_triangle_vertices();
  } else {
    vertices = as_points(f.require("vertices"), f.at("vertices"));
  }
  f.finish();
  try {
    (void)build_polygon(vertices);
  } catch (const Error& e) {
    fail(path, e.what());
  }
  return vertices;
}

HardyPolynomial parse_hardy_polynomial(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty list of terms");
  HardyPolynomial p;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string tp = path + "[" + std::to_string(i) + "]";
    Fields t(j[i], tp);
    HardyMonomial m;
    if (const json* c = t.find("coeff")) m.coeff = as_complex(*c, t.at("coeff"));
    m.a = as_int(t.require("a"), t.at("a"));
    m.b = as_int(t.require("b"), t.at("b"));
    t.finish();
    if (m.a < 0 || m.b < 0) fail(tp, "powers must be non-negative");
    p.push_back(m);
  }
  return p;
}

BallPolynomial parse_ball_polynomial(const json& j, const std::string& path, int n) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty list of terms");
  BallPolynomial p;
  auto index = [n](const json& v, const std::string& ip) {
    std::vector<int> out = as_list<int>(v, ip, as_int);
    if (static_cast<int>(out.size()) != n) fail(ip, "multi-index length must equal n = " + std::to_string(n));
    for (int a : out) {
      if (a < 0) fail(ip, "powers must be non-negative");
    }
    return out;
  };
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string tp = path + "[" + std::to_string(i) + "]";
    Fields t(j[i], tp);
    BallMonomial m;
    if (const json* c = t.find("coeff")) m.coeff = as_complex(*c, t.at("coeff"));
    m.alpha = index(t.require("alpha"), t.at("alpha"));
    m.beta = index(t.require("beta"), t.at("beta"));
    t.finish();
    p.push_back(std::move(m));
  }
  return p;
}

Experiment parse_experiment(const std::string& s, const std::string& path) {
  for (Experiment e : {Experiment::VerifyBergman, Experiment::VerifyHardy, Experiment::DimensionFractal,
                       Experiment::DimensionBergman, Experiment::Zeta, Experiment::Attractor,
                       Experiment::Conditions}) {
    if (to_string(e) == s) return e;
  }
  fail(path, "unknown experiment '" + s + "'");
}

void check_ell(const RunConfig& cfg, double ell, const std::string& path) {
  const double c = cfg.ifs->ratio();
  const std::size_t n = cfg.ifs->size();
  if (!(c * static_cast<double>(n) > 1.0)) {
    std::ostringstream msg;
    msg << "the system needs cN > 1, got c = " << c << ", N = " << n;
    fail(path, msg.str());
  }
  const double bound = ell_lower_bound(c, n);
  if (!(ell > bound)) {
    std::ostringstream msg;
    msg.precision(10);
    msg << "ell = " << ell << " must exceed log N / log(cN) = " << bound;
    fail(path, msg.str());
  }
}

void need_ifs(const RunConfig& cfg, const std::string& why) {
  if (!cfg.ifs) fail("config", "field 'ifs' is required for " + why);
}

void need_polygon(const RunConfig& cfg, const std::string& why) {
  if (!cfg.polygon) fail("config", "field 'polygon' is required for " + why);
}

void need_consistent_size(const RunConfig& cfg) {
  if (cfg.polygon && cfg.ifs && cfg.polygon->size() < 3) fail("config.polygon", "need at least three vertices");
}

Parameters parse_parameters(RunConfig& cfg, const json* j) {
  static const json empty = json::object();
  Fields f(j ? *j : empty, "config.parameters");
  switch (cfg.experiment) {
    case Experiment::VerifyBergman: {
      VerifyBergmanParams p;
      read(f, "dimensions", p.dimensions, [](const json& v, const std::string& path) { return as_list<int>(v, path, as_int); });
      read(f, "cutoffs", p.cutoffs, [](const json& v, const std::string& path) { return as_list<int>(v, path, as_int); });
      read(f, "weights", p.weights, [](const json& v, const std::string& path) { return as_list<double>(v, path, as_double); });
      read_int(f, "max_degree", p.max_degree);
      read_int(f, "margin", p.margin);
      read_double(f, "tolerance", p.tolerance);
      f.finish();
      if (p.cutoffs.size() != p.dimensions.size()) fail(f.at("cutoffs"), "need one cutoff per dimension");
      for (std::size_t i = 0; i < p.dimensions.size(); ++i) {
        if (p.dimensions[i] < 1) fail(f.at("dimensions"), "n must be >= 1");
        if (p.cutoffs[i] < 8) fail(f.at("cutoffs"), "truncation K must be >= 8, got " + std::to_string(p.cutoffs[i]));
        if (2 * p.margin > p.cutoffs[i]) fail(f.at("margin"), "2 * margin must not exceed K");
        if (2 * p.max_degree > p.cutoffs[i]) fail(f.at("max_degree"), "2 * max_degree must not exceed K");
      }
      for (double m : p.weights) {
        if (!(m > -1.0)) fail(f.at("weights"), "weight exponents must exceed -1");
      }
      if (p.max_degree < 1) fail(f.at("max_degree"), "must be >= 1");
      if (p.margin < p.max_degree) fail(f.at("margin"), "must be >= max_degree");
      require_positive(p.tolerance, f.at("tolerance"));
      return p;
    }
    case Experiment::VerifyHardy: {
      need_ifs(cfg, "verify-hardy");
      need_polygon(cfg, "verify-hardy");
      VerifyHardyParams p;
      read_size(f, "max_word_length", p.max_word_length);
      read_int(f, "max_degree", p.max_degree);
      read_size(f, "cutoff", p.cutoff);
      read_size(f, "margin", p.margin);
      read_size(f, "quadrature_order", p.quadrature_order);
      read_double(f, "tolerance", p.tolerance);
      f.finish();
      require_cutoff(p.cutoff, f.at("cutoff"));
      if (p.max_degree < 1) fail(f.at("max_degree"), "must be >= 1");
      if (p.margin < static_cast<std::size_t>(p.max_degree)) fail(f.at("margin"), "must be >= max_degree");
      if (2 * p.margin > p.cutoff) fail(f.at("margin"), "2 * margin must not exceed K");
      if (p.quadrature_order < 4) fail(f.at("quadrature_order"), "must be >= 4");
      if (p.cutoff + static_cast<std::size_t>(p.max_degree) > cfg.budgets.harmonics) {
        fail(f.at("cutoff"), "K + max_degree exceeds the harmonic budget");
      }
      require_positive(p.tolerance, f.at("tolerance"));
      return p;
    }
    case Experiment::DimensionFractal: {
      need_ifs(cfg, "dimension-fractal");
      DimensionFractalParams p;
      read_string(f, "family", p.family);
      read(f, "ells", p.ells, [](const json& v, const std::string& path) { return as_list<double>(v, path, as_double); });
      read(f, "bracket", p.bracket, [](const json& v, const std::string& path) {
        const auto b = as_list<double>(v, path, as_double);
        if (b.size() != 2 || !(b[0] < b[1])) fail(path, "expected [low, high] with low < high");
        return std::pair<double, double>{b[0], b[1]};
      });
      read_size(f, "level", p.level);
      read_double(f, "tolerance", p.tolerance);
      read_size(f, "counting_levels", p.counting_levels);
      read_double(f, "agreement", p.agreement);
      f.finish();
      require_one_of(p.family, {"polygon", "disk"}, f.at("family"));
      if (p.family == "polygon") {
        for (double ell : p.ells) check_ell(cfg, ell, f.at("ells"));
      } else if (!disk_fractal_admissible(cfg.ifs->ratio(), cfg.ifs->size())) {
        std::ostringstream msg;
        msg << "disk family needs c^2 N > 1, got " << cfg.ifs->ratio() * cfg.ifs->ratio() * cfg.ifs->size();
        fail(f.at("family"), msg.str());
      }
      if (p.level < 1) fail(f.at("level"), "must be >= 1");
      if (p.counting_levels < 1 || p.counting_levels > 60) fail(f.at("counting_levels"), "must lie in 1..60");
      require_positive(p.tolerance, f.at("tolerance"));
      require_positive(p.agreement, f.at("agreement"));
      return p;
    }
    case Experiment::DimensionBergman: {
      DimensionBergmanParams p;
      read_int(f, "n", p.n);
      read_double(f, "lambda_max", p.lambda_max);
      read_double(f, "tolerance", p.tolerance);
      read_double(f, "s", p.s);
      read_size(f, "levels", p.levels);
      read_size(f, "grades", p.grades);
      read_double(f, "zeta_tolerance", p.zeta_tolerance);
      f.finish();
      if (p.n < 1 || p.n > 8) fail(f.at("n"), "must lie in 1..8");
      if (!(p.lambda_max >= 100.0) || p.lambda_max > 1e6) fail(f.at("lambda_max"), "must lie in [100, 1e6]");
      if (!(p.s > p.n + 1.0)) fail(f.at("s"), "the zeta check needs s > n + 1");
      require_positive(p.tolerance, f.at("tolerance"));
      require_positive(p.zeta_tolerance, f.at("zeta_tolerance"));
      return p;
    }
    case Experiment::Zeta: {
      ZetaParams p;
      read_string(f, "family", p.family);
      read(f, "s", p.s, [](const json& v, const std::string& path) { return as_list<double>(v, path, as_double); });
      read_size(f, "levels", p.levels);
      read_double(f, "ell", p.ell);
      read_int(f, "n", p.n);
      f.finish();
      require_one_of(p.family, {"fractal", "disk-fractal", "bergman"}, f.at("family"));
      if (p.family != "bergman") need_ifs(cfg, "the " + p.family + " zeta family");
      if (p.family == "fractal") check_ell(cfg, p.ell, f.at("ell"));
      if (p.family == "bergman" && p.n < 1) fail(f.at("n"), "must be >= 1");
      for (double s : p.s) {
        if (!(s > 1.0)) fail(f.at("s"), "every s must exceed 1");
      }
      if (p.levels > 10000) fail(f.at("levels"), "at most 10000 levels");
      return p;
    }
    case Experiment::Attractor: {
      need_ifs(cfg, "attractor");
      need_polygon(cfg, "attractor");
      AttractorParams p;
      read_size(f, "depth", p.depth);
      f.finish();
      return p;
    }
    case Experiment::Conditions: {
      ConditionsParams p;
      read_string(f, "family", p.family);
      read_size(f, "levels", p.levels);
      read_int(f, "n", p.n);
      read_double(f, "ell", p.ell);
      read_size(f, "cutoff", p.cutoff);
      read_u64(f, "words_per_level", p.words_per_level);
      read_double(f, "threshold", p.threshold);
      const json* symbol = f.find("symbol");
      f.finish();
      require_one_of(p.family, {"bergman", "fractal"}, f.at("family"));
      require_cutoff(p.cutoff, f.at("cutoff"));
      require_positive(p.threshold, f.at("threshold"));
      if (p.words_per_level == 0) fail(f.at("words_per_level"), "must be positive");
      if (p.family == "fractal") {
        need_ifs(cfg, "fractal conditions");
        need_polygon(cfg, "fractal conditions");
        check_ell(cfg, p.ell, f.at("ell"));
        if (symbol) p.hardy_symbol = parse_hardy_polynomial(*symbol, f.at("symbol"));
      } else {
        if (p.n < 1) fail(f.at("n"), "must be >= 1");
        if (symbol) {
          p.ball_symbol = parse_ball_polynomial(*symbol, f.at("symbol"), p.n);
        } else {
          MultiIndex z1(static_cast<std::size_t>(p.n), 0);
          z1[0] = 1;
          p.ball_symbol = {{Complex(1.0, 0.0), z1, MultiIndex(static_cast<std::size_t>(p.n), 0)}};
        }
        if (2 * total_degree(p.ball_symbol) > static_cast<int>(p.cutoff)) {
          fail(f.at("symbol"), "symbol degree exceeds K / 2");
        }
      }
      return p;
    }
  }
  fail("config.experiment", "unsupported experiment");
}

}  // namespace

RunConfig parse_config(const json& doc) {
  Fields f(doc, "config");
  RunConfig cfg;
  cfg.experiment = parse_experiment(as_string(f.require("experiment"), f.at("experiment")), f.at("experiment"));
  cfg.name = to_string(cfg.experiment);
  read_string(f, "name", cfg.name);
  read_u64(f, "seed", cfg.seed);
  read_size(f, "threads", cfg.threads);
  read_double(f, "runtime_budget_seconds", cfg.runtime_budget_seconds);
  if (const json* b = f.find("budgets")) {
    Fields bf(*b, f.at("budgets"));
    read_u64(bf, "words", cfg.budgets.words);
    read_u64(bf, "basis", cfg.budgets.basis);
    read_size(bf, "harmonics", cfg.budgets.harmonics);
    bf.finish();
    if (cfg.budgets.words == 0 || cfg.budgets.basis == 0 || cfg.budgets.harmonics == 0) {
      fail(f.at("budgets"), "budgets must be positive");
    }
  }
  if (const json* i = f.find("ifs")) cfg.ifs = parse_ifs(*i, f.at("ifs"));
  if (const json* p = f.find("polygon")) cfg.polygon = parse_polygon(*p, f.at("polygon"));
  const json* params = f.find("parameters");
  f.finish();
  if (cfg.threads == 0) fail(f.at("threads"), "must be >= 1");
  require_positive(cfg.runtime_budget_seconds, f.at("runtime_budget_seconds"));
  need_consistent_size(cfg);
  cfg.parameters = parse_parameters(cfg, params);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

}  // namespace fracspec::app
