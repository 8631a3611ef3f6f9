#include "app/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "app/svg.hpp"
#include "fracspec/bergman.hpp"
#include "fracspec/charts.hpp"
#include "fracspec/errors.hpp"
#include "fracspec/parallel.hpp"
#include "fracspec/special.hpp"
#include "fracspec/spectral.hpp"
#include "fracspec/toeplitz.hpp"

namespace fracspec::app {

using nlohmann::json;

namespace {

std::string index_label(const MultiIndex& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? " " : "") + std::to_string(a[i]);
  return s;
}

std::string word_label(const Word& w) {
  if (w.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < w.letters().size(); ++i) s += (i ? "." : "") + std::to_string(w.letters()[i]);
  return s;
}

// All multi-indices of length n with total degree <= d, graded.
std::vector<MultiIndex> indices_up_to(int n, int d) {
  std::vector<MultiIndex> out;
  MultiIndex cur(static_cast<std::size_t>(n), 0);
  auto fill = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos + 1 == cur.size()) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur[pos] = k;
      self(self, pos + 1, left - k);
    }
  };
  for (int g = 0; g <= d; ++g) fill(fill, 0, g);
  return out;
}

json bracket_json(const DimensionEstimate& e) { return json::array({e.low, e.high}); }

// Polygon normalized to perimeter 2 pi and the system conjugated to match.
struct Geometry {
  Polygon poly;
  IfsSystem ifs;
};

Geometry geometry(const RunConfig& cfg) {
  Polygon poly = build_polygon(*cfg.polygon);
  IfsSystem ifs = cfg.ifs->rescaled(poly.scale());
  return {std::move(poly), std::move(ifs)};
}

std::vector<Word> words_up_to(std::size_t n_maps, std::size_t max_level, std::uint64_t budget) {
  std::vector<Word> words;
  std::uint64_t total = 0;
  for (std::size_t m = 0; m <= max_level; ++m) {
    total += word_count(n_maps, m);
    if (total > budget) {
      throw ResourceError("word enumeration to level " + std::to_string(max_level) + " exceeds the budget of " +
                          std::to_string(budget));
    }
    for (Word& w : enumerate_words(n_maps, m, budget)) words.push_back(std::move(w));
  }
  return words;
}

// ---------------------------------------------------------------------------

RunResult verify_bergman(const RunConfig& cfg, const VerifyBergmanParams& p) {
  RunResult r;
  CsvTable csv({"n", "m", "K", "alpha", "beta", "residual"});

  struct Case {
    std::size_t basis;
    MultiIndex alpha, beta;
  };
  std::vector<BallBasis> bases;
  std::vector<std::pair<int, double>> basis_keys;
  std::vector<Case> cases;
  for (std::size_t i = 0; i < p.dimensions.size(); ++i) {
    const int n = p.dimensions[i];
    const std::vector<MultiIndex> idx = indices_up_to(n, p.max_degree);
    for (double m : p.weights) {
      bases.emplace_back(n, m, p.cutoffs[i], cfg.budgets.basis);
      basis_keys.emplace_back(n, m);
      for (const MultiIndex& a : idx) {
        for (const MultiIndex& b : idx) {
          if (total_degree(a) + total_degree(b) <= p.max_degree) cases.push_back({bases.size() - 1, a, b});
        }
      }
    }
  }

  std::vector<double> residuals(cases.size());
  parallel_for(cases.size(), cfg.threads, [&](std::size_t i) {
    const Case& c = cases[i];
    residuals[i] = verify_bergman_commutator(bases[c.basis], {{Complex(1.0, 0.0), c.alpha, c.beta}}, p.margin);
  });

  std::vector<double> worst(bases.size(), 0.0);
  std::vector<std::size_t> count(bases.size(), 0);
  json rows = json::array();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Case& c = cases[i];
    const BallBasis& b = bases[c.basis];
    worst[c.basis] = std::max(worst[c.basis], residuals[i]);
    ++count[c.basis];
    csv.cell(b.dimension_n()).cell(b.weight()).cell(b.cutoff()).cell(index_label(c.alpha)).cell(index_label(c.beta))
        .cell(residuals[i]);
    csv.end_row();
    rows.push_back({{"n", b.dimension_n()}, {"m", b.weight()}, {"K", b.cutoff()}, {"alpha", c.alpha},
                    {"beta", c.beta}, {"residual", residuals[i]}});
  }
  json groups = json::array();
  for (std::size_t k = 0; k < bases.size(); ++k) {
    std::ostringstream name;
    name << "bergman commutator residual n=" << basis_keys[k].first << " m=" << format_number(basis_keys[k].second)
         << " K=" << bases[k].cutoff();
    r.checks.push_back(at_most(name.str(), worst[k], p.tolerance));
    groups.push_back({{"n", basis_keys[k].first}, {"m", basis_keys[k].second}, {"K", bases[k].cutoff()},
                      {"cases", count[k]}, {"max_residual", worst[k]}});
  }
  r.results = {{"cases", rows}, {"groups", groups}, {"margin", p.margin}, {"max_degree", p.max_degree}};
  r.artifacts["residuals.csv"] = csv.str();
  return r;
}

RunResult verify_hardy(const RunConfig& cfg, const VerifyHardyParams& p) {
  RunResult r;
  const Geometry g = geometry(cfg);
  const std::vector<Word> words = words_up_to(g.ifs.size(), p.max_word_length, cfg.budgets.words);

  struct Case {
    std::size_t word;
    int a, b;
  };
  std::vector<Case> cases;
  for (std::size_t w = 0; w < words.size(); ++w) {
    for (int d = 1; d <= p.max_degree; ++d) {
      for (int a = d; a >= 0; --a) cases.push_back({w, a, d - a});
    }
  }

  const QuadratureOptions quad{p.quadrature_order, cfg.budgets.harmonics};
  std::vector<double> residuals(cases.size());
  parallel_for(cases.size(), cfg.threads, [&](std::size_t i) {
    const Case& c = cases[i];
    const MobiusChart chart = mobius_chart(g.poly, g.ifs, words[c.word]);
    const HardyTruncation trunc(chart.level(), chart.radius(), p.cutoff);
    residuals[i] = verify_hardy_commutator(BoundaryCurve::from_chart(chart), c.a, c.b, trunc, p.margin, quad);
  });

  CsvTable csv({"word", "level", "a", "b", "residual"});
  json rows = json::array();
  double worst = 0.0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Case& c = cases[i];
    const Word& w = words[c.word];
    worst = std::max(worst, residuals[i]);
    csv.cell(word_label(w)).cell(w.level()).cell(c.a).cell(c.b).cell(residuals[i]);
    csv.end_row();
    rows.push_back({{"word", w.letters()}, {"a", c.a}, {"b", c.b}, {"residual", residuals[i]}});
  }
  r.checks.push_back(at_most("hardy commutator residual", worst, p.tolerance));
  r.results = {{"cases", rows},           {"max_residual", worst},  {"cutoff", p.cutoff},
               {"margin", p.margin},      {"words", words.size()},  {"generator_vertices", g.poly.size()}};
  r.artifacts["residuals.csv"] = csv.str();
  return r;
}

void append_terms(CsvTable& csv, const std::string& label, const ZetaSeries& series, double s, std::size_t levels) {
  for (const LevelTerm& t : zeta_terms(series, s, levels)) {
    csv.cell(label).cell(s).cell(t.level).cell(t.term).cell(t.cumulative);
    csv.end_row();
  }
}

RunResult dimension_fractal(const RunConfig& cfg, const DimensionFractalParams& p) {
  RunResult r;
  const double c = cfg.ifs->ratio();
  const std::size_t n = cfg.ifs->size();
  const double target = hausdorff_dimension(*cfg.ifs);
  const AbscissaOptions options{1e-10, p.level, 200};
  CsvTable csv({"series", "s", "level", "term", "cumulative"});
  json rows = json::array();

  auto record = [&](const std::string& label, json key, const ZetaSeries& series,
                    const std::vector<SpectralBlock>& blocks, const std::vector<SpectralBlock>& next) {
    const DimensionEstimate est = estimate_abscissa(series, p.bracket, options);
    const double lambda_max = complete_spectrum_limit(next);
    const DimensionEstimate count = counting_function_dimension(blocks, lambda_max);
    const Check abscissa = near("abscissa " + label, est.value, target, p.tolerance);
    const Check agree = near("counting fit agrees " + label, count.value, est.value, p.agreement);
    r.checks.push_back(abscissa);
    r.checks.push_back(agree);
    key["estimate"] = est.value;
    key["bracket"] = bracket_json(est);
    key["target"] = target;
    key["tolerance"] = p.tolerance;
    key["pass"] = abscissa.pass;
    key["counting"] = {{"estimate", count.value}, {"bracket", bracket_json(count)}, {"lambda_max", lambda_max},
                       {"levels", p.counting_levels}, {"agreement", p.agreement}, {"pass", agree.pass}};
    rows.push_back(key);
    for (double s : {target - 0.25, target + 0.25}) append_terms(csv, label, series, s, p.level);
  };

  if (p.family == "polygon") {
    for (double ell : p.ells) {
      record("ell=" + format_number(ell), {{"ell", ell}}, fractal_zeta_series(c, n, ell),
             fractal_spectrum(c, n, ell, p.counting_levels),
             {fractal_spectrum(c, n, ell, p.counting_levels + 1).back()});
    }
  } else {
    record("disk", {{"ell", 2.0}}, disk_fractal_zeta_series(c, n), disk_fractal_spectrum(c, n, p.counting_levels),
           {disk_fractal_spectrum(c, n, p.counting_levels + 1).back()});
  }
  r.results = {{"family", p.family}, {"c", c}, {"N", n}, {"hausdorff_dimension", target}, {"estimates", rows}};
  r.artifacts["zeta_terms.csv"] = csv.str();
  return r;
}

// sum_{t >= 1} C(t - 1, n) t^{-s} expanded into zeta values.
double bergman_zeta_closed_form(int n, double s) {
  std::vector<double> poly{1.0};  // coefficients of prod_{i=1..n} (t - i), ascending powers
  for (int i = 1; i <= n; ++i) {
    std::vector<double> next(poly.size() + 1, 0.0);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k];
      next[k] -= i * poly[k];
    }
    poly = std::move(next);
  }
  const double factorial = std::exp(log_factorial(n));
  double total = 0.0;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    total += poly[k] / factorial * std::exp(log_hurwitz_zeta(s - static_cast<double>(k), 1.0));
  }
  return total;
}

RunResult dimension_bergman(const RunConfig&, const DimensionBergmanParams& p) {
  RunResult r;
  const double target = p.n + 1.0;
  const auto blocks = bergman_spectrum(p.n, static_cast<std::size_t>(std::ceil(p.lambda_max)));
  const DimensionEstimate est = counting_function_dimension(blocks, p.lambda_max);
  const Check fit = near("counting fit n=" + std::to_string(p.n), est.value, target, p.tolerance);
  r.checks.push_back(fit);

  const BergmanZetaSum zeta = bergman_zeta_partial(p.n, p.s, p.levels, p.grades);
  const double oracle = bergman_zeta_closed_form(p.n, p.s);
  const Check z = near("zeta completion s=" + format_number(p.s), zeta.completed, oracle, p.zeta_tolerance);
  r.checks.push_back(z);

  CsvTable csv({"lambda", "count"});
  const double lo = p.lambda_max / 100.0;
  for (int i = 0; i <= 50; ++i) {
    const double lambda = lo * std::pow(100.0, i / 50.0);
    csv.cell(lambda).cell(counting_function(blocks, lambda));
    csv.end_row();
  }
  r.results = {{"n", p.n},
               {"estimate", est.value},
               {"bracket", bracket_json(est)},
               {"target", target},
               {"tolerance", p.tolerance},
               {"pass", fit.pass},
               {"lambda_max", p.lambda_max},
               {"zeta", {{"s", p.s},
                         {"partial", zeta.partial},
                         {"tail", zeta.tail},
                         {"completed", zeta.completed},
                         {"closed_form", oracle},
                         {"pass", z.pass}}}};
  r.artifacts["counting.csv"] = csv.str();
  return r;
}

RunResult zeta(const RunConfig& cfg, const ZetaParams& p) {
  RunResult r;
  ZetaSeries series;
  if (p.family == "fractal") {
    series = fractal_zeta_series(cfg.ifs->ratio(), cfg.ifs->size(), p.ell);
  } else if (p.family == "disk-fractal") {
    series = disk_fractal_zeta_series(cfg.ifs->ratio(), cfg.ifs->size());
  } else {
    series = bergman_zeta_series(p.n);
  }
  CsvTable csv({"s", "level", "term", "cumulative"});
  json rows = json::array();
  for (double s : p.s) {
    const std::vector<LevelTerm> terms = zeta_terms(series, s, p.levels);
    bool finite = true;
    for (const LevelTerm& t : terms) {
      finite = finite && std::isfinite(t.log_term);
      csv.cell(s).cell(t.level).cell(t.term).cell(t.cumulative);
      csv.end_row();
    }
    const double ratio = p.levels > 0 ? series.ratio(p.levels - 1, s) : 0.0;
    r.checks.push_back(holds("terms finite s=" + format_number(s), finite));
    json row{{"s", s}, {"partial_sum", terms.back().cumulative}, {"last_ratio", ratio}, {"converging", ratio < 1.0}};
    if (p.family == "bergman" && s > p.n + 1.0) {
      row["completed"] = bergman_zeta_partial(p.n, s, p.levels, 400).completed;
    }
    rows.push_back(row);
  }
  json params(series.parameters);
  r.results = {{"family", series.family}, {"parameters", params}, {"levels", p.levels}, {"values", rows}};
  r.artifacts["zeta_terms.csv"] = csv.str();
  return r;
}

RunResult attractor(const RunConfig& cfg, const AttractorParams& p) {
  RunResult r;
  const Geometry g = geometry(cfg);
  r.artifacts["attractor.svg"] = attractor_svg(g.poly, g.ifs, p.depth, cfg.budgets.words);
  r.artifacts["chart.svg"] = chart_svg(g.poly);
  json per_level = json::array();
  std::uint64_t total = 0;
  for (std::size_t m = 0; m <= p.depth; ++m) {
    per_level.push_back(word_count(g.ifs.size(), m));
    total += word_count(g.ifs.size(), m);
  }
  r.results = {{"depth", p.depth},
               {"polygons_per_level", per_level},
               {"polygons", total},
               {"hausdorff_dimension", hausdorff_dimension(g.ifs)}};
  if (cfg.ifs->osc_candidate()) {
    const OscReport osc = check_open_set_condition(*cfg.ifs);
    r.results["open_set_condition"] = {{"passed", osc.passed()},
                                       {"exact", osc.exact},
                                       {"containment_violations", osc.containment_violations},
                                       {"overlap", osc.pairwise_overlap}};
  }
  return r;
}

Complex eval_hardy(const HardyPolynomial& p, Complex z) {
  Complex v = 0.0;
  for (const HardyMonomial& t : p) v += t.coeff * std::pow(z, t.a) * std::pow(std::conj(z), t.b);
  return v;
}

// sup |p| on the generator boundary, sampled along each edge.
double sup_on_boundary(const Polygon& poly, const HardyPolynomial& p) {
  double sup = 0.0;
  constexpr int kSamples = 4096;
  for (std::size_t j = 0; j < poly.size(); ++j) {
    const Complex a = poly.vertices()[j];
    const Complex b = poly.vertices()[(j + 1) % poly.size()];
    for (int k = 0; k < kSamples; ++k) sup = std::max(sup, std::abs(eval_hardy(p, a + (b - a) * (k / double(kSamples)))));
  }
  return sup;
}

void norm_checks(RunResult& r, const std::string& family, const std::vector<double>& commutators,
                 const std::vector<double>& representations, double sup_bound) {
  const UniformBound comm = uniform_bound_check(commutators);
  const UniformBound rep = uniform_bound_check(representations);
  r.checks.push_back(holds(family + " commutator norms bounded without increasing trend", comm.passed));
  r.checks.push_back(holds(family + " representation norms bounded without increasing trend", rep.passed));
  r.checks.push_back(at_most(family + " representation norms <= sup|p|", rep.sup, sup_bound * (1.0 + 1e-9)));
  r.results["commutator_bound"] = {{"sup", comm.sup}, {"increasing_trend", comm.increasing_trend}, {"pass", comm.passed}};
  r.results["representation_bound"] = {
      {"sup", rep.sup}, {"increasing_trend", rep.increasing_trend}, {"pass", rep.passed}, {"symbol_sup", sup_bound}};
}

void resolvent_checks(RunResult& r, const ResolventDecay& decay, double threshold) {
  r.checks.push_back(holds("resolvent sequence strictly decreasing", decay.strictly_decreasing));
  r.checks.push_back(at_most("resolvent last value", decay.values.empty() ? 0.0 : decay.values.back(), threshold));
  r.results["resolvent"] = {{"values", decay.values},
                            {"strictly_decreasing", decay.strictly_decreasing},
                            {"below_threshold", decay.below_threshold},
                            {"threshold", threshold}};
}

RunResult conditions(const RunConfig& cfg, const ConditionsParams& p) {
  RunResult r;
  CsvTable csv({"level", "alpha", "words", "commutator_norm", "representation_norm", "resolvent"});
  std::vector<double> comm, rep;
  ResolventDecay decay;
  std::vector<double> alphas;
  std::vector<std::size_t> words;

  if (p.family == "bergman") {
    std::vector<ResolventInput> family;
    comm.resize(p.levels + 1);
    rep.resize(p.levels + 1);
    parallel_for(p.levels + 1, cfg.threads, [&](std::size_t m) {
      const BallBasis basis(p.n, static_cast<double>(m), static_cast<int>(p.cutoff), cfg.budgets.basis);
      const Matrix t = toeplitz_polynomial(basis, p.ball_symbol).matrix;
      const double alpha = static_cast<double>(m + 1);
      Matrix c(t.rows(), t.cols());
      for (Eigen::Index j = 0; j < t.cols(); ++j) {
        for (Eigen::Index i = 0; i < t.rows(); ++i) {
          const double di = alpha * (basis.grade(i) + m + p.n + 1.0) / (m + 1.0);
          const double dj = alpha * (basis.grade(j) + m + p.n + 1.0) / (m + 1.0);
          c(i, j) = (di - dj) * t(i, j);
        }
      }
      const NormOptions norm{.seed = cfg.seed, .dense_fallback = true};
      comm[m] = operator_norm(c, norm);
      rep[m] = operator_norm(t, norm);
    });
    for (std::size_t m = 0; m <= p.levels; ++m) {
      alphas.push_back(static_cast<double>(m + 1));
      words.push_back(1);
      family.push_back({static_cast<double>(m + 1), (m + p.n + 1.0) / (m + 1.0)});
    }
    decay = resolvent_decay_check(family, p.threshold);
    double sup = 0.0;
    for (const BallMonomial& t : p.ball_symbol) sup += std::abs(t.coeff);
    norm_checks(r, "bergman", comm, rep, sup);
  } else {
    const Geometry g = geometry(cfg);
    std::vector<std::size_t> levels(p.levels + 1);
    std::iota(levels.begin(), levels.end(), std::size_t{0});
    CommutatorBoundOptions options;
    options.cutoff = p.cutoff;
    options.words_per_level = p.words_per_level;
    options.seed = cfg.seed;
    options.threads = cfg.threads;
    options.quadrature.max_harmonics = cfg.budgets.harmonics;
    options.norm.seed = cfg.seed;
    const std::vector<CommutatorBoundRow> rows =
        commutator_bound_table(g.poly, g.ifs, p.hardy_symbol, p.ell, levels, options);
    std::vector<std::pair<double, DiracDiagonal>> family;
    for (const CommutatorBoundRow& row : rows) {
      comm.push_back(row.max_commutator_norm);
      rep.push_back(row.max_representation_norm);
      alphas.push_back(row.alpha);
      words.push_back(row.words_used);
      const DiracWeights w = fractal_dirac_weights(g.ifs.ratio(), g.ifs.size(), p.ell, row.level);
      family.emplace_back(1.0, dirac_diagonal(w.alpha, w.beta, p.cutoff));
    }
    decay = resolvent_decay_check(family, p.threshold);
    norm_checks(r, "fractal", comm, rep, sup_on_boundary(g.poly, p.hardy_symbol));
    r.results["sampled_levels"] = json::array();
    for (const CommutatorBoundRow& row : rows) {
      if (row.sampled) r.results["sampled_levels"].push_back(row.level);
    }
  }
  resolvent_checks(r, decay, p.threshold);

  for (std::size_t m = 0; m < comm.size(); ++m) {
    csv.cell(m).cell(alphas[m]).cell(words[m]).cell(comm[m]).cell(rep[m]).cell(decay.values[m]);
    csv.end_row();
  }
  r.results["family"] = p.family;
  r.results["levels"] = p.levels;
  r.results["cutoff"] = p.cutoff;
  r.results["commutator_norms"] = comm;
  r.results["representation_norms"] = rep;
  r.results["alpha"] = alphas;
  r.artifacts["norms.csv"] = csv.str();
  return r;
}

}  // namespace

bool RunResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

json RunResult::report(const RunConfig& cfg) const {
  json checks_json = json::array();
  for (const Check& c : checks) checks_json.push_back(to_json(c));
  return {{"experiment", to_string(cfg.experiment)},
          {"name", cfg.name},
          {"seed", cfg.seed},
          {"checks", checks_json},
          {"results", results},
          {"pass", passed()}};
}

RunResult execute(const RunConfig& cfg) {
  return std::visit(
      [&](const auto& p) -> RunResult {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, VerifyBergmanParams>) return verify_bergman(cfg, p);
        if constexpr (std::is_same_v<P, VerifyHardyParams>) return verify_hardy(cfg, p);
        if constexpr (std::is_same_v<P, DimensionFractalParams>) return dimension_fractal(cfg, p);
        if constexpr (std::is_same_v<P, DimensionBergmanParams>) return dimension_bergman(cfg, p);
        if constexpr (std::is_same_v<P, ZetaParams>) return zeta(cfg, p);
        if constexpr (std::is_same_v<P, AttractorParams>) return attractor(cfg, p);
        if constexpr (std::is_same_v<P, ConditionsParams>) return conditions(cfg, p);
      },
      cfg.parameters);
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

void write_outputs(const RunConfig& cfg, const RunResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_file(dir / "report.json", result.report(cfg).dump(2) + "\n");
  write_file(dir / "summary.md", markdown_summary(cfg.name + " (" + to_string(cfg.experiment) + ")", result.checks,
                                                  result.passed()));
  for (const auto& [name, text] : result.artifacts) write_file(dir / name, text);
}

int run_command(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  try {
    RunConfig cfg = load_config(options.config);
    if (options.seed) cfg.seed = *options.seed;
    if (options.threads) {
      if (*options.threads == 0) throw ConfigError("--threads must be >= 1");
      cfg.threads = *options.threads;
    }
    const auto start = std::chrono::steady_clock::now();
    const RunResult result = execute(cfg);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_outputs(cfg, result, options.out);

    for (const Check& c : result.checks) {
      out << (c.pass ? "pass  " : "FAIL  ") << c.name << " = " << format_number(c.value) << "\n";
    }
    out << cfg.name << ": " << (result.passed() ? "all checks passed" : "some checks failed") << " in " << elapsed
        << " s; outputs in " << options.out.string() << "\n";
    if (elapsed > cfg.runtime_budget_seconds) {
      err << "error: run took " << elapsed << " s, over the runtime budget of " << cfg.runtime_budget_seconds
          << " s\n";
      return kResourceExceeded;
    }
    return result.passed() ? kOk : kContractViolation;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigFailure;
  } catch (const DomainError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigFailure;
  } catch (const GeometryError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kConfigFailure;
  } catch (const ResourceError& e) {
    err << "resource budget exceeded: " << e.what() << "\n";
    return kResourceExceeded;
  } catch (const NumericError& e) {
    err << "contract violation: " << e.what() << " (best estimate " << e.best_estimate() << ")\n";
    return kContractViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kContractViolation;
  }
}

}  // namespace fracspec::app
