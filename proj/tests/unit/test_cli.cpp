#include <cmath>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "app/config.hpp"
#include "app/run.hpp"
#include "doctest.h"
#include "fracspec/errors.hpp"

using namespace fracspec;
using namespace fracspec::app;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

const fs::path kConfigs = FRACSPEC_CONFIG_DIR;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "fracspec_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const std::string& name, const json& doc) {
  const fs::path path = scratch(name) / "config.json";
  std::ofstream(path) << doc.dump(2);
  return path;
}

struct Outcome {
  int code;
  std::string out, err;
  fs::path dir;
};

Outcome run(const fs::path& config, const std::string& tag, std::optional<std::size_t> threads = std::nullopt) {
  CommandOptions options;
  options.config = config;
  options.out = scratch(tag + "_out");
  options.threads = threads;
  std::ostringstream out, err;
  const int code = run_command(options, out, err);
  return {code, out.str(), err.str(), options.out};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

json load_json(const fs::path& p) { return json::parse(slurp(p)); }

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

json sierpinski_zeta(double ell) {
  return {{"experiment", "zeta"},
          {"ifs", {{"preset", "sierpinski"}}},
          {"parameters", {{"family", "fractal"}, {"ell", ell}, {"s", {2.0}}}}};
}

json attractor_doc(std::size_t depth) {
  return {{"experiment", "attractor"},
          {"ifs", {{"preset", "sierpinski"}}},
          {"polygon", {{"preset", "sierpinski-triangle"}}},
          {"parameters", {{"depth", depth}}}};
}

}  // namespace

TEST_CASE("strict config schema") {
  SUBCASE("defaults fill in") {
    const RunConfig cfg = parse_config(sierpinski_zeta(3.0));
    CHECK(cfg.experiment == Experiment::Zeta);
    CHECK(cfg.name == "zeta");
    CHECK(cfg.seed == 1);
    CHECK(cfg.threads == 1);
    CHECK(std::get<ZetaParams>(cfg.parameters).levels == 20);
  }
  SUBCASE("unknown fields are rejected with their path") {
    json doc = sierpinski_zeta(3.0);
    doc["colour"] = "red";
    CHECK_THROWS_WITH_AS(parse_config(doc), doctest::Contains("unknown field 'colour'"), ConfigError);
    doc = sierpinski_zeta(3.0);
    doc["parameters"]["tolerence"] = 0.1;
    CHECK_THROWS_WITH_AS(parse_config(doc), doctest::Contains("config.parameters"), ConfigError);
    doc = sierpinski_zeta(3.0);
    doc["ifs"]["scale"] = 2;
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
  }
  SUBCASE("types and ranges") {
    json doc = sierpinski_zeta(3.0);
    doc["seed"] = -1;
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
    doc = sierpinski_zeta(3.0);
    doc["threads"] = 0;
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
    doc = sierpinski_zeta(3.0);
    doc["parameters"]["s"] = "two";
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
    doc = sierpinski_zeta(3.0);
    doc["budgets"] = {{"words", 0}};
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"experiment", "sing"}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"name", "x"}}), ConfigError);
  }
  SUBCASE("truncation K >= 8") {
    json doc{{"experiment", "verify-bergman"}, {"parameters", {{"dimensions", {1}}, {"cutoffs", {7}}}}};
    CHECK_THROWS_WITH_AS(parse_config(doc), doctest::Contains("K must be >= 8"), ConfigError);
    doc = {{"experiment", "conditions"}, {"parameters", {{"cutoff", 4}}}};
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
  }
  SUBCASE("required geometry") {
    CHECK_THROWS_WITH_AS(parse_config(json{{"experiment", "attractor"}, {"ifs", {{"preset", "sierpinski"}}}}),
                         doctest::Contains("polygon"), ConfigError);
    json clockwise = attractor_doc(1);
    clockwise["polygon"] = {{"vertices", {{0, 0}, {0, 1}, {1, 1}, {1, 0}}}};
    CHECK_THROWS_AS(parse_config(clockwise), ConfigError);
  }
  SUBCASE("user maps with a disk candidate") {
    json doc = sierpinski_zeta(3.0);
    doc["ifs"] = {{"maps", {{{"a", {0.5, 0}}, {"b", {0, 0}}}, {{"a", {0.5, 0}}, {"b", {0.5, 0}}}}},
                  {"osc_candidate", {{"disk", {{"center", {0.5, 0}}, {"radius", 0.5}}}}}};
    doc["parameters"]["ell"] = 10.0;
    CHECK_THROWS_AS(parse_config(doc), ConfigError);  // cN = 1
    doc["ifs"]["maps"].push_back({{"a", {0.5, 0}}, {"b", {0.25, 0.5}}});
    const RunConfig cfg = parse_config(doc);
    CHECK(cfg.ifs->size() == 3);
    CHECK(cfg.ifs->osc_candidate().has_value());
  }
}

TEST_CASE("ell below the admissibility bound exits 3 and prints the bound") {
  const double bound = std::log(3.0) / std::log(1.5);
  const Outcome o = run(write_config("bad_ell", sierpinski_zeta(2.5)), "bad_ell");
  CHECK(o.code == kConfigFailure);
  CHECK(o.err.find("2.709511291") != std::string::npos);
  CHECK(o.err.find("ell = 2.5") != std::string::npos);
  CHECK(bound == doctest::Approx(2.709511291));

  json dim{{"experiment", "dimension-fractal"},
           {"ifs", {{"preset", "sierpinski"}}},
           {"parameters", {{"ells", {3.0, 2.0}}}}};
  CHECK(run(write_config("bad_ell_dim", dim), "bad_ell_dim").code == kConfigFailure);
}

TEST_CASE("other exit codes") {
  SUBCASE("unknown field") {
    json doc = sierpinski_zeta(3.0);
    doc["extra"] = true;
    const Outcome o = run(write_config("unknown", doc), "unknown");
    CHECK(o.code == kConfigFailure);
    CHECK(o.err.find("extra") != std::string::npos);
  }
  SUBCASE("malformed json and missing file") {
    const fs::path path = scratch("malformed") / "config.json";
    std::ofstream(path) << "{\"experiment\": ";
    CHECK(run(path, "malformed").code == kConfigFailure);
    CHECK(run(scratch("missing") / "none.json", "missing").code == kConfigFailure);
  }
  SUBCASE("inadmissible disk family") {
    json doc{{"experiment", "dimension-fractal"},
             {"ifs", {{"preset", "sierpinski"}}},
             {"parameters", {{"family", "disk"}}}};
    const Outcome o = run(write_config("disk_bad", doc), "disk_bad");
    CHECK(o.code == kConfigFailure);
    CHECK(o.err.find("c^2 N > 1") != std::string::npos);
  }
  SUBCASE("word budget") {
    json doc = attractor_doc(6);
    doc["budgets"] = {{"words", 100}};
    const Outcome o = run(write_config("budget", doc), "budget");
    CHECK(o.code == kResourceExceeded);
    CHECK(o.err.find("budget") != std::string::npos);
  }
  SUBCASE("residual above tolerance") {
    json doc{{"experiment", "verify-bergman"},
             {"parameters", {{"dimensions", {1}}, {"cutoffs", {40}}, {"weights", {5}}, {"tolerance", 1e-300}}}};
    const Outcome o = run(write_config("strict_tol", doc), "strict_tol");
    CHECK(o.code == kContractViolation);
    CHECK(load_json(o.dir / "report.json")["pass"] == false);
  }
}

TEST_CASE("bundled sierpinski-dimension") {
  const Outcome o = run(kConfigs / "sierpinski-dimension.json", "sierpinski_dimension");
  REQUIRE(o.code == kOk);
  const json report = load_json(o.dir / "report.json");
  CHECK(report["experiment"] == "dimension-fractal");
  CHECK(report["pass"] == true);
  const double target = std::log(3.0) / std::log(2.0);
  CHECK(report["results"]["estimates"].size() == 2);
  for (const json& e : report["results"]["estimates"]) {
    CHECK(std::abs(e["estimate"].get<double>() - 1.585) <= 0.01);
    CHECK(std::abs(e["target"].get<double>() - target) <= 1e-15);
    CHECK(e["bracket"].size() == 2);
    CHECK(e["bracket"][0].get<double>() <= e["estimate"].get<double>());
    CHECK(e["estimate"].get<double>() <= e["bracket"][1].get<double>());
    CHECK(e["pass"] == true);
  }
  const std::string csv = slurp(o.dir / "zeta_terms.csv");
  CHECK(csv.rfind("series,s,level,term,cumulative\n", 0) == 0);
  CHECK(fs::exists(o.dir / "summary.md"));
  CHECK(slurp(o.dir / "summary.md").find("| abscissa ell=3 |") != std::string::npos);
}

TEST_CASE("bundled bergman-commutator-n1") {
  const Outcome o = run(kConfigs / "bergman-commutator-n1.json", "bergman_n1");
  REQUIRE(o.code == kOk);
  const json report = load_json(o.dir / "report.json");
  const json& cases = report["results"]["cases"];
  CHECK(cases.size() == 3 * 15);  // weights x {(a, b) : a + b <= 4}
  for (const json& c : cases) CHECK(c["residual"].get<double>() <= 1e-12);
  CHECK(report["checks"].size() == 3);
}

TEST_CASE("every bundled config parses") {
  std::size_t count = 0;
  for (const auto& entry : fs::directory_iterator(kConfigs)) {
    if (entry.path().extension() != ".json") continue;
    CAPTURE(entry.path().string());
    CHECK_NOTHROW(load_config(entry.path()));
    ++count;
  }
  CHECK(count >= 10);
}

TEST_CASE("determinism across runs and thread counts") {
  SUBCASE("hardy verification") {
    json doc = json::parse(slurp(kConfigs / "hardy-triangle.json"));
    doc["parameters"]["max_word_length"] = 1;
    doc["parameters"]["cutoff"] = 32;
    const fs::path path = write_config("det_hardy", doc);
    const Outcome a = run(path, "det_hardy_1", 1);
    const Outcome b = run(path, "det_hardy_3", 3);
    REQUIRE(a.code == kOk);
    CHECK(slurp(a.dir / "report.json") == slurp(b.dir / "report.json"));
    CHECK(slurp(a.dir / "residuals.csv") == slurp(b.dir / "residuals.csv"));
  }
  SUBCASE("sampled word subsets") {
    json doc = json::parse(slurp(kConfigs / "conditions-fractal.json"));
    doc["parameters"]["levels"] = 3;
    doc["parameters"]["words_per_level"] = 5;
    doc["parameters"]["cutoff"] = 16;
    const fs::path path = write_config("det_cond", doc);
    const Outcome a = run(path, "det_cond_1", 1);
    const Outcome b = run(path, "det_cond_3", 3);
    const Outcome c = run(path, "det_cond_1b", 1);
    const std::string ra = slurp(a.dir / "report.json");
    CHECK(ra == slurp(b.dir / "report.json"));
    CHECK(ra == slurp(c.dir / "report.json"));
    CHECK(load_json(a.dir / "report.json")["results"]["sampled_levels"] == json::array({2, 3}));
  }
  SUBCASE("seed override is recorded") {
    CommandOptions options;
    options.config = kConfigs / "sierpinski-zeta.json";
    options.out = scratch("seed_out");
    options.seed = 99;
    std::ostringstream out, err;
    REQUIRE(run_command(options, out, err) == kOk);
    CHECK(load_json(options.out / "report.json")["seed"] == 99);
  }
}

TEST_CASE("attractor figures") {
  SUBCASE("sierpinski depth 2: 1 + 3 + 9 triangles") {
    const Outcome o = run(kConfigs / "sierpinski-attractor.json", "svg_sierpinski");
    REQUIRE(o.code == kOk);
    const std::string svg = slurp(o.dir / "attractor.svg");
    CHECK(count_of(svg, "<polygon") == 13);
    CHECK(count_of(svg, "data-level=\"0\"") == 1);
    CHECK(count_of(svg, "data-level=\"1\"") == 3);
    CHECK(count_of(svg, "data-level=\"2\"") == 9);
    const json report = load_json(o.dir / "report.json");
    CHECK(report["results"]["polygons"] == 13);
    CHECK(report["results"]["open_set_condition"]["passed"] == true);
  }
  SUBCASE("depth 0: the generator alone") {
    const Outcome o = run(write_config("svg_depth0", attractor_doc(0)), "svg_depth0");
    REQUIRE(o.code == kOk);
    CHECK(count_of(slurp(o.dir / "attractor.svg"), "<polygon") == 1);
  }
  SUBCASE("square quadrants: four sub-squares at depth 1") {
    const Outcome o = run(kConfigs / "square-attractor.json", "svg_square");
    REQUIRE(o.code == kOk);
    const std::string svg = slurp(o.dir / "attractor.svg");
    CHECK(count_of(svg, "data-level=\"1\"") == 4);
    // Each sub-square has four corners; together they tile the level-1 panel.
    std::regex poly_re("data-level=\"1\"[^>]*points=\"([^\"]*)\"");
    std::set<std::string> distinct;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), poly_re); it != std::sregex_iterator(); ++it) {
      const std::string pts = (*it)[1];
      CHECK(count_of(pts, ",") == 4);
      distinct.insert(pts);
    }
    CHECK(distinct.size() == 4);
  }
  SUBCASE("chart diagram marks every arc endpoint") {
    const Outcome o = run(kConfigs / "square-attractor.json", "svg_chart");
    const std::string svg = slurp(o.dir / "chart.svg");
    CHECK(count_of(svg, "class=\"arc-endpoint\"") == 4);
    CHECK(count_of(svg, "class=\"vertex\"") == 4);
  }
}

TEST_CASE("report layouts") {
  SUBCASE("conditions: resolvent sequence and sup tables") {
    const Outcome o = run(kConfigs / "conditions-bergman.json", "cond_bergman");
    REQUIRE(o.code == kOk);
    const json r = load_json(o.dir / "report.json")["results"];
    const json& values = r["resolvent"]["values"];
    CHECK(values.size() == 13);
    CHECK(values[0].get<double>() == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-14));
    CHECK(r["commutator_bound"].contains("sup"));
    CHECK(r["representation_bound"].contains("sup"));
  }
  SUBCASE("dimension-bergman") {
    const Outcome o = run(kConfigs / "bergman-dimension.json", "dim_bergman");
    REQUIRE(o.code == kOk);
    const json r = load_json(o.dir / "report.json")["results"];
    CHECK(std::abs(r["estimate"].get<double>() - 2.0) <= 0.05);
    CHECK(std::abs(r["zeta"]["closed_form"].get<double>() - 0.4428771636) <= 1e-9);
  }
  SUBCASE("zeta table") {
    const Outcome o = run(kConfigs / "sierpinski-zeta.json", "zeta_table");
    REQUIRE(o.code == kOk);
    const std::string csv = slurp(o.dir / "zeta_terms.csv");
    CHECK(csv.rfind("s,level,term,cumulative\n", 0) == 0);
    CHECK(count_of(csv, "\n") == 1 + 4 * 31);
  }
}
