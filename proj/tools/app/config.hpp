#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fracspec/bergman.hpp"
#include "fracspec/ifs.hpp"
#include "fracspec/linalg.hpp"
#include "fracspec/toeplitz.hpp"
#include "json.hpp"

namespace fracspec::app {

enum class Experiment { VerifyBergman, VerifyHardy, DimensionFractal, DimensionBergman, Zeta, Attractor, Conditions };

std::string to_string(Experiment e);

struct Budgets {
  std::uint64_t words = kDefaultWordBudget;
  std::uint64_t basis = 200'000;
  std::size_t harmonics = 4096;
};

struct VerifyBergmanParams {
  std::vector<int> dimensions{1, 2};
  std::vector<int> cutoffs{40, 16};  // one per dimension
  std::vector<double> weights{0.0, 1.0, 5.0};
  int max_degree = 4;
  int margin = 4;
  double tolerance = 1e-12;
};

struct VerifyHardyParams {
  std::size_t max_word_length = 2;
  int max_degree = 3;
  std::size_t cutoff = 64;
  std::size_t margin = 8;
  std::size_t quadrature_order = 32;
  double tolerance = 1e-8;
};

struct DimensionFractalParams {
  std::string family = "polygon";  // polygon | disk
  std::vector<double> ells{3.0};
  std::pair<double, double> bracket{1.01, 10.0};
  std::size_t level = 20;
  double tolerance = 0.01;
  std::size_t counting_levels = 8;
  double agreement = 0.1;
};

struct DimensionBergmanParams {
  int n = 1;
  double lambda_max = 1e4;
  double tolerance = 0.05;
  double s = 3.0;
  std::size_t levels = 400;
  std::size_t grades = 400;
  double zeta_tolerance = 1e-6;
};

struct ZetaParams {
  std::string family = "fractal";  // fractal | disk-fractal | bergman
  std::vector<double> s{2.0};
  std::size_t levels = 20;
  double ell = 3.0;
  int n = 1;
};

struct AttractorParams {
  std::size_t depth = 2;
};

struct ConditionsParams {
  std::string family = "bergman";  // bergman | fractal
  std::size_t levels = 6;          // levels 0..levels
  int n = 1;
  double ell = 3.0;
  std::size_t cutoff = 32;
  std::uint64_t words_per_level = 729;
  double threshold = 0.1;
  HardyPolynomial hardy_symbol{{Complex(1.0, 0.0), 1, 0}};
  BallPolynomial ball_symbol;  // defaults to z_1
};

using Parameters = std::variant<VerifyBergmanParams, VerifyHardyParams, DimensionFractalParams,
                                DimensionBergmanParams, ZetaParams, AttractorParams, ConditionsParams>;

struct RunConfig {
  Experiment experiment = Experiment::Zeta;
  std::string name;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  double runtime_budget_seconds = 60.0;
  Budgets budgets;
  std::optional<IfsSystem> ifs;
  std::optional<std::vector<Complex>> polygon;  // raw vertices
  Parameters parameters;
};

/// Strict parse: unknown fields, wrong types and out-of-range values throw
/// ConfigError with the offending path.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace fracspec::app
