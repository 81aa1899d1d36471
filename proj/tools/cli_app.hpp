#pragma once

// Command-line front end. Every invocation is first turned into a RunConfig,
// which is then executed; JSON outputs embed the RunConfig so a run can be
// repeated with `cauchy replay`.

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cauchy::cli {

enum ExitCode : int { ok = 0, usage_error = 1, data_error = 2, verify_failed = 3 };

struct RunConfig {
  std::string command;
  std::string group = "so-odd";
  int m = 0;
  double z = 0.5;
  std::optional<std::uint64_t> seed;
  std::vector<double> angles_x;
  std::vector<double> angles_y;
  int det_x = 1;
  int det_y = 1;
  bool conjugate = false;
  int random_points = 0;
  double tolerance = 1e-8;
  double oracle_tolerance = 1e-10;
  std::optional<int> max_weight;
  double normalization = 0.25;
  bool check = false;
  std::string sampler;
  long n = 0;
  std::string naive_range = "full";
  bool hist = false;
  std::string statistic;
  std::string method;
  long sims = 1000;
  std::string input;
  std::string output;
  std::string format = "csv";
};

void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

/// Runs a parsed configuration. Returns an ExitCode.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses `args` (without the program name) and executes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cauchy::cli
