#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace ecms {

/// Validated run configuration; every module precondition is checked before
/// any computation starts.
struct RunConfig {
  std::string command;
  int N = 2;
  std::string beta = "2/1";
  std::vector<std::string> lambdas;
  std::vector<double> p_values;
  std::optional<int> cutoff;  // window auto-sized to the coupling ball if unset
  int order = 4;
  double x = 1.0;
  int terms = 400;
  int lattice_cutoff = 60;
  std::string suite = "jack";
  bool quick = false;
  std::string format = "json";
  std::string output;  // empty = stdout
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDegenerate = 3;
inline constexpr int kExitConsistency = 4;

nlohmann::ordered_json cmd_jack(const RunConfig& cfg);
nlohmann::ordered_json cmd_spectrum(const RunConfig& cfg);
nlohmann::ordered_json cmd_diag(const RunConfig& cfg);
nlohmann::ordered_json cmd_bounds(const RunConfig& cfg);
nlohmann::ordered_json cmd_wp(const RunConfig& cfg);
nlohmann::ordered_json cmd_verify(const RunConfig& cfg);

/// Renders a command result per cfg.format ("json" or "csv").
std::string render_output(const RunConfig& cfg, const nlohmann::ordered_json& result);

/// Full entry point: parse, validate, dispatch, write output atomically.
int run_cli(int argc, const char* const* argv);

}  // namespace ecms
