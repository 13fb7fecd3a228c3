#pragma once

#include "operlab/checks.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace operlab::cli {

using json = io::json;

inline constexpr const char* kToolName = "oper-lab";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kPass = 0, kFail = 1, kInconclusive = 2, kConfigError = 64 };

int exit_code(checks::Verdict v);

struct RunConfig {
  std::vector<std::string> command;  ///< e.g. {"pairing", "gram"}
  std::string fixture;               ///< canonical fixture name or fixture file
  std::string rep;                   ///< representation file, alternative to fixture
  std::string module;                ///< adjoint | sym; empty = sym if j was given, else adjoint
  int N = 2;
  int j = 1;
  bool j_given = false;
  int order = 12;
  int samples = 0;  ///< 0 = per-command default
  std::string mode = "float";
  std::optional<double> tol;
  std::optional<double> quad_tol;
  std::optional<double> min_gap;
  double rank_tol = 1e-8;
  std::uint64_t seed = checks::kDefaultSeed;
  std::string in, system, loop, form;
  std::string out, report, config;
  bool print_json = false;
  bool timing = false;
  bool synthetic = false;

  std::string command_name() const;
  json echo() const;
};

struct Phase {
  std::string name;
  double seconds = 0.0;
};

struct Result {
  checks::Outcome outcome;
  json tolerances = json::object();
  std::vector<Phase> phases;
  std::string artifact;  ///< what --out receives
  std::vector<std::string> warnings;

  checks::Verdict verdict() const { return outcome.verdict(); }
};

/// Flat key=value text; '#' starts a comment.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Fixture aliases: torus, genus2, gamma0_4, or a path to a fixture file.
std::string canonical_fixture(const std::string& name);

Result run(const RunConfig& cfg);
json make_report(const RunConfig& cfg, const Result& r);

/// Full command line entry point: parse, run, emit, return the exit code.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace operlab::cli
