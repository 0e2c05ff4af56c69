#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace motzkin::cli {

/// Fully resolved settings of one run. Rationals stay strings until use so
/// "0.5" reaches the library as exactly 1/2.
struct RunConfig {
  std::string command;

  std::string sigma = "1";
  std::string alpha = "finite:1,1";
  std::string beta = "finite:1,1";
  int length = 8;
  std::string ladder = "8,16,32,64";
  int K = 1;
  std::string rho1;
  std::uint64_t seed = 1;
  std::uint64_t samples = 1000;
  std::string tol = "1e-30";
  std::string out = "out";
  std::string format = "json";
  unsigned threads = 1;

  // exact, sample
  std::string coords;
  std::string z0 = "1/2";
  std::string z1 = "1/2";
  bool binary = false;

  // limit
  std::string kernel = "P";
  std::string init = "sizebiased";
  std::string rho0;
  int rows = 10;

  // verify
  std::string sigmas = "1/2,1,2";
  std::string rhos = "1/2,1,2,3";
  std::string suite = "all";

  // converge
  std::string theorem = "1";
  int C = 10;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kConfigError = 1;
inline constexpr int kCertificateFailure = 2;

/// Parses command-line arguments (without the program name). `--config FILE`
/// reads an INI file with one section per command; flags override it.
/// Throws on invalid input; `help` is set when --help was requested.
RunConfig parse_args(const std::vector<std::string>& args, std::string* help = nullptr);

/// INI text that parse_args({"--config", file}) turns back into `config`.
std::string manifest_ini(const RunConfig& config);

/// Parses, runs, writes files under config.out and a JSON summary to `out`.
/// Errors go to `err` as a JSON object; returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace motzkin::cli
