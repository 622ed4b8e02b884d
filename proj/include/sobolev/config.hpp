#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "sobolev/experiments.hpp"

namespace sobolev {

enum class Experiment { CrossCheck1D, AdjointSmoothing2D, RadonRecon, NormEquivalence, KernelAsymptotics };

std::string to_string(Experiment e);
Experiment experiment_from_string(const std::string& name);

enum class PhantomChoice { Both, SheppLogan, SmoothBumps };

std::string to_string(PhantomChoice p);

/// Fully resolved run settings. Defaults depend on the experiment:
///   s      0.5 for RadonRecon, 1 otherwise
///   grid   1024 CrossCheck1D, 128 AdjointSmoothing2D, 64 RadonRecon
///   kmax   16 CrossCheck1D, 64 NormEquivalence
struct RunConfig {
  Experiment experiment = Experiment::RadonRecon;
  Backend backend = Backend::Multiplier;
  double s = 0.5;
  int grid = 64;
  int kmax = 16;
  int offsets = 100;
  int angles = 60;
  PhantomChoice phantom = PhantomChoice::Both;
  double noise = 0.10;
  double tau = 1.01;
  double step = 0.0;  // 0 picks 0.9 / |A|^2
  int max_iter = 5000;
  std::uint64_t seed = 1;
  std::string out = "out";

  bool operator==(const RunConfig&) const = default;
};

RunConfig default_config(Experiment e);

/// Config file error; `line` is 0 when the problem is not tied to one line.
class ConfigError : public InvalidArgument {
 public:
  ConfigError(int line, const std::string& what)
      : InvalidArgument(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// key = value lines, '#' starts a comment. `experiment` is required unless a
/// fallback is given. Unknown keys, duplicates and out-of-range values throw ConfigError.
RunConfig parse_config(const std::string& text, std::optional<Experiment> fallback = std::nullopt);

/// Every key, one per line; parse_config(print_config(c)) == c.
std::string print_config(const RunConfig& c);

}  // namespace sobolev
