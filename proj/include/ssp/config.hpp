#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssp/experiments.hpp"

namespace ssp {

enum class RunCommand { Sweep, Converge };

/// Everything a sweep or convergence run needs, as flat key = value text.
/// Every field is written by to_text, so a parsed file reproduces the run.
struct RunConfig {
  RunCommand command = RunCommand::Sweep;
  std::string name = "run";
  std::vector<FamilyId> methods;
  double k = kInvSqrt2;
  Scheme scheme = Scheme::FirstOrder;
  FluxKind flux = FluxKind::LinearAdvectionLeft;
  double x0 = 0.0;
  double length = 1.0;
  bool count_endpoint = false;
  std::string ic = "step(0.25,0.5)";
  /// Sweeps: grid points. Convergence: one entry for temporal refinement,
  /// several for co-refinement.
  std::vector<std::size_t> n_list{1600};
  std::vector<double> lambdas;
  std::size_t steps = 0;
  double final_time = 0.0;
  double threshold = 1e-8;
  bool refine = true;
  double refine_tol = 1e-4;
  ReferenceMode reference = ReferenceMode::TranslateInitial;
  bool scale_by_speed = false;
  double weno_epsilon = 1e-6;
  /// Drop grid sizes above this (convergence only); 0 keeps all.
  std::size_t max_n = 0;
  std::string output = "results";
  int jobs = 0;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

std::string_view to_string(RunCommand command);

/// example1, example2-advection, example2-burgers, example3a, example3b,
/// example3b-fixed, example4a, example4b.
const std::vector<std::string>& preset_names();
std::optional<RunConfig> preset(std::string_view name);

std::string to_text(const RunConfig& config);

/// Applies the keys in `text` on top of `base`. Unknown keys and malformed
/// values are appended to `problems` instead of stopping at the first one.
RunConfig apply_config_text(RunConfig base, std::string_view text, std::vector<std::string>& problems);

/// Checks the config and the spec it expands to; empty when valid.
std::vector<std::string> validate(const RunConfig& config);

/// Throw InvalidParameter listing every problem.
SweepSpec to_sweep_spec(const RunConfig& config);
ConvergenceSpec to_convergence_spec(const RunConfig& config);

RunConfig load_run_config(const std::filesystem::path& path, const RunConfig& base = {});

}  // namespace ssp
