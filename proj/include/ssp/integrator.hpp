#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ssp/error.hpp"
#include "ssp/grid.hpp"
#include "ssp/sspcert.hpp"
#include "ssp/tableau.hpp"

namespace ssp {

/// out = op(u). Implementations must not keep state between calls, so one
/// operator can serve several concurrent runs.
using GridOperator = std::function<void(std::span<const double> u, std::span<double> out)>;

struct SemiDiscretization {
  GridOperator f_op;
  GridOperator fdot_op;
  /// Forward Euler step limit, in time units.
  double dt_fe = 1.0;
  /// Second-derivative step ratio.
  double k = 0.70710678118654752440;
  /// Grid the operators were built for; zero means any size.
  std::size_t n = 0;
};

struct StepRecord {
  std::size_t step = 0;  // one-based: the record after the first step has step == 1
  double time = 0.0;
  double tv = 0.0;
  bool snapshot = false;  // the snapshot sink received this step
};

/// One step of the Butcher form. F and Fdot are evaluated at most once per
/// stage and skipped for stages whose weights are all zero.
GridFunction step(const TwoDerivativeTableau& tab, const SemiDiscretization& sys,
                  const GridFunction& u, double dt);

/// The same step through the convex Shu-Osher recursion.
GridFunction step_shu_osher(const ShuOsherForm& form, const TwoDerivativeTableau& tab,
                            const SemiDiscretization& sys, const GridFunction& u, double dt);

using SnapshotSink = std::function<void(std::size_t step, double time, const GridFunction& u)>;

/// Writes <dir>/<prefix>_<step>.dat in the snapshot format.
SnapshotSink snapshot_file_sink(std::filesystem::path dir, std::string prefix = "snapshot");

struct EvolveOptions {
  bool monitor_tv = false;
  double t0 = 0.0;
  /// Call `sink` every `snapshot_every` steps (0 disables).
  std::size_t snapshot_every = 0;
  SnapshotSink sink;
};

struct EvolveResult {
  GridFunction u;
  std::vector<StepRecord> records;
};

/// Thrown by evolve when a step blows up; carries the records gathered up to
/// the failing step. step() is zero-based within the run.
class EvolveAborted : public BlowUp {
 public:
  EvolveAborted(const BlowUp& cause, std::size_t step, std::vector<StepRecord> history)
      : BlowUp(step, cause.stage()), history_(std::move(history)) {}

  const std::vector<StepRecord>& history() const noexcept { return history_; }

 private:
  std::vector<StepRecord> history_;
};

EvolveResult evolve(const TwoDerivativeTableau& tab, const SemiDiscretization& sys,
                    const GridFunction& u0, double dt, std::size_t n_steps,
                    const EvolveOptions& options = {});

}  // namespace ssp
