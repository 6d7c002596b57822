#pragma once

#include <genhm/precision.hpp>

#include <span>
#include <vector>

namespace genhm {

/// Initial-value problem for y'' = 2 y^N + x y as the first-order system
/// (y, y'). Integration runs from x_start to x_end in either direction.
struct OdeProblem {
  int n_power = 3;
  PrecFloat x_start;
  PrecFloat y_start;
  PrecFloat yp_start;
  PrecFloat x_end;
  PrecFloat rel_tol{1e-14};
  PrecFloat abs_tol{1e-14};
  PrecContext ctx;

  void validate() const;
};

enum class Termination {
  ReachedEnd,
  BlowUp,         // |y| exceeded the cap at x_stop
  StepUnderflow,  // step fell below 10^(-digits); stiff blow-up approach
};

struct TrajectorySample {
  PrecFloat x;
  PrecFloat y;
  PrecFloat yp;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  Termination termination = Termination::ReachedEnd;
  PrecFloat x_stop;  // meaningful for BlowUp / StepUnderflow
};

/// Adaptive embedded 5(4) pair (Dormand-Prince) with PI step control.
/// Samples at accepted step ends; stops early with BlowUp when |y| > cap.
Trajectory integrate(const OdeProblem& problem, const PrecFloat& cap);

/// Same, but sampling only at the requested output points (4th-order dense
/// interpolation). Output points must lie between x_start and x_end and be
/// ordered in the direction of integration.
Trajectory integrate(const OdeProblem& problem, const PrecFloat& cap,
                     std::span<const PrecFloat> output_points);

/// Observed convergence order from fixed-step runs at h, h/2, h/4; lands in
/// [4, 6] for smooth problems.
double local_error_estimate(const OdeProblem& problem);

}  // namespace genhm
