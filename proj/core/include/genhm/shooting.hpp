#pragma once

#include <genhm/ode.hpp>
#include <genhm/precision.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace genhm {

/// Shooting configuration. Verdicts are read off the trajectory launched
/// from (x_plus, k Ai(x_plus), k Ai'(x_plus)) and integrated down to
/// x_minus (pushed 25% deeper whenever a verdict stays undetermined).
struct ShootConfig {
  PrecFloat x_plus{10};
  PrecFloat x_minus{-12};
  PrecFloat k_tol{1e-7};
  // Bisection reads verdicts for k-offsets down to k_tol; the integration
  // noise, amplified by exp((2/3) sqrt(N-1) |x|^(3/2)) over the peel-off
  // window, must stay well below that, which 1e-14 only just misses.
  PrecFloat rel_tol{1e-17};
  PrecFloat abs_tol{1e-17};
  PrecFloat blowup_cap{1e6};
  PrecContext ctx;

  void validate() const;
};

enum class Verdict { Oscillatory, Divergent, Undetermined };

struct Classification {
  Verdict verdict = Verdict::Undetermined;
  PrecFloat witness_x;
  bool step_underflow = false;  // divergence signaled by stiff blow-up approach
};

struct SeparatrixResult {
  int n_power = 0;
  PrecFloat k_n;
  PrecFloat bracket_low;
  PrecFloat bracket_high;
  int iterations = 0;
};

/// Bisection bracket endpoints classified identically.
class BracketError : public Error {
public:
  using Error::Error;
};

/// Launches one trajectory and classifies it: Oscillatory on the first
/// y < 0 with x < -2, Divergent on exceeding twice the power-law asymptote
/// (x < -1/4) or on blow-up, Undetermined if neither fires by x_minus.
Classification classify(int n_power, const PrecFloat& k, const ShootConfig& config);

/// Separatrix constant k_N by bisection from the bracket [0.1, 4.0].
SeparatrixResult find_k(int n_power, const ShootConfig& config);

/// Analytic bound (1/Ai(x0)) (-x0/2)^(1/(N-1)), x0 the first zero of Ai'.
PrecFloat k_bound(int n_power, const PrecContext& ctx);

struct ScanRow {
  int n_power = 0;
  std::optional<SeparatrixResult> result;
  std::string error;  // nonempty when find_k failed for this N
  PrecFloat bound;
};

/// Independent find_k per N; per-N failures are collected, not fatal.
std::vector<ScanRow> table_scan(std::span<const int> n_list,
                                const ShootConfig& config);

}  // namespace genhm
