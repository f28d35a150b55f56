#pragma once

// Closed-form error budget of a CORDIC rotator that scales once after the
// last stage: angle approximation, scaling quantization and per-stage
// rounding, plus their sum under an independence assumption.

#include <cstdint>

#include "cordic/reference.hpp"

namespace cordic {

struct ErrorBreakdown {
  double angle_mse = 0.0;     // E|e_a|^2
  double scaling_mse = 0.0;   // E|e_s|^2
  double rounding_mse = 0.0;  // E|e_r|^2
  double total_mse = 0.0;     // angle + scaling + rounding
  double epsilon = 0.0;
  double delta = 0.0;

  friend bool operator==(const ErrorBreakdown&, const ErrorBreakdown&) = default;
};

/// Half an LSB: 2^(-b-1).
double epsilon(int frac_bits);

/// 2|sin(delta/2)|, the spectral norm of R(delta) - I.
double angle_error_bound(double delta);
/// |delta|, the small-angle form of angle_error_bound.
double angle_error_bound_small_angle(double delta);

/// 4 sin^2(delta/2); always equal to angle_error_bound(delta)^2.
double angle_mse(double delta);
/// delta^2. Reported next to angle_mse, never substituted for it.
double angle_mse_small_angle(double delta);

/// Variance of a uniform error of width 2^-b: 2^(-2b)/12. The mean is zero.
double scaling_mse(int frac_bits);

double rounding_bound_per_stage(double eps);

/// (4 eps^2 / 3) * sum_{j<N} [1 - prod_{i<j} sigma(i) 2^-(i0+i)]^2, evaluated
/// term by term with the empty product equal to 1. Throws
/// std::invalid_argument unless `sigmas` holds N entries of +-1.
double rounding_mse(const SigmaSequence& sigmas, int frac_bits, const CordicParams& params);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
};

/// Monte Carlo estimate of E|sum_i B(i) e_r(i)|^2 where every component of
/// e_r(i) is drawn uniformly from {-eps, 0, eps}, eps = epsilon(params.frac_bits).
/// Deterministic in `seed`; `workers` (0 = hardware concurrency) never
/// changes the result.
MonteCarloEstimate rounding_mse_empirical_reference(const SigmaSequence& sigmas, const CordicParams& params,
                                                    std::uint64_t trials, std::uint64_t seed,
                                                    unsigned workers = 0);

/// Sums the three components. `delta` is the caller's residual angle (see
/// sigma_sequence); the total assumes the three sources are independent.
ErrorBreakdown total_mse(double delta, const SigmaSequence& sigmas, int frac_bits, const CordicParams& params);

}  // namespace cordic
