#pragma once

// Experiment harness: the published FPGA comparison table, Monte Carlo error measurement
// against the closed-form budget, bit-width sweeps and ROM export.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

#include "cordic/error_model.hpp"
#include "cordic/pipeline.hpp"
#include "cordic/reference.hpp"

namespace cordic {

struct Table1Row {
  double angle_rad = 0.0;        // nominal angle
  double angle_quantized = 0.0;  // angle actually fed to the pipeline
  double cos_err = 0.0;          // cos_v - m_cos
  double sin_err = 0.0;          // sin_v - m_sin

  friend bool operator==(const Table1Row&, const Table1Row&) = default;
};

/// The 19 angles of the published FPGA comparison, -0.9000 ... 0.8996.
const std::vector<double>& table1_angles();

/// One row per angle, measured at the quantized angle. Throws
/// OutOfRangeError naming the angle when it is outside the convergence range.
std::vector<Table1Row> run_table1(const CordicParams& params,
                                  const std::vector<double>& angles = table1_angles());

struct MseReport {
  ErrorBreakdown theoretical;          // averaged over the sampled angles
  double empirical_mse = 0.0;          // mean |pipeline - (cos, sin)|^2
  double empirical_std_error = 0.0;
  double empirical_rounding_mse = 0.0; // mean |sum_i B(i) e_r(i)|^2 from the traces
  // theoretical.rounding_mse / empirical_rounding_mse; empty when the
  // denominator is zero.
  std::optional<double> closed_form_vs_empirical_rounding_ratio;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  CordicParams params;

  friend bool operator==(const MseReport&, const MseReport&) = default;
};

/// Draws theta uniformly over the convergence range, quantizes it, and
/// compares the pipeline with cos/sin at the quantized angle. Deterministic in
/// (params, trials, seed); `workers` (0 = hardware concurrency) does not
/// affect the result. OverflowError carries the offending angle.
MseReport monte_carlo_mse(const CordicParams& params, std::uint64_t trials, std::uint64_t seed,
                          unsigned workers = 0);

/// monte_carlo_mse for every b in `frac_bits`, all with the same seed.
std::vector<std::pair<int, MseReport>> sweep_bits(const CordicParams& params, const std::vector<int>& frac_bits,
                                                  std::uint64_t trials, std::uint64_t seed,
                                                  unsigned workers = 0);

/// Builds the ROM for `params` and writes it into `out_dir`. Returns the two
/// file paths.
std::vector<std::filesystem::path> export_rom(const CordicParams& params, const std::filesystem::path& out_dir);

}  // namespace cordic
