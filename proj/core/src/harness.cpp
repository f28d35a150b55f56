#include "cordic/harness.hpp"

#include <cmath>

#include "block_rng.hpp"
#include "cordic/errors.hpp"
#include "cordic/report.hpp"
#include "parallel.hpp"

namespace cordic {
namespace {

std::string describe_angle(double theta) {
  return "theta=" + format_shortest(theta) + ": ";
}

struct TrialSums {
  double err = 0.0;
  double err_sq = 0.0;
  double rounding = 0.0;
  double angle = 0.0;
  double closed_form = 0.0;
  double delta_sq = 0.0;
  std::uint64_t n = 0;
};

}  // namespace

const std::vector<double>& table1_angles() {
  static const std::vector<double> angles{-0.9000, -0.8000, -0.7000, -0.6001, -0.5001, -0.4001, -0.3001,
                                          -0.2002, -0.1002, -0.0002, 0.0998,  0.1997,  0.2997,  0.3997,
                                          0.4997,  0.5996,  0.6996,  0.7996,  0.8996};
  return angles;
}

std::vector<Table1Row> run_table1(const CordicParams& params, const std::vector<double>& angles) {
  const Rom rom = build_rom(params);
  std::vector<Table1Row> rows;
  rows.reserve(angles.size());
  for (double angle : angles) {
    try {
      const double q = to_real(quantize_angle(angle, params));
      const MeasuredError e = measured_error(q, params, rom);
      rows.push_back({angle, q, e.cos_err, e.sin_err});
    } catch (const OutOfRangeError& e) {
      throw OutOfRangeError(describe_angle(angle) + e.what());
    } catch (const OverflowError& e) {
      throw OverflowError(describe_angle(angle) + e.what());
    }
  }
  return rows;
}

MseReport monte_carlo_mse(const CordicParams& params, std::uint64_t trials, std::uint64_t seed,
                          unsigned workers) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const Rom rom = build_rom(params);
  const QFormat dp = datapath_format(params);
  // One ulp inside the range so that rounding never pushes a sample out.
  const double range = convergence_range(params) - dp.resolution();

  const std::uint64_t blocks = (trials + detail::kTrialsPerBlock - 1) / detail::kTrialsPerBlock;
  const auto partials = detail::run_blocks<TrialSums>(blocks, workers, [&](std::uint64_t block) {
    detail::BlockRng rng(seed, block);
    const std::uint64_t begin = block * detail::kTrialsPerBlock;
    const std::uint64_t end = std::min(trials, begin + detail::kTrialsPerBlock);
    TrialSums s;
    for (std::uint64_t t = begin; t < end; ++t) {
      const double drawn = rng.uniform(-range, range);
      try {
        const Fixed theta = quantize(drawn, dp, params.rounding);
        const double tq = to_real(theta);
        const PipelineRotation out = pipeline_rotate(theta, params, rom);
        const double dc = to_real(out.cos_out) - std::cos(tq);
        const double ds = to_real(out.sin_out) - std::sin(tq);
        const double sq = dc * dc + ds * ds;

        // The propagated-rounding sum with the measured injections: e <- P(i) e + e_r(i) equals
        // sum_i B(i) e_r(i) with B(i) = P(N-1)...P(i+1).
        Vec2 er;
        for (int i = 0; i < params.stages; ++i) {
          const auto k = static_cast<std::size_t>(i);
          er = rotation_matrix(params.shift(i), out.trace.sigmas[k]) * er;
          er.x += out.trace.injected[k].ex;
          er.y += out.trace.injected[k].ey;
        }

        const ReferenceRotation ref = rotate_reference({1.0, 0.0}, tq, params);
        const SigmaSequence seq{ref.sigmas, ref.residual};

        s.err += sq;
        s.err_sq += sq * sq;
        s.rounding += er.x * er.x + er.y * er.y;
        s.angle += angle_mse(ref.residual);
        s.closed_form += rounding_mse(seq, params.frac_bits, params);
        s.delta_sq += ref.residual * ref.residual;
        ++s.n;
      } catch (const OverflowError& e) {
        throw OverflowError(describe_angle(drawn) + e.what());
      }
    }
    return s;
  });

  TrialSums total;
  for (const TrialSums& p : partials) {
    total.err += p.err;
    total.err_sq += p.err_sq;
    total.rounding += p.rounding;
    total.angle += p.angle;
    total.closed_form += p.closed_form;
    total.delta_sq += p.delta_sq;
    total.n += p.n;
  }
  const double n = static_cast<double>(total.n);

  MseReport report;
  report.trials = total.n;
  report.seed = seed;
  report.params = params;
  report.empirical_mse = total.err / n;
  const double var =
      total.n > 1 ? std::max(0.0, (total.err_sq - n * report.empirical_mse * report.empirical_mse) / (n - 1.0))
                  : 0.0;
  report.empirical_std_error = std::sqrt(var / n);
  report.empirical_rounding_mse = total.rounding / n;

  ErrorBreakdown& th = report.theoretical;
  th.angle_mse = total.angle / n;
  th.scaling_mse = scaling_mse(params.frac_bits);
  th.rounding_mse = total.closed_form / n;
  th.total_mse = th.angle_mse + th.scaling_mse + th.rounding_mse;
  th.epsilon = epsilon(params.frac_bits);
  th.delta = std::sqrt(total.delta_sq / n);  // RMS residual angle

  if (report.empirical_rounding_mse > 0.0)
    report.closed_form_vs_empirical_rounding_ratio = th.rounding_mse / report.empirical_rounding_mse;
  return report;
}

std::vector<std::pair<int, MseReport>> sweep_bits(const CordicParams& params, const std::vector<int>& frac_bits,
                                                  std::uint64_t trials, std::uint64_t seed, unsigned workers) {
  std::vector<std::pair<int, MseReport>> out;
  out.reserve(frac_bits.size());
  for (int b : frac_bits) {
    CordicParams p = params;
    p.frac_bits = b;
    validate(p);
    out.emplace_back(b, monte_carlo_mse(p, trials, seed, workers));
  }
  return out;
}

std::vector<std::filesystem::path> export_rom(const CordicParams& params, const std::filesystem::path& out_dir) {
  write_rom_files(build_rom(params), out_dir);
  return {out_dir / kAtanRomFile, out_dir / kScaleRomFile};
}

}  // namespace cordic
