#include "cordic/error_model.hpp"

#include <cmath>
#include <stdexcept>

#include "block_rng.hpp"
#include "parallel.hpp"

namespace cordic {
namespace {

void require_sigmas(const SigmaSequence& sigmas, const CordicParams& params) {
  if (static_cast<int>(sigmas.sigmas.size()) != params.stages)
    throw std::invalid_argument("sigma sequence length differs from stage count");
  for (int s : sigmas.sigmas)
    if (s != 1 && s != -1) throw std::invalid_argument("sigma entries must be +1 or -1");
}

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t n = 0;
};

}  // namespace

double epsilon(int frac_bits) { return std::ldexp(1.0, -frac_bits - 1); }

double angle_error_bound(double delta) { return 2.0 * std::fabs(std::sin(delta / 2.0)); }

double angle_error_bound_small_angle(double delta) { return std::fabs(delta); }

double angle_mse(double delta) {
  const double bound = angle_error_bound(delta);
  return bound * bound;
}

double angle_mse_small_angle(double delta) { return delta * delta; }

double scaling_mse(int frac_bits) { return std::ldexp(1.0, -2 * frac_bits) / 12.0; }

double rounding_bound_per_stage(double eps) { return std::sqrt(2.0) * eps; }

double rounding_mse(const SigmaSequence& sigmas, int frac_bits, const CordicParams& params) {
  require_sigmas(sigmas, params);
  const double eps = epsilon(frac_bits);
  double sum = 0.0;
  double product = 1.0;  // empty product for j = 0
  for (int j = 0; j < params.stages; ++j) {
    const double term = 1.0 - product;
    sum += term * term;
    product *= sigmas.sigmas[static_cast<std::size_t>(j)] * std::ldexp(1.0, -params.shift(j));
  }
  return 4.0 * eps * eps / 3.0 * sum;
}

MonteCarloEstimate rounding_mse_empirical_reference(const SigmaSequence& sigmas, const CordicParams& params,
                                                    std::uint64_t trials, std::uint64_t seed,
                                                    unsigned workers) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  require_sigmas(sigmas, params);
  std::vector<Mat2> b;
  b.reserve(static_cast<std::size_t>(params.stages));
  for (int i = 0; i < params.stages; ++i) b.push_back(propagation_matrix(i, sigmas, params));
  const double eps = epsilon(params.frac_bits);
  const double levels[3] = {-eps, 0.0, eps};

  const std::uint64_t blocks = (trials + detail::kTrialsPerBlock - 1) / detail::kTrialsPerBlock;
  const auto partials = detail::run_blocks<Moments>(blocks, workers, [&](std::uint64_t block) {
    detail::BlockRng rng(seed, block);
    const std::uint64_t begin = block * detail::kTrialsPerBlock;
    const std::uint64_t end = std::min(trials, begin + detail::kTrialsPerBlock);
    Moments m;
    for (std::uint64_t t = begin; t < end; ++t) {
      Vec2 e;
      for (const Mat2& bi : b) {
        const Vec2 injected{levels[rng.uniform3()], levels[rng.uniform3()]};
        const Vec2 moved = bi * injected;
        e.x += moved.x;
        e.y += moved.y;
      }
      const double sq = e.x * e.x + e.y * e.y;
      m.sum += sq;
      m.sum_sq += sq * sq;
      ++m.n;
    }
    return m;
  });

  Moments total;
  for (const Moments& m : partials) {
    total.sum += m.sum;
    total.sum_sq += m.sum_sq;
    total.n += m.n;
  }
  const double n = static_cast<double>(total.n);
  const double mean = total.sum / n;
  const double var = total.n > 1 ? std::max(0.0, (total.sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
  return {mean, std::sqrt(var / n), total.n};
}

ErrorBreakdown total_mse(double delta, const SigmaSequence& sigmas, int frac_bits, const CordicParams& params) {
  ErrorBreakdown out;
  out.angle_mse = angle_mse(delta);
  out.scaling_mse = scaling_mse(frac_bits);
  out.rounding_mse = rounding_mse(sigmas, frac_bits, params);
  out.total_mse = out.angle_mse + out.scaling_mse + out.rounding_mse;
  out.epsilon = epsilon(frac_bits);
  out.delta = delta;
  return out;
}

}  // namespace cordic
