#include "cordic/reference.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cordic/errors.hpp"

namespace cordic {

CordicParams paper_profile() {
  CordicParams p;
  p.stages = 16;
  p.start_index = 1;
  p.frac_bits = 15;
  p.guard_int_bits = 1;
  return p;
}

CordicParams standard_profile() {
  CordicParams p = paper_profile();
  p.start_index = 0;
  return p;
}

void validate(const CordicParams& params) {
  if (params.stages < 1) throw std::invalid_argument("stages must be >= 1");
  if (params.start_index != 0 && params.start_index != 1)
    throw std::invalid_argument("start_index must be 0 or 1");
  if (params.guard_int_bits < 0) throw std::invalid_argument("guard_int_bits must be >= 0");
  if (params.frac_bits < 1) throw std::invalid_argument("frac_bits must be >= 1");
  if (1 + params.guard_int_bits + params.frac_bits > QFormat::kMaxWidth)
    throw std::invalid_argument("datapath wider than 63 bits");
}

double norm(Vec2 v) noexcept { return std::hypot(v.x, v.y); }

double Mat2::spectral_norm() const noexcept {
  // sigma_max = (|rotation part| + |reflection part|) / 2; no cancellation
  // for scaled rotations where both singular values coincide.
  return 0.5 * (std::hypot(a11 + a22, a21 - a12) + std::hypot(a11 - a22, a21 + a12));
}

Mat2 operator*(const Mat2& l, const Mat2& r) noexcept {
  return {l.a11 * r.a11 + l.a12 * r.a21, l.a11 * r.a12 + l.a12 * r.a22,
          l.a21 * r.a11 + l.a22 * r.a21, l.a21 * r.a12 + l.a22 * r.a22};
}

Vec2 operator*(const Mat2& m, Vec2 v) noexcept {
  return {m.a11 * v.x + m.a12 * v.y, m.a21 * v.x + m.a22 * v.y};
}

std::vector<double> atan_table(const CordicParams& params) {
  std::vector<double> table(static_cast<std::size_t>(params.stages));
  for (int j = 0; j < params.stages; ++j)
    table[static_cast<std::size_t>(j)] = std::atan(std::ldexp(1.0, -params.shift(j)));
  return table;
}

Gain gain(const CordicParams& params) {
  double k = 1.0;
  for (int j = 0; j < params.stages; ++j) k *= std::sqrt(1.0 + std::ldexp(1.0, -2 * params.shift(j)));
  return {k, 1.0 / k};
}

double convergence_range(const CordicParams& params) {
  double sum = 0.0;
  for (double a : atan_table(params)) sum += a;
  return sum;
}

namespace {

void require_in_range(double theta, const CordicParams& params) {
  const double range = convergence_range(params);
  if (!(std::fabs(theta) <= range)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "angle " << theta << " rad outside convergence range ±" << range;
    throw OutOfRangeError(msg.str());
  }
}

}  // namespace

SigmaSequence sigma_sequence(double theta, const CordicParams& params) {
  require_in_range(theta, params);
  SigmaSequence seq;
  seq.sigmas.reserve(static_cast<std::size_t>(params.stages));
  double z = theta;
  for (double alpha : atan_table(params)) {
    const int sigma = z >= 0.0 ? 1 : -1;
    seq.sigmas.push_back(sigma);
    z -= sigma * alpha;
  }
  seq.residual = z;
  return seq;
}

Mat2 rotation_matrix(int shift, int sigma) {
  if (sigma != 1 && sigma != -1) throw std::invalid_argument("sigma must be +1 or -1");
  const double t = sigma * std::ldexp(1.0, -shift);
  return {1.0, -t, t, 1.0};
}

Mat2 propagation_matrix(int stage, const SigmaSequence& sigmas, const CordicParams& params,
                        PropagationConvention convention) {
  const int n = params.stages;
  if (stage < 0 || stage > n - 1) throw std::out_of_range("propagation_matrix: stage index");
  if (static_cast<int>(sigmas.sigmas.size()) != n)
    throw std::invalid_argument("propagation_matrix: sigma count differs from stage count");
  const int first = convention == PropagationConvention::IdentityAtLast ? stage + 1 : stage;
  Mat2 b = Mat2::identity();
  for (int j = first; j < n; ++j)
    b = rotation_matrix(params.shift(j), sigmas.sigmas[static_cast<std::size_t>(j)]) * b;
  return b;
}

ReferenceRotation rotate_reference(Vec2 v0, double theta, const CordicParams& params) {
  if (!std::isfinite(v0.x) || !std::isfinite(v0.y)) throw DomainError("rotate_reference: non-finite input");
  SigmaSequence seq = sigma_sequence(theta, params);
  Vec2 v = v0;
  for (int j = 0; j < params.stages; ++j) {
    const double t = seq.sigmas[static_cast<std::size_t>(j)] * std::ldexp(1.0, -params.shift(j));
    v = {v.x - t * v.y, v.y + t * v.x};
  }
  const double inv_k = gain(params).inverse;
  return {{v.x * inv_k, v.y * inv_k}, seq.residual, std::move(seq.sigmas)};
}

ReferenceVectoring vector_reference(Vec2 v0, const CordicParams& params) {
  if (!(v0.x > 0.0) || !std::isfinite(v0.y))
    throw DomainError("vector_reference: input must lie in the right half-plane");
  if (!(std::fabs(std::atan2(v0.y, v0.x)) <= convergence_range(params)))
    throw DomainError("vector_reference: vector angle outside convergence range");
  Vec2 v = v0;
  double angle = 0.0;
  const auto table = atan_table(params);
  for (int j = 0; j < params.stages; ++j) {
    const int sigma = v.y <= 0.0 ? 1 : -1;
    const double t = sigma * std::ldexp(1.0, -params.shift(j));
    v = {v.x - t * v.y, v.y + t * v.x};
    angle -= sigma * table[static_cast<std::size_t>(j)];
  }
  return {angle, v.x * gain(params).inverse};
}

}  // namespace cordic
