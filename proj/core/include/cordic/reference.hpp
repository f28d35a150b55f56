#pragma once

// Real-arithmetic (double precision) circular CORDIC. This is the golden
// model the fixed-point pipeline is measured against.

#include <vector>

#include "cordic/fixed_point.hpp"

namespace cordic {

enum class CordicMode { Rotation, Vectoring };

// Initial x for rotation mode. 1.0 needs a guard bit; 1 - ulp fits Q1.b.
enum class InitialX { One, OneMinusUlp };

struct CordicParams {
  int stages = 16;          // N
  int start_index = 0;      // first shift exponent, 0 or 1
  int frac_bits = 15;       // b
  int guard_int_bits = 1;   // extra integer bits on the unscaled datapath
  RoundingMode rounding = kDefaultRounding;
  CordicMode mode = CordicMode::Rotation;
  InitialX initial_x = InitialX::One;

  // Shift exponent used by stage j.
  int shift(int stage) const noexcept { return start_index + stage; }

  friend bool operator==(const CordicParams&, const CordicParams&) = default;
};

// N=16, b=15, i0=1, one guard bit, nearest ties-away: range ±0.9579 rad.
CordicParams paper_profile();
// Same as paper_profile() but starting at shift 0 (range ±1.7433 rad).
CordicParams standard_profile();

/// Throws std::invalid_argument on stages < 1, start_index outside {0,1},
/// negative guard bits, or a datapath wider than 63 bits.
void validate(const CordicParams& params);

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

double norm(Vec2 v) noexcept;

struct Mat2 {
  double a11 = 1.0, a12 = 0.0;
  double a21 = 0.0, a22 = 1.0;

  static Mat2 identity() noexcept { return {}; }
  double determinant() const noexcept { return a11 * a22 - a12 * a21; }
  // Largest singular value.
  double spectral_norm() const noexcept;

  friend Mat2 operator*(const Mat2& l, const Mat2& r) noexcept;
  friend Vec2 operator*(const Mat2& m, Vec2 v) noexcept;
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

struct SigmaSequence {
  std::vector<int> sigmas;  // each exactly -1 or +1
  double residual = 0.0;    // angle left over after the N micro-rotations
};

struct Gain {
  double k = 1.0;        // product of sqrt(1 + 2^-2i) over the stages
  double inverse = 1.0;  // 1 / k
};

/// arctan(2^-(i0 + j)) for j = 0..N-1, strictly decreasing.
std::vector<double> atan_table(const CordicParams& params);

Gain gain(const CordicParams& params);

/// Largest |theta| the stages can reach: the sum of the arctan table.
double convergence_range(const CordicParams& params);

/// Greedy direction bits for `theta`: sigma = +1 when the remaining angle is
/// >= 0, else -1. Throws OutOfRangeError when |theta| exceeds the
/// convergence range.
SigmaSequence sigma_sequence(double theta, const CordicParams& params);

/// P = [[1, -sigma 2^-shift], [sigma 2^-shift, 1]].
Mat2 rotation_matrix(int shift, int sigma);

// Which factors make up the propagation matrix of stage i.
enum class PropagationConvention {
  // P(N-1)...P(i+1): the error injected at stage i only travels through the
  // later stages, and B(N-1) = I.
  IdentityAtLast,
  // P(N-1)...P(i): the literal product including stage i itself.
  Inclusive,
};

/// Product of the rotation matrices that follow (or include) stage `stage`,
/// later stages multiplying from the left. Throws std::out_of_range for a
/// stage outside [0, N-1].
Mat2 propagation_matrix(int stage, const SigmaSequence& sigmas, const CordicParams& params,
                        PropagationConvention convention = PropagationConvention::IdentityAtLast);

struct ReferenceRotation {
  Vec2 v;
  double residual = 0.0;
  std::vector<int> sigmas;
};

/// N unscaled micro-rotations followed by one multiplication by 1/K.
ReferenceRotation rotate_reference(Vec2 v0, double theta, const CordicParams& params);

struct ReferenceVectoring {
  double angle = 0.0;
  double magnitude = 0.0;
};

/// Drives y to zero (sigma = +1 when y <= 0, else -1) and returns the
/// accumulated angle and 1/K-scaled x. Requires x > 0 and
/// |atan2(y, x)| <= convergence range; DomainError otherwise.
ReferenceVectoring vector_reference(Vec2 v0, const CordicParams& params);

}  // namespace cordic
