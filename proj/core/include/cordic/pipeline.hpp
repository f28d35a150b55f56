#pragma once

// Bit-exact model of a pipelined fixed-point rotator: a quantized arctan ROM,
// N shift-add stages rounding at every shift, and one final multiplication
// by the quantized 1/K.
//
// Formats for a CordicParams with b fractional bits and g guard bits:
//   ROM entries        Q1.b
//   x, y, z datapath   Q(1+g).b
//   outputs            Q(1+g).b  (cos(0) ~ 1.0 is not representable in Q1.b)

#include <filesystem>
#include <string>
#include <vector>

#include "cordic/fixed_point.hpp"
#include "cordic/reference.hpp"

namespace cordic {

QFormat rom_format(const CordicParams& params);
QFormat datapath_format(const CordicParams& params);

struct Rom {
  std::vector<Fixed> atan_entries;  // quantize(arctan(2^-(i0+j)))
  Fixed inv_gain;                   // quantize(1/K)
  QFormat fmt;

  friend bool operator==(const Rom&, const Rom&) = default;
};

/// Throws OverflowError if an entry does not fit the ROM format.
Rom build_rom(const CordicParams& params);

inline constexpr const char* kAtanRomFile = "atan_rom.hex";
inline constexpr const char* kScaleRomFile = "scale_rom.hex";

/// Writes atan_rom.hex (N lines) and scale_rom.hex (1 line) into `dir`, one
/// hex word per line. Throws IoError on filesystem failures.
void write_rom_files(const Rom& rom, const std::filesystem::path& dir);

/// Reads the files written by write_rom_files. Throws IoError when a file is
/// missing and ParseError on malformed contents or a wrong entry count.
Rom read_rom_files(const std::filesystem::path& dir, const CordicParams& params);

struct StageState {
  Fixed x;
  Fixed y;
  Fixed z;

  friend bool operator==(const StageState&, const StageState&) = default;
};

// Rounding error a stage introduced, measured against exact arithmetic on
// the same inputs.
struct RoundingInjection {
  double ex = 0.0;
  double ey = 0.0;

  friend bool operator==(const RoundingInjection&, const RoundingInjection&) = default;
};

struct StageTrace {
  std::vector<StageState> states;           // N + 1 snapshots, input first
  std::vector<RoundingInjection> injected;  // N entries
  std::vector<int> sigmas;                  // N direction bits

  friend bool operator==(const StageTrace&, const StageTrace&) = default;
};

struct StageResult {
  StageState state;
  RoundingInjection injected;
  int sigma = 1;
};

/// One micro-rotation. The direction comes from params.mode: sign of z in
/// rotation mode (z == 0 -> +1), y <= 0 -> +1 in vectoring mode.
StageResult stage(const StageState& s, int j, const Rom& rom, const CordicParams& params);

struct PipelineRotation {
  Fixed cos_out;
  Fixed sin_out;
  StageTrace trace;
};

/// Rotates (1, 0) by `theta`. `theta` may be in any format with b fractional
/// bits; it is moved into the datapath format. Throws OutOfRangeError for
/// |theta| beyond the convergence range and OverflowError when the datapath
/// runs out of headroom.
PipelineRotation pipeline_rotate(const Fixed& theta, const CordicParams& params, const Rom& rom);

struct PipelineVectoring {
  Fixed angle;
  Fixed magnitude;
  StageTrace trace;
};

/// Vectoring mode. Requires x > 0 and |atan2(y, x)| within the convergence
/// range (DomainError otherwise).
PipelineVectoring pipeline_vector(const Fixed& x0, const Fixed& y0, const CordicParams& params,
                                  const Rom& rom);

/// Checks |theta| against the convergence range (OutOfRangeError), then
/// rounds it into the datapath format.
Fixed quantize_angle(double theta, const CordicParams& params);

struct MeasuredError {
  double cos_err = 0.0;  // to_real(cos_out) - cos(theta)
  double sin_err = 0.0;
};

/// Quantizes `theta` into the datapath format, rotates, and compares with
/// double-precision cos/sin of `theta`.
MeasuredError measured_error(double theta, const CordicParams& params, const Rom& rom);

/// One line per state: "<stage> <x hex> <y hex> <z hex>".
std::string format_trace(const StageTrace& trace);

}  // namespace cordic
