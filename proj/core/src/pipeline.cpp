#include "cordic/pipeline.hpp"

#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cordic/errors.hpp"
#include "cordic/report.hpp"

namespace cordic {
namespace {

// (rounded * 2^shift - exact) in units of 2^-(b + shift): the error the
// shift introduced, as a real number.
double shift_error(const Fixed& rounded, const Fixed& source, int shift) {
  const __int128 diff = (__int128{rounded.raw()} << shift) - source.raw();
  return std::ldexp(static_cast<double>(diff), -(source.format().frac_bits() + shift));
}

Fixed add_signed(const Fixed& a, int sigma, const Fixed& b) { return sigma > 0 ? add(a, b) : sub(a, b); }

std::string read_line_error(const std::filesystem::path& p) {
  return "cannot read " + p.string() + ": " + std::strerror(errno);
}

std::vector<std::string> read_words(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw IoError(read_line_error(p));
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    words.push_back(line);
  }
  if (in.bad()) throw IoError(read_line_error(p));
  return words;
}

void write_words(const std::filesystem::path& p, const std::vector<Fixed>& words) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + p.string() + ": " + std::strerror(errno));
  for (const Fixed& w : words) out << to_hex(w) << '\n';
  out.flush();
  if (!out) throw IoError("cannot write " + p.string() + ": " + std::strerror(errno));
}

StageTrace start_trace(const StageState& s0, int stages) {
  StageTrace trace;
  trace.states.reserve(static_cast<std::size_t>(stages) + 1);
  trace.injected.reserve(static_cast<std::size_t>(stages));
  trace.sigmas.reserve(static_cast<std::size_t>(stages));
  trace.states.push_back(s0);
  return trace;
}

StageState run_stages(StageState s, const CordicParams& params, const Rom& rom, StageTrace& trace) {
  for (int j = 0; j < params.stages; ++j) {
    StageResult r = stage(s, j, rom, params);
    trace.states.push_back(r.state);
    trace.injected.push_back(r.injected);
    trace.sigmas.push_back(r.sigma);
    s = r.state;
  }
  return s;
}

}  // namespace

QFormat rom_format(const CordicParams& params) { return QFormat(1, params.frac_bits); }

QFormat datapath_format(const CordicParams& params) {
  return QFormat(1 + params.guard_int_bits, params.frac_bits);
}

Rom build_rom(const CordicParams& params) {
  validate(params);
  const QFormat fmt = rom_format(params);
  std::vector<Fixed> entries;
  entries.reserve(static_cast<std::size_t>(params.stages));
  for (double a : atan_table(params)) entries.push_back(quantize(a, fmt, params.rounding));
  return Rom{std::move(entries), quantize(gain(params).inverse, fmt, params.rounding), fmt};
}

void write_rom_files(const Rom& rom, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  write_words(dir / kAtanRomFile, rom.atan_entries);
  write_words(dir / kScaleRomFile, {rom.inv_gain});
}

Rom read_rom_files(const std::filesystem::path& dir, const CordicParams& params) {
  const QFormat fmt = rom_format(params);
  const auto atan_words = read_words(dir / kAtanRomFile);
  const auto scale_words = read_words(dir / kScaleRomFile);
  if (atan_words.size() != static_cast<std::size_t>(params.stages))
    throw ParseError(std::string(kAtanRomFile) + ": expected " + std::to_string(params.stages) +
                     " entries, found " + std::to_string(atan_words.size()));
  if (scale_words.size() != 1)
    throw ParseError(std::string(kScaleRomFile) + ": expected exactly one entry");
  std::vector<Fixed> entries;
  entries.reserve(atan_words.size());
  for (const auto& w : atan_words) entries.push_back(from_hex(w, fmt));
  return Rom{std::move(entries), from_hex(scale_words.front(), fmt), fmt};
}

StageResult stage(const StageState& s, int j, const Rom& rom, const CordicParams& params) {
  if (j < 0 || j >= static_cast<int>(rom.atan_entries.size()))
    throw std::out_of_range("stage: index outside the ROM");
  const int shift = params.shift(j);
  const int sigma = params.mode == CordicMode::Rotation ? (s.z.raw() >= 0 ? 1 : -1)
                                                         : (s.y.raw() <= 0 ? 1 : -1);
  const Fixed dx = shift_right(s.y, shift, params.rounding);
  const Fixed dy = shift_right(s.x, shift, params.rounding);
  const Fixed alpha = convert(rom.atan_entries[static_cast<std::size_t>(j)], s.z.format());

  StageResult r{
      {add_signed(s.x, -sigma, dx), add_signed(s.y, sigma, dy), add_signed(s.z, -sigma, alpha)},
      {-sigma * shift_error(dx, s.y, shift), sigma * shift_error(dy, s.x, shift)},
      sigma};
  return r;
}

PipelineRotation pipeline_rotate(const Fixed& theta, const CordicParams& params, const Rom& rom) {
  validate(params);
  CordicParams rot = params;
  rot.mode = CordicMode::Rotation;

  const QFormat dp = datapath_format(params);
  const Fixed z0 = convert(theta, dp, params.rounding);
  const double range = convergence_range(params);
  if (std::fabs(to_real(z0)) > range) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "angle " << to_real(z0) << " rad outside convergence range ±" << range;
    throw OutOfRangeError(msg.str());
  }
  const std::int64_t one = std::int64_t{1} << params.frac_bits;
  const Fixed x0 = params.initial_x == InitialX::One ? Fixed(one, dp) : Fixed(one - 1, dp);

  StageTrace trace = start_trace({x0, Fixed(0, dp), z0}, params.stages);
  const StageState last = run_stages(trace.states.front(), rot, rom, trace);
  return {mul(last.x, rom.inv_gain, dp, params.rounding), mul(last.y, rom.inv_gain, dp, params.rounding),
          std::move(trace)};
}

PipelineVectoring pipeline_vector(const Fixed& x0, const Fixed& y0, const CordicParams& params,
                                  const Rom& rom) {
  validate(params);
  CordicParams vec = params;
  vec.mode = CordicMode::Vectoring;

  const QFormat dp = datapath_format(params);
  const Fixed x = convert(x0, dp, params.rounding);
  const Fixed y = convert(y0, dp, params.rounding);
  if (x.raw() <= 0) throw DomainError("pipeline_vector: input must lie in the right half-plane");
  if (std::fabs(std::atan2(to_real(y), to_real(x))) > convergence_range(params))
    throw DomainError("pipeline_vector: vector angle outside convergence range");

  StageTrace trace = start_trace({x, y, Fixed(0, dp)}, params.stages);
  const StageState last = run_stages(trace.states.front(), vec, rom, trace);
  return {last.z, mul(last.x, rom.inv_gain, dp, params.rounding), std::move(trace)};
}

Fixed quantize_angle(double theta, const CordicParams& params) {
  const double range = convergence_range(params);
  if (!(std::fabs(theta) <= range)) {
    throw OutOfRangeError("angle " + format_shortest(theta) + " rad outside convergence range ±" +
                          format_shortest(range));
  }
  return quantize(theta, datapath_format(params), params.rounding);
}

MeasuredError measured_error(double theta, const CordicParams& params, const Rom& rom) {
  const Fixed q = quantize_angle(theta, params);
  const PipelineRotation r = pipeline_rotate(q, params, rom);
  return {to_real(r.cos_out) - std::cos(theta), to_real(r.sin_out) - std::sin(theta)};
}

std::string format_trace(const StageTrace& trace) {
  std::string out;
  for (std::size_t i = 0; i < trace.states.size(); ++i) {
    const StageState& s = trace.states[i];
    out += std::to_string(i) + ' ' + to_hex(s.x) + ' ' + to_hex(s.y) + ' ' + to_hex(s.z) + '\n';
  }
  return out;
}

}  // namespace cordic
