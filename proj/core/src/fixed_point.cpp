#include "cordic/fixed_point.hpp"

#include <cmath>
#include <stdexcept>

#include "cordic/errors.hpp"

namespace cordic {
namespace {

using Wide = __int128;

[[noreturn]] void throw_overflow(const char* op, const QFormat& fmt) {
  throw OverflowError(std::string(op) + ": result exceeds " + fmt.name() + " range");
}

Fixed checked(Wide raw, const QFormat& fmt, const char* op) {
  if (raw < fmt.min_raw() || raw > fmt.max_raw()) throw_overflow(op, fmt);
  return Fixed(static_cast<std::int64_t>(raw), fmt);
}

Wide floor_shift(Wide value, int shift) { return value >> shift; }

// value * 2^-shift rounded per mode; shift >= 0.
Wide round_shift(Wide value, int shift, RoundingMode mode) {
  if (shift == 0) return value;
  const Wide q = floor_shift(value, shift);
  if (mode == RoundingMode::Truncate) return q;
  const Wide rem = value - (q << shift);  // in [0, 2^shift)
  const Wide half = Wide{1} << (shift - 1);
  if (rem > half) return q + 1;
  if (rem < half) return q;
  if (mode == RoundingMode::NearestTiesAwayFromZero) return value >= 0 ? q + 1 : q;
  return (q & 1) == 0 ? q : q + 1;
}

}  // namespace

std::string_view to_string(RoundingMode mode) {
  switch (mode) {
    case RoundingMode::NearestTiesAwayFromZero: return "nearest-away";
    case RoundingMode::NearestTiesToEven: return "nearest-even";
    case RoundingMode::Truncate: return "truncate";
  }
  return "unknown";
}

RoundingMode parse_rounding_mode(std::string_view text) {
  if (text == "nearest-away") return RoundingMode::NearestTiesAwayFromZero;
  if (text == "nearest-even") return RoundingMode::NearestTiesToEven;
  if (text == "truncate") return RoundingMode::Truncate;
  throw ParseError("unknown rounding mode '" + std::string(text) + "'");
}

QFormat::QFormat(int int_bits, int frac_bits) : int_bits_(int_bits), frac_bits_(frac_bits) {
  if (int_bits < 1 || frac_bits < 1)
    throw std::invalid_argument("QFormat needs at least one integer and one fractional bit");
  if (int_bits + frac_bits > kMaxWidth)
    throw std::invalid_argument("QFormat wider than 63 bits is not supported");
}

double QFormat::min_value() const noexcept { return -std::ldexp(1.0, int_bits_ - 1); }

double QFormat::max_value() const noexcept {
  return std::ldexp(static_cast<double>(max_raw()), -frac_bits_);
}

double QFormat::resolution() const noexcept { return std::ldexp(1.0, -frac_bits_); }

std::string QFormat::name() const {
  return "Q" + std::to_string(int_bits_) + "." + std::to_string(frac_bits_);
}

Fixed::Fixed(std::int64_t raw, QFormat fmt) : raw_(raw), fmt_(fmt) {
  if (!fmt_.contains_raw(raw_)) throw_overflow("Fixed", fmt_);
}

Fixed quantize(double value, QFormat fmt, RoundingMode mode) {
  if (std::isnan(value)) throw DomainError("quantize: NaN input");
  // Scaling by a power of two is exact; the rounding below is the only one.
  const double scaled = std::ldexp(value, fmt.frac_bits());
  if (!(std::fabs(scaled) < 0x1p63)) throw_overflow("quantize", fmt);

  const double lower = std::floor(scaled);
  const double frac = scaled - lower;  // exact
  double rounded = lower;
  switch (mode) {
    case RoundingMode::Truncate:
      break;
    case RoundingMode::NearestTiesAwayFromZero:
      rounded = std::round(scaled);
      break;
    case RoundingMode::NearestTiesToEven:
      if (frac > 0.5 || (frac == 0.5 && std::fmod(lower, 2.0) != 0.0)) rounded = lower + 1.0;
      break;
  }
  if (!(std::fabs(rounded) < 0x1p63)) throw_overflow("quantize", fmt);
  return checked(static_cast<Wide>(static_cast<std::int64_t>(rounded)), fmt, "quantize");
}

double to_real(const Fixed& f) noexcept {
  return std::ldexp(static_cast<double>(f.raw()), -f.format().frac_bits());
}

Fixed add(const Fixed& a, const Fixed& b) {
  if (a.format() != b.format()) throw std::invalid_argument("add: operand formats differ");
  return checked(Wide{a.raw()} + b.raw(), a.format(), "add");
}

Fixed sub(const Fixed& a, const Fixed& b) {
  if (a.format() != b.format()) throw std::invalid_argument("sub: operand formats differ");
  return checked(Wide{a.raw()} - b.raw(), a.format(), "sub");
}

Fixed negate(const Fixed& a) { return checked(-Wide{a.raw()}, a.format(), "negate"); }

Fixed shift_right(const Fixed& a, int shift, RoundingMode mode) {
  if (shift < 0 || shift > 63) throw std::invalid_argument("shift_right: shift amount outside [0, 63]");
  return checked(round_shift(a.raw(), shift, mode), a.format(), "shift_right");
}

Fixed mul(const Fixed& a, const Fixed& b, QFormat out_fmt, RoundingMode mode) {
  const Wide product = Wide{a.raw()} * Wide{b.raw()};
  const int drop = a.format().frac_bits() + b.format().frac_bits() - out_fmt.frac_bits();
  if (drop >= 0) return checked(round_shift(product, drop, mode), out_fmt, "mul");
  // Widening past 127 bits would already be far outside any 63-bit format.
  if (product != 0 && -drop > 63) throw_overflow("mul", out_fmt);
  return checked(product * (Wide{1} << -drop), out_fmt, "mul");
}

Fixed convert(const Fixed& a, QFormat out_fmt, RoundingMode mode) {
  const int drop = a.format().frac_bits() - out_fmt.frac_bits();
  if (drop >= 0) return checked(round_shift(a.raw(), drop, mode), out_fmt, "convert");
  return checked(Wide{a.raw()} << -drop, out_fmt, "convert");
}

std::string to_hex(const Fixed& f) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const int width = f.format().width();
  const int digits = (width + 3) / 4;
  const std::uint64_t mask = (std::uint64_t{1} << width) - 1;
  std::uint64_t bits = static_cast<std::uint64_t>(f.raw()) & mask;
  std::string out(static_cast<std::size_t>(digits), '0');
  for (int i = digits - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[bits & 0xf];
    bits >>= 4;
  }
  return out;
}

Fixed from_hex(std::string_view text, QFormat fmt) {
  const int width = fmt.width();
  const auto digits = static_cast<std::size_t>((width + 3) / 4);
  if (text.size() != digits)
    throw ParseError("hex word '" + std::string(text) + "' must have " + std::to_string(digits) +
                     " digits for " + fmt.name());
  std::uint64_t bits = 0;
  for (char c : text) {
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    else throw ParseError("invalid hex digit in '" + std::string(text) + "'");
    bits = (bits << 4) | static_cast<std::uint64_t>(v);
  }
  if (bits >> width != 0)
    throw ParseError("hex word '" + std::string(text) + "' has bits above " + fmt.name() + " width");
  if ((bits >> (width - 1)) & 1) bits |= ~((std::uint64_t{1} << width) - 1);  // sign-extend
  return Fixed(static_cast<std::int64_t>(bits), fmt);
}

}  // namespace cordic
