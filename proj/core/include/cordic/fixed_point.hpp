#pragma once

// Two's-complement fixed-point words with explicit rounding and overflow
// policies. Every operation is exact or rounds exactly once; results that do
// not fit their format raise OverflowError instead of wrapping.

#include <cstdint>
#include <string>
#include <string_view>

namespace cordic {

enum class RoundingMode {
  NearestTiesAwayFromZero,
  NearestTiesToEven,
  // Discards the low bits; rounds toward negative infinity like an
  // arithmetic right shift.
  Truncate,
};

inline constexpr RoundingMode kDefaultRounding = RoundingMode::NearestTiesAwayFromZero;

std::string_view to_string(RoundingMode mode);

// Accepts "nearest-away", "nearest-even" and "truncate".
RoundingMode parse_rounding_mode(std::string_view text);

/// Q_{x,b} format: `int_bits` integer bits including the sign bit and
/// `frac_bits` fractional bits. Widths above 63 bits are rejected so that
/// full-precision products stay exact in a 128-bit integer.
class QFormat {
 public:
  static constexpr int kMaxWidth = 63;

  /// Throws std::invalid_argument unless int_bits >= 1, frac_bits >= 1 and
  /// int_bits + frac_bits <= kMaxWidth.
  QFormat(int int_bits, int frac_bits);

  int int_bits() const noexcept { return int_bits_; }
  int frac_bits() const noexcept { return frac_bits_; }
  int width() const noexcept { return int_bits_ + frac_bits_; }

  std::int64_t min_raw() const noexcept { return -(std::int64_t{1} << (width() - 1)); }
  std::int64_t max_raw() const noexcept { return (std::int64_t{1} << (width() - 1)) - 1; }
  bool contains_raw(std::int64_t raw) const noexcept { return raw >= min_raw() && raw <= max_raw(); }

  double min_value() const noexcept;
  double max_value() const noexcept;
  // One unit in the last place, 2^-frac_bits.
  double resolution() const noexcept;

  // "Q1.15" style name.
  std::string name() const;

  friend bool operator==(const QFormat&, const QFormat&) = default;

 private:
  int int_bits_;
  int frac_bits_;
};

class Fixed {
 public:
  /// Throws OverflowError if `raw` does not fit `fmt`.
  Fixed(std::int64_t raw, QFormat fmt);

  std::int64_t raw() const noexcept { return raw_; }
  const QFormat& format() const noexcept { return fmt_; }

  friend bool operator==(const Fixed&, const Fixed&) = default;

 private:
  std::int64_t raw_;
  QFormat fmt_;
};

/// Rounds `value` onto the grid of `fmt`. Throws OverflowError when the
/// rounded value is outside the representable range (including non-finite
/// input) and DomainError for NaN.
Fixed quantize(double value, QFormat fmt, RoundingMode mode = kDefaultRounding);

double to_real(const Fixed& f) noexcept;

// Exact sum/difference. Operands must share a format (std::invalid_argument
// otherwise); signed overflow raises OverflowError.
Fixed add(const Fixed& a, const Fixed& b);
Fixed sub(const Fixed& a, const Fixed& b);
Fixed negate(const Fixed& a);

/// a * 2^-shift with the discarded bits rounded per `mode`.
/// Requires 0 <= shift <= 63; shifts past the word width are allowed and
/// leave only the rounding of the sign.
Fixed shift_right(const Fixed& a, int shift, RoundingMode mode);

/// Exact full-precision product rounded once into `out_fmt`.
Fixed mul(const Fixed& a, const Fixed& b, QFormat out_fmt, RoundingMode mode);

/// Moves `a` into `out_fmt`, rounding if fractional bits are dropped.
Fixed convert(const Fixed& a, QFormat out_fmt, RoundingMode mode = kDefaultRounding);

/// Fixed-width lowercase two's-complement hex, ceil(width/4) digits, no prefix.
std::string to_hex(const Fixed& f);

/// Inverse of to_hex. Throws ParseError on wrong length, non-hex digits, or
/// bits set above the word width.
Fixed from_hex(std::string_view text, QFormat fmt);

}  // namespace cordic
