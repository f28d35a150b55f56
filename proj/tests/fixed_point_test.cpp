#include "cordic/fixed_point.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cordic/errors.hpp"
#include "oracles.hpp"

namespace cordic {
namespace {

const QFormat kQ15{1, 15};
constexpr RoundingMode kModes[] = {RoundingMode::NearestTiesAwayFromZero, RoundingMode::NearestTiesToEven,
                                   RoundingMode::Truncate};

oracle::Round to_oracle(RoundingMode m) {
  switch (m) {
    case RoundingMode::NearestTiesAwayFromZero: return oracle::Round::Away;
    case RoundingMode::NearestTiesToEven: return oracle::Round::Even;
    case RoundingMode::Truncate: return oracle::Round::Floor;
  }
  return oracle::Round::Floor;
}

Fixed q15(std::int64_t raw) { return Fixed(raw, kQ15); }

TEST(QFormatTest, RangeAndResolution) {
  EXPECT_EQ(kQ15.width(), 16);
  EXPECT_EQ(kQ15.min_raw(), -32768);
  EXPECT_EQ(kQ15.max_raw(), 32767);
  EXPECT_EQ(kQ15.min_value(), -1.0);
  EXPECT_EQ(kQ15.max_value(), 1.0 - 0x1p-15);
  EXPECT_EQ(kQ15.resolution(), 0x1p-15);
  EXPECT_EQ(kQ15.name(), "Q1.15");
  EXPECT_EQ(QFormat(2, 61).width(), 63);
}

TEST(QFormatTest, RejectsInvalidFormats) {
  EXPECT_THROW(QFormat(0, 15), std::invalid_argument);
  EXPECT_THROW(QFormat(1, 0), std::invalid_argument);
  EXPECT_THROW(QFormat(2, 62), std::invalid_argument);
}

TEST(FixedTest, ConstructorChecksRange) {
  EXPECT_THROW(Fixed(32768, kQ15), OverflowError);
  EXPECT_THROW(Fixed(-32769, kQ15), OverflowError);
  EXPECT_NO_THROW(Fixed(-32768, kQ15));
}

TEST(QuantizeTest, Examples) {
  EXPECT_EQ(quantize(0.5, kQ15, RoundingMode::NearestTiesAwayFromZero).raw(), 16384);
  EXPECT_EQ(quantize(-1.0, kQ15, RoundingMode::NearestTiesAwayFromZero).raw(), -32768);
  // Exact integer oracle: round(78539816 * 32768 / 10^8).
  const auto expected = static_cast<std::int64_t>(
      oracle::round_div(__int128{78539816} * 32768, __int128{100000000}, oracle::Round::Away));
  EXPECT_EQ(expected, 25736);
  EXPECT_EQ(quantize(0.78539816, kQ15, RoundingMode::NearestTiesAwayFromZero).raw(), expected);
}

TEST(QuantizeTest, TieHandlingPerMode) {
  const double half_ulp = 0x1p-16;
  EXPECT_EQ(quantize(half_ulp, kQ15, RoundingMode::NearestTiesAwayFromZero).raw(), 1);
  EXPECT_EQ(quantize(-half_ulp, kQ15, RoundingMode::NearestTiesAwayFromZero).raw(), -1);
  EXPECT_EQ(quantize(half_ulp, kQ15, RoundingMode::NearestTiesToEven).raw(), 0);
  EXPECT_EQ(quantize(3 * half_ulp, kQ15, RoundingMode::NearestTiesToEven).raw(), 2);
  EXPECT_EQ(quantize(-half_ulp, kQ15, RoundingMode::Truncate).raw(), -1);
}

TEST(QuantizeTest, OverflowAndNan) {
  EXPECT_THROW(quantize(1.0, kQ15), OverflowError);
  EXPECT_THROW(quantize(1.0 - 0x1p-17, kQ15, RoundingMode::NearestTiesAwayFromZero), OverflowError);
  EXPECT_EQ(quantize(1.0 - 0x1p-17, kQ15, RoundingMode::Truncate).raw(), 32767);
  EXPECT_THROW(quantize(-1.0 - 0x1p-15, kQ15), OverflowError);
  EXPECT_THROW(quantize(INFINITY, kQ15), OverflowError);
  EXPECT_THROW(quantize(NAN, kQ15), DomainError);
  EXPECT_THROW(quantize(1e300, QFormat(2, 61)), OverflowError);
}

TEST(ToRealTest, Examples) {
  EXPECT_EQ(to_real(q15(16384)), 0.5);
  EXPECT_EQ(to_real(q15(-32768)), -1.0);
  EXPECT_EQ(to_real(q15(25736)), 0.785400390625);
}

TEST(AddTest, Examples) {
  EXPECT_EQ(add(quantize(0.25, kQ15), quantize(0.5, kQ15)), quantize(0.75, kQ15));
  EXPECT_EQ(add(quantize(-1.0, kQ15), quantize(0.0, kQ15)), quantize(-1.0, kQ15));
  EXPECT_THROW(add(quantize(0.75, kQ15), quantize(0.75, kQ15)), OverflowError);
  EXPECT_THROW(sub(q15(-32768), q15(1)), OverflowError);
  EXPECT_THROW(negate(q15(-32768)), OverflowError);
  EXPECT_THROW(add(q15(1), Fixed(1, QFormat(2, 15))), std::invalid_argument);
}

TEST(ShiftRightTest, Examples) {
  EXPECT_EQ(shift_right(quantize(0.5, kQ15), 1, RoundingMode::Truncate), quantize(0.25, kQ15));
  EXPECT_EQ(shift_right(q15(3), 2, RoundingMode::Truncate).raw(),
            static_cast<std::int64_t>(oracle::round_div(3, 4, oracle::Round::Floor)));
  EXPECT_EQ(shift_right(q15(3), 2, RoundingMode::Truncate).raw(), 0);
  EXPECT_EQ(shift_right(q15(-3), 2, RoundingMode::Truncate).raw(),
            static_cast<std::int64_t>(oracle::round_div(-3, 4, oracle::Round::Floor)));
  EXPECT_EQ(shift_right(q15(-3), 2, RoundingMode::Truncate).raw(), -1);
  EXPECT_EQ(shift_right(q15(-2), 2, RoundingMode::NearestTiesAwayFromZero).raw(), -1);
  EXPECT_EQ(shift_right(q15(2), 2, RoundingMode::NearestTiesAwayFromZero).raw(), 1);
  EXPECT_EQ(shift_right(q15(2), 2, RoundingMode::NearestTiesToEven).raw(), 0);
  EXPECT_EQ(shift_right(q15(6), 2, RoundingMode::NearestTiesToEven).raw(), 2);
  EXPECT_EQ(shift_right(q15(-1), 20, RoundingMode::Truncate).raw(), -1);
  EXPECT_EQ(shift_right(q15(32767), 20, RoundingMode::NearestTiesAwayFromZero).raw(), 0);
  EXPECT_THROW(shift_right(q15(1), 64, RoundingMode::Truncate), std::invalid_argument);
  EXPECT_THROW(shift_right(q15(1), -1, RoundingMode::Truncate), std::invalid_argument);
}

TEST(MulTest, Examples) {
  const auto r = RoundingMode::NearestTiesAwayFromZero;
  EXPECT_EQ(mul(quantize(0.5, kQ15), quantize(0.5, kQ15), kQ15, r), quantize(0.25, kQ15));
  EXPECT_EQ(mul(q15(32767), q15(0), kQ15, r).raw(), 0);
  const auto expected = static_cast<std::int64_t>(
      oracle::round_div(__int128{25736} * 25736, 32768, oracle::Round::Away));
  EXPECT_EQ(expected, 20213);
  EXPECT_EQ(mul(q15(25736), q15(25736), kQ15, r).raw(), expected);
  EXPECT_THROW(mul(q15(-32768), q15(-32768), kQ15, r), OverflowError);
  // Widening output: no rounding at all.
  EXPECT_EQ(mul(q15(3), q15(5), QFormat(2, 40), r).raw(), 15 << 10);
}

TEST(MulTest, SingleRoundingMatchesOracle) {
  std::mt19937_64 rng(11);
  const QFormat wide(2, 40);
  std::uniform_int_distribution<std::int64_t> a_dist(wide.min_raw(), wide.max_raw());
  std::uniform_int_distribution<std::int64_t> b_dist(kQ15.min_raw(), kQ15.max_raw());
  for (int i = 0; i < 20000; ++i) {
    const Fixed a(a_dist(rng), wide), b(b_dist(rng), kQ15);
    for (RoundingMode m : kModes) {
      const __int128 expected = oracle::round_div(__int128{a.raw()} * b.raw(), __int128{1} << 40, to_oracle(m));
      if (expected < QFormat(2, 15).min_raw() || expected > QFormat(2, 15).max_raw()) continue;
      EXPECT_EQ(mul(a, b, QFormat(2, 15), m).raw(), static_cast<std::int64_t>(expected));
    }
  }
}

TEST(HexTest, Examples) {
  EXPECT_EQ(to_hex(q15(16384)), "4000");
  EXPECT_EQ(to_hex(q15(-32768)), "8000");
  EXPECT_EQ(to_hex(q15(-1)), "ffff");
  EXPECT_EQ(to_hex(Fixed(-1, QFormat(2, 15))), "1ffff");
  EXPECT_EQ(to_hex(Fixed(1, QFormat(2, 61))), "0000000000000001");
  EXPECT_EQ(to_hex(Fixed(-1, QFormat(2, 61))), "7fffffffffffffff");
  EXPECT_EQ(from_hex("8000", kQ15).raw(), -32768);
  EXPECT_EQ(from_hex("FFFF", kQ15).raw(), -1);
}

TEST(HexTest, MalformedInput) {
  EXPECT_THROW(from_hex("400", kQ15), ParseError);
  EXPECT_THROW(from_hex("40000", kQ15), ParseError);
  EXPECT_THROW(from_hex("40g0", kQ15), ParseError);
  EXPECT_THROW(from_hex("0x40", kQ15), ParseError);
  EXPECT_THROW(from_hex("20000", QFormat(2, 15)), ParseError);  // bit 17 set
}

TEST(ParseRoundingTest, Names) {
  for (RoundingMode m : kModes) EXPECT_EQ(parse_rounding_mode(to_string(m)), m);
  EXPECT_THROW(parse_rounding_mode("floor"), ParseError);
}

// Properties --------------------------------------------------------------

TEST(FixedPointProperty, RepresentableValuesAreFixedPoints) {
  for (const QFormat fmt : {QFormat(1, 7), QFormat(1, 15), QFormat(2, 15)})
    for (std::int64_t raw = fmt.min_raw(); raw <= fmt.max_raw(); ++raw)
      for (RoundingMode m : kModes) ASSERT_EQ(quantize(to_real(Fixed(raw, fmt)), fmt, m).raw(), raw);
}

TEST(FixedPointProperty, QuantizationErrorBound) {
  std::mt19937_64 rng(1);
  for (const QFormat fmt : {QFormat(1, 8), QFormat(1, 15), QFormat(3, 30)}) {
    std::uniform_real_distribution<double> dist(fmt.min_value(), fmt.max_value());
    const double ulp = fmt.resolution();
    for (int i = 0; i < 100000; ++i) {
      const double v = dist(rng);
      for (RoundingMode m : kModes) {
        const double err = std::fabs(to_real(quantize(v, fmt, m)) - v);
        if (m == RoundingMode::Truncate) ASSERT_LT(err, ulp);
        else ASSERT_LE(err, ulp / 2);
      }
    }
  }
}

TEST(FixedPointProperty, AddCommutativeAndAssociative) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::int64_t> d(-20000, 20000);
  for (int i = 0; i < 50000; ++i) {
    const Fixed a = q15(d(rng)), b = q15(d(rng)), c = q15(d(rng));
    Fixed left(0, kQ15), right(0, kQ15);
    try {
      ASSERT_EQ(add(a, b), add(b, a));
      left = add(add(a, b), c);
      right = add(a, add(b, c));
    } catch (const OverflowError&) {
      continue;  // only claimed without intermediate overflow
    }
    ASSERT_EQ(left, right);
  }
}

TEST(FixedPointProperty, TruncatingShiftsCompose) {
  std::mt19937_64 rng(3);
  const QFormat fmt(2, 15);
  std::uniform_int_distribution<std::int64_t> d(fmt.min_raw(), fmt.max_raw());
  std::uniform_int_distribution<int> s(0, 8);
  for (int n = 0; n < 50000; ++n) {
    const Fixed a(d(rng), fmt);
    const int i = s(rng), j = s(rng);
    ASSERT_EQ(shift_right(a, i + j, RoundingMode::Truncate),
              shift_right(shift_right(a, i, RoundingMode::Truncate), j, RoundingMode::Truncate));
  }
}

TEST(FixedPointProperty, ShiftMatchesIntegerOracleAndErrorBound) {
  const QFormat fmt(2, 15);
  for (std::int64_t raw = fmt.min_raw(); raw <= fmt.max_raw(); raw += 7) {
    for (int i = 0; i < 17; ++i) {
      for (RoundingMode m : kModes) {
        const Fixed r = shift_right(Fixed(raw, fmt), i, m);
        ASSERT_EQ(r.raw(), static_cast<std::int64_t>(oracle::round_div(raw, __int128{1} << i, to_oracle(m))));
        const double err = std::fabs(to_real(r) - std::ldexp(static_cast<double>(raw), -15 - i));
        if (m == RoundingMode::Truncate) ASSERT_LE(err, fmt.resolution());
        else ASSERT_LE(err, fmt.resolution() / 2);
      }
    }
  }
}

TEST(FixedPointProperty, HexRoundTrip) {
  for (std::int64_t raw = kQ15.min_raw(); raw <= kQ15.max_raw(); ++raw) ASSERT_EQ(from_hex(to_hex(q15(raw)), kQ15).raw(), raw);
  std::mt19937_64 rng(4);
  for (const QFormat fmt : {QFormat(2, 15), QFormat(3, 30), QFormat(2, 61)}) {
    std::uniform_int_distribution<std::int64_t> d(fmt.min_raw(), fmt.max_raw());
    for (int i = 0; i < 10000; ++i) {
      const Fixed f(d(rng), fmt);
      ASSERT_EQ(from_hex(to_hex(f), fmt), f);
    }
  }
}

}  // namespace
}  // namespace cordic
