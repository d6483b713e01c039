// SPDX-License-Identifier: Apache-2.0

#ifndef BITMETER_FORMATS_HPP
#define BITMETER_FORMATS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bitmeter {

enum class FormatKind : std::uint8_t {
  unsigned_int,
  signed_int_twos_complement,
  floating_point,
};

/// How NaN bit patterns are allocated inside a floating-point format.
enum class NanPolicy : std::uint8_t {
  ieee_all_payloads,   ///< all-ones exponent, any nonzero mantissa payload
  single_nan_pattern,  ///< exactly one NaN, at the sign=1/all-else-0 pattern
  two_nan_patterns,    ///< all-ones exponent and mantissa, both signs
  none,                ///< no NaN pattern
};

enum class InfPolicy : std::uint8_t {
  ieee_pair,  ///< +/-Inf at all-ones exponent, zero mantissa
  none,
};

/// Declarative description of a number format: the encoder/decoder pair
/// that maps bit patterns to values. Integer formats are bijective;
/// floating-point formats may map several patterns to the same value
/// (redundant NaNs, collapsed zeros), which is what encoding efficiency
/// measures.
struct FormatSpec {
  std::string name;
  int width = 0;
  FormatKind kind = FormatKind::unsigned_int;

  // floating-point only
  int exponent_bits = 0;
  int mantissa_bits = 0;
  std::optional<int> exponent_bias;  ///< default 2^(exponent_bits-1)-1
  NanPolicy nan_policy = NanPolicy::none;
  InfPolicy inf_policy = InfPolicy::none;
  bool has_subnormals = true;
  bool signed_zero = true;

  bool is_float() const { return kind == FormatKind::floating_point; }
  bool is_signed_int() const { return kind == FormatKind::signed_int_twos_complement; }

  /// Resolved exponent bias (explicit value or the IEEE default).
  int bias() const {
    if (exponent_bias) return *exponent_bias;
    return exponent_bits >= 1 ? (1 << (exponent_bits - 1)) - 1 : 0;
  }

  /// Throws errc::validation when the fields are inconsistent.
  void validate() const;
};

enum class ValueClass : std::uint8_t { finite, nan, pos_inf, neg_inf };

/// Canonical value identity. Finite values are sign * significand * 2^exponent
/// with the significand odd (or zero with exponent zero), so equal values
/// always compare equal regardless of the pattern they came from. +0 and -0
/// are distinct (sign differs); all NaN patterns collapse to one value.
struct DecodedValue {
  ValueClass cls = ValueClass::finite;
  std::int8_t sign = 1;
  std::uint64_t significand = 0;
  std::int32_t exponent = 0;

  static DecodedValue make_nan() { return {ValueClass::nan, 1, 0, 0}; }
  static DecodedValue make_inf(int sign) {
    return {sign < 0 ? ValueClass::neg_inf : ValueClass::pos_inf, 1, 0, 0};
  }
  /// Canonicalizes sign*magnitude*2^exponent (magnitude need not be odd).
  static DecodedValue make_finite(int sign, std::uint64_t magnitude, std::int32_t exponent);

  bool is_zero() const { return cls == ValueClass::finite && significand == 0; }

  /// Exact numeric value; +/-Inf and NaN map to the IEEE doubles.
  /// Finite values may round when they exceed double precision.
  double to_double() const;

  friend bool operator==(const DecodedValue&, const DecodedValue&) = default;
};

/// Total order used for reports: -Inf, finite ascending (with -0 before +0),
/// +Inf, NaN last.
bool value_less(const DecodedValue& a, const DecodedValue& b);

struct DecodedValueHash {
  std::size_t operator()(const DecodedValue& v) const noexcept;
};

/// Value-level multiplicity structure of a format: how many of the 2^width
/// bit patterns decode to each distinct value.
struct MultiplicityMap {
  std::vector<std::pair<DecodedValue, std::uint64_t>> entries;  ///< value-sorted
  std::uint64_t total = 0;                                      ///< == 2^width

  std::size_t distinct_values() const { return entries.size(); }
  std::uint64_t nan_multiplicity() const;
};

/// Width guard for exhaustive pattern enumeration.
inline constexpr int kMaxEnumerationWidth = 24;

/// Decodes one bit pattern (low `width` bits of `pattern`) to its value.
/// Total: every pattern decodes to exactly one value.
DecodedValue decode(const FormatSpec& spec, std::uint64_t pattern);

/// Decodes all 2^width patterns and tallies the multiplicity of every
/// distinct value. Throws errc::enumeration_too_large above the guard.
MultiplicityMap enumerate_values(const FormatSpec& spec);

/// eta = H(V) / width, where V is the decoded value under uniformly random
/// bit patterns. 1 exactly when the encoding is bijective.
double encoding_efficiency(const FormatSpec& spec);

/// Nearest-representable encoding of a real value given as
/// sign * magnitude * 2^exponent (round to nearest, ties to even).
/// Overflow produces Inf when the format has infinities, otherwise the
/// largest finite magnitude. NaN input requires a NaN pattern.
std::uint64_t encode_value(const FormatSpec& spec, const DecodedValue& value);

/// Convenience wrapper for doubles.
std::uint64_t encode_double(const FormatSpec& spec, double value);

/// The code of the format's canonical NaN pattern. Throws errc::validation
/// when the format has none.
std::uint64_t canonical_nan_code(const FormatSpec& spec);

/// Two's-complement / unsigned value of an integer-format code.
std::int64_t integer_value(const FormatSpec& spec, std::uint64_t code);

/// Inverse of integer_value; the value must be in range.
std::uint64_t integer_code(const FormatSpec& spec, std::int64_t value);

/// Ships the specs used throughout the reports: int8, int16, fp64, fp32,
/// fp16, fp8_e5m2, fp8_e4m3_ocp, fp8_e4m3_ieee_hypothetical, e2m3_ieee,
/// e2m3_single_nan.
const std::vector<FormatSpec>& builtin_formats();

/// Resolves names against the built-in corpus plus formats loaded from
/// definition files. Built-ins win name conflicts unless allow_override.
class FormatRegistry {
 public:
  FormatRegistry();

  /// Loads a JSON format-definition file (one object or an array of them).
  void load_file(const std::string& path, bool allow_override = false);
  void add(FormatSpec spec, bool allow_override = false);

  /// Throws errc::unknown_format when the name resolves to nothing.
  const FormatSpec& resolve(std::string_view name) const;
  bool contains(std::string_view name) const;

 private:
  std::vector<FormatSpec> formats_;
};

}  // namespace bitmeter

#endif  // BITMETER_FORMATS_HPP
