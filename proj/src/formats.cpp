// SPDX-License-Identifier: Apache-2.0

#include "bitmeter/formats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

#include "bitmeter/error.hpp"
#include "bitmeter/parallel.hpp"
#include "exact_real.hpp"

namespace bitmeter {

namespace {

std::uint64_t mask_bits(int n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

const char* kind_name(FormatKind k) {
  switch (k) {
    case FormatKind::unsigned_int: return "unsigned_int";
    case FormatKind::signed_int_twos_complement: return "signed_int_twos_complement";
    case FormatKind::floating_point: return "float";
  }
  return "?";
}

}  // namespace

void FormatSpec::validate() const {
  if (width < 1) fail(errc::validation, "format '" + name + "': width must be >= 1");
  if (width > 64) fail(errc::validation, "format '" + name + "': width above 64 is not supported");
  if (!is_float()) {
    if (kind == FormatKind::unsigned_int && width > 63)
      fail(errc::validation, "format '" + name + "': unsigned width above 63 is not supported");
    return;
  }
  if (exponent_bits < 0 || mantissa_bits < 0)
    fail(errc::validation, "format '" + name + "': negative field width");
  if (1 + exponent_bits + mantissa_bits != width)
    fail(errc::validation, "format '" + name + "': 1 + exponent_bits + mantissa_bits != width");
  if (nan_policy == NanPolicy::ieee_all_payloads) {
    if (inf_policy != InfPolicy::ieee_pair)
      fail(errc::validation,
           "format '" + name + "': ieee_all_payloads requires inf_policy ieee_pair");
    if (mantissa_bits < 1)
      fail(errc::validation, "format '" + name + "': ieee_all_payloads requires mantissa_bits >= 1");
  }
  if (inf_policy == InfPolicy::ieee_pair && nan_policy != NanPolicy::ieee_all_payloads)
    fail(errc::validation,
         "format '" + name + "': inf_policy ieee_pair requires nan_policy ieee_all_payloads");
  if ((nan_policy == NanPolicy::ieee_all_payloads || nan_policy == NanPolicy::two_nan_patterns ||
       inf_policy == InfPolicy::ieee_pair) &&
      exponent_bits < 1)
    fail(errc::validation, "format '" + name + "': special-value policy needs exponent_bits >= 1");
  if (nan_policy == NanPolicy::two_nan_patterns && mantissa_bits < 1)
    fail(errc::validation, "format '" + name + "': two_nan_patterns requires mantissa_bits >= 1");
  if (nan_policy == NanPolicy::single_nan_pattern && signed_zero)
    fail(errc::validation,
         "format '" + name + "': single_nan_pattern occupies the negative-zero pattern; "
         "signed_zero must be false");
}

DecodedValue DecodedValue::make_finite(int sign, std::uint64_t magnitude, std::int32_t exponent) {
  DecodedValue v;
  v.cls = ValueClass::finite;
  if (magnitude == 0) {
    v.sign = 1;
    v.significand = 0;
    v.exponent = 0;
    return v;
  }
  int shift = std::countr_zero(magnitude);
  v.sign = sign < 0 ? -1 : 1;
  v.significand = magnitude >> shift;
  v.exponent = exponent + shift;
  return v;
}

double DecodedValue::to_double() const {
  switch (cls) {
    case ValueClass::nan: return std::numeric_limits<double>::quiet_NaN();
    case ValueClass::pos_inf: return std::numeric_limits<double>::infinity();
    case ValueClass::neg_inf: return -std::numeric_limits<double>::infinity();
    case ValueClass::finite: break;
  }
  if (significand == 0) return sign < 0 ? -0.0 : 0.0;
  double m = std::ldexp(static_cast<double>(significand), exponent);
  return sign < 0 ? -m : m;
}

namespace {

// Numeric order of two finite canonical values; -0 sorts below +0.
int compare_finite(const DecodedValue& a, const DecodedValue& b) {
  const bool az = a.significand == 0, bz = b.significand == 0;
  if (az && bz) return (a.sign > b.sign) - (a.sign < b.sign);
  if (az) return b.sign > 0 ? -1 : 1;
  if (bz) return a.sign > 0 ? 1 : -1;
  if (a.sign != b.sign) return a.sign < b.sign ? -1 : 1;
  // Same sign, both nonzero. Compare magnitudes by leading-bit position
  // first; only equal positions need an aligned wide compare.
  const int wa = std::bit_width(a.significand);
  const int wb = std::bit_width(b.significand);
  const std::int64_t hi_a = static_cast<std::int64_t>(a.exponent) + wa;
  const std::int64_t hi_b = static_cast<std::int64_t>(b.exponent) + wb;
  int mag;
  if (hi_a != hi_b) {
    mag = hi_a < hi_b ? -1 : 1;
  } else {
    // hi equal implies |exponent gap| == |bit-width gap| <= 63.
    const int sa = wb >= wa ? wb - wa : 0;
    const int sb = wa >= wb ? wa - wb : 0;
    const unsigned __int128 ma = static_cast<unsigned __int128>(a.significand) << sa;
    const unsigned __int128 mb = static_cast<unsigned __int128>(b.significand) << sb;
    mag = ma == mb ? 0 : (ma < mb ? -1 : 1);
  }
  return a.sign > 0 ? mag : -mag;
}

int class_rank(ValueClass c) {
  switch (c) {
    case ValueClass::neg_inf: return 0;
    case ValueClass::finite: return 1;
    case ValueClass::pos_inf: return 2;
    case ValueClass::nan: return 3;
  }
  return 4;
}

}  // namespace

bool value_less(const DecodedValue& a, const DecodedValue& b) {
  const int ra = class_rank(a.cls), rb = class_rank(b.cls);
  if (ra != rb) return ra < rb;
  if (a.cls != ValueClass::finite) return false;
  return compare_finite(a, b) < 0;
}

std::size_t DecodedValueHash::operator()(const DecodedValue& v) const noexcept {
  std::uint64_t h = v.significand;
  h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v.exponent)) << 1;
  h ^= (static_cast<std::uint64_t>(v.cls) << 56) ^ (v.sign < 0 ? 0x8000000000000000ull : 0);
  h *= 0x9e3779b97f4a7c15ull;
  h ^= h >> 29;
  return static_cast<std::size_t>(h);
}

std::uint64_t MultiplicityMap::nan_multiplicity() const {
  for (const auto& [value, count] : entries)
    if (value.cls == ValueClass::nan) return count;
  return 0;
}

DecodedValue decode(const FormatSpec& spec, std::uint64_t pattern) {
  if (spec.width < 64 && pattern > mask_bits(spec.width))
    fail(errc::validation, "pattern does not fit in " + std::to_string(spec.width) + " bits");

  if (spec.kind == FormatKind::unsigned_int) {
    return DecodedValue::make_finite(1, pattern, 0);
  }
  if (spec.kind == FormatKind::signed_int_twos_complement) {
    const std::uint64_t sign_bit = std::uint64_t{1} << (spec.width - 1);
    if (pattern & sign_bit) {
      // magnitude of pattern - 2^width, computed without overflow
      const std::uint64_t mag = (~pattern & mask_bits(spec.width)) + 1;
      return DecodedValue::make_finite(-1, mag, 0);
    }
    return DecodedValue::make_finite(1, pattern, 0);
  }

  const int E = spec.exponent_bits, M = spec.mantissa_bits;
  const std::uint64_t sign = (pattern >> (E + M)) & 1;
  const std::uint64_t e = (pattern >> M) & mask_bits(E);
  const std::uint64_t m = pattern & mask_bits(M);
  const std::uint64_t e_top = mask_bits(E);

  switch (spec.nan_policy) {
    case NanPolicy::ieee_all_payloads:
      if (E >= 1 && e == e_top) {
        if (m == 0) return DecodedValue::make_inf(sign ? -1 : 1);
        return DecodedValue::make_nan();
      }
      break;
    case NanPolicy::two_nan_patterns:
      if (e == e_top && m == mask_bits(M)) return DecodedValue::make_nan();
      break;
    case NanPolicy::single_nan_pattern:
      if (sign == 1 && e == 0 && m == 0) return DecodedValue::make_nan();
      break;
    case NanPolicy::none:
      if (spec.inf_policy == InfPolicy::ieee_pair && E >= 1 && e == e_top && m == 0)
        return DecodedValue::make_inf(sign ? -1 : 1);
      break;
  }

  const int bias = spec.bias();
  if (e == 0) {
    if (m == 0 || !spec.has_subnormals) {
      // zero (non-subnormal payloads flush to zero)
      DecodedValue v;
      v.cls = ValueClass::finite;
      v.sign = (sign && spec.signed_zero) ? -1 : 1;
      return v;
    }
    return DecodedValue::make_finite(sign ? -1 : 1, m, 1 - bias - M);
  }
  const std::uint64_t sig = (std::uint64_t{1} << M) | m;
  return DecodedValue::make_finite(sign ? -1 : 1, sig,
                                   static_cast<std::int32_t>(e) - bias - M);
}

MultiplicityMap enumerate_values(const FormatSpec& spec) {
  spec.validate();
  if (spec.width > kMaxEnumerationWidth)
    fail(errc::enumeration_too_large,
         "format '" + spec.name + "' is " + std::to_string(spec.width) +
             " bits wide; enumeration is guarded at " + std::to_string(kMaxEnumerationWidth));

  const std::uint64_t n = std::uint64_t{1} << spec.width;
  std::vector<DecodedValue> values(n);
  parallel_for(static_cast<std::int64_t>(n), [&](std::int64_t begin, std::int64_t end) {
    for (std::int64_t p = begin; p < end; ++p)
      values[static_cast<std::size_t>(p)] = decode(spec, static_cast<std::uint64_t>(p));
  });
  std::sort(values.begin(), values.end(), value_less);

  MultiplicityMap map;
  map.total = n;
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i + 1;
    while (j < values.size() && values[j] == values[i]) ++j;
    map.entries.emplace_back(values[i], j - i);
    i = j;
  }
  return map;
}

double encoding_efficiency(const FormatSpec& spec) {
  const MultiplicityMap map = enumerate_values(spec);
  // H = width - (1/N) * sum m*log2(m); bijective encodings give exactly 1.
  double redundancy = 0.0, comp = 0.0;
  for (const auto& [value, m] : map.entries) {
    if (m <= 1) continue;
    const double term = static_cast<double>(m) * std::log2(static_cast<double>(m));
    const double t = redundancy + term;
    comp += std::abs(redundancy) >= std::abs(term) ? (redundancy - t) + term
                                                   : (term - t) + redundancy;
    redundancy = t;
  }
  redundancy += comp;
  const double h = static_cast<double>(spec.width) -
                   redundancy / static_cast<double>(map.total);
  return h / static_cast<double>(spec.width);
}

namespace detail {

namespace {

using boost::multiprecision::cpp_int;

// n / 2^k rounded to nearest, ties to even.
BigInt rne_shift(const BigInt& n, std::int64_t k) {
  if (k <= 0) return n << static_cast<unsigned>(-k);
  BigInt q = n >> static_cast<unsigned>(k);
  const BigInt rem = n - (q << static_cast<unsigned>(k));
  const BigInt half = BigInt(1) << static_cast<unsigned>(k - 1);
  if (rem > half || (rem == half && (q & 1) != 0)) ++q;
  return q;
}

std::uint64_t compose_code(const FormatSpec& spec, int sign, std::uint64_t field_e,
                           std::uint64_t mantissa) {
  const int E = spec.exponent_bits, M = spec.mantissa_bits;
  std::uint64_t code = (field_e << M) | mantissa;
  if (sign < 0) code |= std::uint64_t{1} << (E + M);
  return code;
}

std::uint64_t zero_code(const FormatSpec& spec, int sign) {
  if (sign < 0 && spec.signed_zero)
    return std::uint64_t{1} << (spec.width - 1);
  return 0;
}

std::uint64_t max_finite_code(const FormatSpec& spec, int sign) {
  const int E = spec.exponent_bits, M = spec.mantissa_bits;
  std::uint64_t field_e, mantissa;
  switch (spec.nan_policy) {
    case NanPolicy::ieee_all_payloads:
      field_e = mask_bits(E) - 1;
      mantissa = mask_bits(M);
      break;
    case NanPolicy::two_nan_patterns:
      field_e = mask_bits(E);
      mantissa = mask_bits(M) - 1;
      break;
    default:
      field_e = mask_bits(E);
      mantissa = mask_bits(M);
      break;
  }
  return compose_code(spec, sign, field_e, mantissa);
}

std::uint64_t inf_code(const FormatSpec& spec, int sign) {
  return compose_code(spec, sign, mask_bits(spec.exponent_bits), 0);
}

std::uint64_t overflow_code(const FormatSpec& spec, int sign) {
  if (spec.inf_policy == InfPolicy::ieee_pair) return inf_code(spec, sign);
  return max_finite_code(spec, sign);  // saturating formats have no Inf
}

}  // namespace

std::uint64_t encode_exact(const FormatSpec& spec, const ExactReal& value) {
  const int E = spec.exponent_bits, M = spec.mantissa_bits;
  const int bias = spec.bias();
  if (value.is_zero()) return zero_code(spec, value.sign);

  const std::int64_t bitlen = static_cast<std::int64_t>(msb(value.sig)) + 1;
  std::int64_t e_v = value.exp + bitlen - 1;
  const std::int64_t emin = 1 - bias;

  // Below the normal range (or no normal range at all when E == 0).
  if (E == 0 || e_v < emin) {
    if (!spec.has_subnormals) {
      // Round across the gap [0, min_normal]: the midpoint and below go to zero.
      const ExactReal half_min{1, 1, emin - 1};
      const int cmp = exact_compare({1, value.sig, value.exp}, half_min);
      if (cmp <= 0) return zero_code(spec, value.sign);
      return compose_code(spec, value.sign, 1, 0);
    }
    BigInt r = rne_shift(value.sig, (emin - M) - value.exp);
    if (r >= (BigInt(1) << static_cast<unsigned>(M))) {
      if (E == 0) return max_finite_code(spec, value.sign);  // subnormal-only grid
      return compose_code(spec, value.sign, 1, 0);           // rounded up to min normal
    }
    if (r == 0) return zero_code(spec, value.sign);
    std::uint64_t mantissa = r.convert_to<std::uint64_t>();
    // single_nan_pattern reserves the sign=1 all-zero pattern; unreachable
    // here because mantissa > 0.
    return compose_code(spec, value.sign, 0, mantissa);
  }

  // Normal range: round the significand to M+1 bits.
  BigInt r = rne_shift(value.sig, (bitlen - 1) - M);
  if (r == (BigInt(1) << static_cast<unsigned>(M + 1))) {
    r >>= 1;
    ++e_v;
  }
  const std::int64_t emax =
      (spec.nan_policy == NanPolicy::ieee_all_payloads ? mask_bits(E) - 1 : mask_bits(E)) -
      static_cast<std::int64_t>(bias);
  if (e_v > emax) return overflow_code(spec, value.sign);
  std::uint64_t sig = r.convert_to<std::uint64_t>();
  std::uint64_t mantissa = sig - (std::uint64_t{1} << M);
  std::uint64_t field_e = static_cast<std::uint64_t>(e_v + bias);
  if (spec.nan_policy == NanPolicy::two_nan_patterns && field_e == mask_bits(E) &&
      mantissa == mask_bits(M))
    return max_finite_code(spec, value.sign);  // NaN slot; saturate below it
  return compose_code(spec, value.sign, field_e, mantissa);
}

}  // namespace detail

std::uint64_t canonical_nan_code(const FormatSpec& spec) {
  if (!spec.is_float()) fail(errc::validation, "integer formats have no NaN");
  const int E = spec.exponent_bits, M = spec.mantissa_bits;
  switch (spec.nan_policy) {
    case NanPolicy::ieee_all_payloads:
      return (mask_bits(E) << M) | (std::uint64_t{1} << (M - 1));  // quiet bit
    case NanPolicy::two_nan_patterns:
      return (mask_bits(E) << M) | mask_bits(M);
    case NanPolicy::single_nan_pattern:
      return std::uint64_t{1} << (spec.width - 1);
    case NanPolicy::none:
      fail(errc::validation, "format '" + spec.name + "' has no NaN pattern");
  }
  return 0;
}

std::uint64_t encode_value(const FormatSpec& spec, const DecodedValue& value) {
  spec.validate();
  if (!spec.is_float()) {
    if (value.cls != ValueClass::finite)
      fail(errc::validation, "cannot encode a non-finite value in an integer format");
    // round-to-nearest-even onto the integer grid
    std::int64_t iv;
    if (value.exponent >= 0) {
      if (value.exponent > 62 || (value.significand >> 1) > (std::uint64_t{1} << 62) >> value.exponent)
        fail(errc::validation, "value out of range for format '" + spec.name + "'");
      iv = static_cast<std::int64_t>(value.significand << value.exponent);
    } else {
      const int k = -value.exponent;
      if (k > 63) return integer_code(spec, 0);
      std::uint64_t q = value.significand >> k;
      const std::uint64_t rem = value.significand & mask_bits(k);
      const std::uint64_t half = std::uint64_t{1} << (k - 1);
      if (rem > half || (rem == half && (q & 1))) ++q;
      iv = static_cast<std::int64_t>(q);
    }
    if (value.sign < 0) iv = -iv;
    return integer_code(spec, iv);
  }
  switch (value.cls) {
    case ValueClass::nan: return canonical_nan_code(spec);
    case ValueClass::pos_inf: return overflow_code_public(spec, 1);
    case ValueClass::neg_inf: return overflow_code_public(spec, -1);
    case ValueClass::finite: break;
  }
  return detail::encode_exact(spec, detail::ExactReal::from_decoded(value));
}

// Small shim so encode_value can reach the anonymous-namespace helper.
std::uint64_t overflow_code_public(const FormatSpec& spec, int sign);

std::uint64_t encode_double(const FormatSpec& spec, double value) {
  if (std::isnan(value)) return encode_value(spec, DecodedValue::make_nan());
  if (std::isinf(value)) return encode_value(spec, DecodedValue::make_inf(value < 0 ? -1 : 1));
  if (value == 0.0) {
    DecodedValue zero;
    zero.sign = std::signbit(value) ? -1 : 1;
    return encode_value(spec, zero);
  }
  int exp2 = 0;
  const double frac = std::frexp(std::abs(value), &exp2);            // frac in [0.5, 1)
  const auto sig = static_cast<std::uint64_t>(std::ldexp(frac, 53));  // exact for doubles
  return encode_value(spec, DecodedValue::make_finite(std::signbit(value) ? -1 : 1, sig,
                                                      exp2 - 53));
}

std::int64_t integer_value(const FormatSpec& spec, std::uint64_t code) {
  if (spec.is_float()) fail(errc::validation, "integer_value on a float format");
  if (spec.width < 64 && code > mask_bits(spec.width))
    fail(errc::validation, "code does not fit the format width");
  if (spec.kind == FormatKind::unsigned_int) return static_cast<std::int64_t>(code);
  const std::uint64_t sign_bit = std::uint64_t{1} << (spec.width - 1);
  if (code & sign_bit)
    return static_cast<std::int64_t>(code) - static_cast<std::int64_t>(
        spec.width == 64 ? 0 : (std::uint64_t{1} << spec.width));
  return static_cast<std::int64_t>(code);
}

std::uint64_t integer_code(const FormatSpec& spec, std::int64_t value) {
  if (spec.is_float()) fail(errc::validation, "integer_code on a float format");
  if (spec.kind == FormatKind::unsigned_int) {
    if (value < 0 || static_cast<std::uint64_t>(value) > mask_bits(spec.width))
      fail(errc::validation, "value out of range for format '" + spec.name + "'");
    return static_cast<std::uint64_t>(value);
  }
  const std::int64_t lo = -(std::int64_t{1} << (spec.width - 1));
  const std::int64_t hi = (std::int64_t{1} << (spec.width - 1)) - 1;
  if (value < lo || value > hi)
    fail(errc::validation, "value out of range for format '" + spec.name + "'");
  return static_cast<std::uint64_t>(value) & mask_bits(spec.width);
}

namespace {

FormatSpec make_int(std::string name, int width, bool is_signed) {
  FormatSpec f;
  f.name = std::move(name);
  f.width = width;
  f.kind = is_signed ? FormatKind::signed_int_twos_complement : FormatKind::unsigned_int;
  return f;
}

FormatSpec make_float(std::string name, int exponent_bits, int mantissa_bits,
                      NanPolicy nan, InfPolicy inf, bool signed_zero = true) {
  FormatSpec f;
  f.name = std::move(name);
  f.kind = FormatKind::floating_point;
  f.exponent_bits = exponent_bits;
  f.mantissa_bits = mantissa_bits;
  f.width = 1 + exponent_bits + mantissa_bits;
  f.nan_policy = nan;
  f.inf_policy = inf;
  f.signed_zero = signed_zero;
  return f;
}

}  // namespace

const std::vector<FormatSpec>& builtin_formats() {
  static const std::vector<FormatSpec> corpus = [] {
    std::vector<FormatSpec> v;
    v.push_back(make_int("int8", 8, true));
    v.push_back(make_int("int16", 16, true));
    v.push_back(make_float("fp64", 11, 52, NanPolicy::ieee_all_payloads, InfPolicy::ieee_pair));
    v.push_back(make_float("fp32", 8, 23, NanPolicy::ieee_all_payloads, InfPolicy::ieee_pair));
    v.push_back(make_float("fp16", 5, 10, NanPolicy::ieee_all_payloads, InfPolicy::ieee_pair));
    v.push_back(make_float("fp8_e5m2", 5, 2, NanPolicy::ieee_all_payloads, InfPolicy::ieee_pair));
    v.push_back(make_float("fp8_e4m3_ocp", 4, 3, NanPolicy::two_nan_patterns, InfPolicy::none));
    v.push_back(make_float("fp8_e4m3_ieee_hypothetical", 4, 3, NanPolicy::ieee_all_payloads,
                           InfPolicy::ieee_pair));
    v.push_back(make_float("e2m3_ieee", 2, 3, NanPolicy::ieee_all_payloads, InfPolicy::ieee_pair));
    v.push_back(make_float("e2m3_single_nan", 2, 3, NanPolicy::single_nan_pattern,
                           InfPolicy::none, /*signed_zero=*/false));
    for (const auto& f : v) f.validate();
    return v;
  }();
  return corpus;
}

namespace {

using nlohmann::json;

FormatKind parse_kind(const std::string& s) {
  if (s == "unsigned_int") return FormatKind::unsigned_int;
  if (s == "signed_int_twos_complement") return FormatKind::signed_int_twos_complement;
  if (s == "float") return FormatKind::floating_point;
  fail(errc::validation, "unknown format kind '" + s + "'");
}

NanPolicy parse_nan_policy(const std::string& s) {
  if (s == "ieee_all_payloads") return NanPolicy::ieee_all_payloads;
  if (s == "single_nan_pattern") return NanPolicy::single_nan_pattern;
  if (s == "two_nan_patterns") return NanPolicy::two_nan_patterns;
  if (s == "none") return NanPolicy::none;
  fail(errc::validation, "unknown nan_policy '" + s + "'");
}

InfPolicy parse_inf_policy(const std::string& s) {
  if (s == "ieee_pair") return InfPolicy::ieee_pair;
  if (s == "none") return InfPolicy::none;
  fail(errc::validation, "unknown inf_policy '" + s + "'");
}

FormatSpec parse_format_json(const json& j) {
  if (!j.is_object()) fail(errc::validation, "format definition must be a JSON object");
  static const char* known[] = {"name",          "width",         "kind",
                                "exponent_bits", "mantissa_bits", "exponent_bias",
                                "nan_policy",    "inf_policy",    "has_subnormals",
                                "signed_zero"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) fail(errc::validation, "unknown format key '" + it.key() + "'");
  }
  FormatSpec f;
  f.name = j.at("name").get<std::string>();
  f.width = j.at("width").get<int>();
  f.kind = parse_kind(j.at("kind").get<std::string>());
  if (j.contains("exponent_bits")) f.exponent_bits = j["exponent_bits"].get<int>();
  if (j.contains("mantissa_bits")) f.mantissa_bits = j["mantissa_bits"].get<int>();
  if (j.contains("exponent_bias")) f.exponent_bias = j["exponent_bias"].get<int>();
  if (j.contains("nan_policy")) f.nan_policy = parse_nan_policy(j["nan_policy"].get<std::string>());
  if (j.contains("inf_policy")) f.inf_policy = parse_inf_policy(j["inf_policy"].get<std::string>());
  if (j.contains("has_subnormals")) f.has_subnormals = j["has_subnormals"].get<bool>();
  if (j.contains("signed_zero")) f.signed_zero = j["signed_zero"].get<bool>();
  f.validate();
  return f;
}

}  // namespace

FormatRegistry::FormatRegistry() : formats_(builtin_formats()) {}

void FormatRegistry::add(FormatSpec spec, bool allow_override) {
  spec.validate();
  for (auto& existing : formats_) {
    if (existing.name == spec.name) {
      if (allow_override) existing = std::move(spec);
      return;  // built-ins (and earlier entries) win without --allow-override
    }
  }
  formats_.push_back(std::move(spec));
}

void FormatRegistry::load_file(const std::string& path, bool allow_override) {
  std::ifstream in(path);
  if (!in) fail(errc::io, "cannot open format file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    fail(errc::validation, "format file '" + path + "': " + e.what());
  }
  if (doc.is_array()) {
    for (const auto& item : doc) add(parse_format_json(item), allow_override);
  } else {
    add(parse_format_json(doc), allow_override);
  }
}

const FormatSpec& FormatRegistry::resolve(std::string_view name) const {
  for (const auto& f : formats_)
    if (f.name == name) return f;
  fail(errc::unknown_format, "unknown format '" + std::string(name) + "'");
}

bool FormatRegistry::contains(std::string_view name) const {
  for (const auto& f : formats_)
    if (f.name == name) return true;
  return false;
}

}  // namespace bitmeter
