// SPDX-License-Identifier: Apache-2.0

#ifndef BITMETER_SRC_EXACT_REAL_HPP
#define BITMETER_SRC_EXACT_REAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

#include "bitmeter/formats.hpp"

namespace bitmeter::detail {

using BigInt = boost::multiprecision::cpp_int;

/// Exact dyadic rational sign * sig * 2^exp used as the intermediate for
/// float-channel arithmetic. All operations are exact; rounding happens
/// once, at re-encoding.
struct ExactReal {
  int sign = 1;       // +1 or -1; irrelevant when sig == 0
  BigInt sig = 0;     // non-negative
  std::int64_t exp = 0;

  bool is_zero() const { return sig == 0; }

  static ExactReal from_decoded(const DecodedValue& v) {
    ExactReal r;
    r.sign = v.sign < 0 ? -1 : 1;
    r.sig = v.significand;
    r.exp = v.exponent;
    return r;
  }
};

inline ExactReal exact_add(const ExactReal& a, const ExactReal& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  std::int64_t e = a.exp < b.exp ? a.exp : b.exp;
  BigInt na = a.sig << static_cast<unsigned>(a.exp - e);
  BigInt nb = b.sig << static_cast<unsigned>(b.exp - e);
  if (a.sign < 0) na = -na;
  if (b.sign < 0) nb = -nb;
  BigInt n = na + nb;
  ExactReal r;
  r.exp = e;
  if (n < 0) {
    r.sign = -1;
    r.sig = -n;
  } else {
    r.sign = 1;
    r.sig = n;
  }
  return r;
}

inline ExactReal exact_mul(const ExactReal& a, const ExactReal& b) {
  ExactReal r;
  r.sign = a.sign * b.sign;
  r.sig = a.sig * b.sig;
  r.exp = a.exp + b.exp;
  return r;
}

/// -1, 0, +1 comparison of exact values.
inline int exact_compare(const ExactReal& a, const ExactReal& b) {
  ExactReal neg_b = b;
  neg_b.sign = -neg_b.sign;
  ExactReal d = exact_add(a, neg_b);
  if (d.is_zero()) return 0;
  return d.sign;
}

/// Round-to-nearest-even encoding of an exact real into a float format.
/// Implements the semantics documented for encode_value in formats.hpp.
std::uint64_t encode_exact(const FormatSpec& spec, const ExactReal& value);

}  // namespace bitmeter::detail

#endif  // BITMETER_SRC_EXACT_REAL_HPP
