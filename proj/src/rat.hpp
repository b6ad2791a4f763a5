#pragma once

#include <cstdint>

#include "sesq/errors.hpp"

namespace sesq::internal {

inline __int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Minimal exact rational on __int128; the counting formulas never leave the
// safe range under the enumeration cap.
struct Rat {
  __int128 num = 0, den = 1;

  static Rat of(__int128 v) { return Rat{v, 1}; }
  void normalize() {
    if (den < 0) { num = -num; den = -den; }
    __int128 g = gcd128(num, den);
    if (g > 1) { num /= g; den /= g; }
    if (num == 0) den = 1;
  }
  Rat add(const Rat& o) const {
    Rat r{num * o.den + o.num * den, den * o.den};
    r.normalize();
    return r;
  }
  Rat mul(const Rat& o) const {
    Rat r{num * o.num, den * o.den};
    r.normalize();
    return r;
  }
  long long to_int(const char* what) const {
    if (den != 1) throw Error(std::string(what) + ": non-integral result");
    if (num > __int128(INT64_MAX) || num < __int128(INT64_MIN))
      throw Error(std::string(what) + ": result overflows");
    return (long long)num;
  }
};

inline __int128 ipow(__int128 b, unsigned e) {
  __int128 r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

// (-q)^{-r} as a rational
inline Rat neg_q_inv_pow(uint64_t q, int r) {
  __int128 d = ipow(__int128(q), unsigned(r));
  if (r % 2) d = -d;
  Rat out{1, d};
  out.normalize();
  return out;
}

// q^e, possibly with a negative exponent
inline Rat q_pow(uint64_t q, int e) {
  if (e >= 0) return Rat::of(ipow(__int128(q), unsigned(e)));
  Rat r{1, ipow(__int128(q), unsigned(-e))};
  r.normalize();
  return r;
}

}  // namespace sesq::internal
