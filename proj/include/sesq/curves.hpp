#pragma once

#include "sesq/counting.hpp"

namespace sesq {

/// The Artin-Schreier curve y^{q^2} - y = x L(x^q) for L of exact degree
/// q^{2m}.
struct ASCurve {
  LinPoly l;
  int m = 0;
};

/// Validates the exact-degree requirement (rejects the zero polynomial).
ASCurve make_curve(LinPoly l);

/// Genus (q^2 - 1) q^{2m+1} / 2, an exact integer for every prime power q.
long long genus(uint64_t q, int m);

struct HWWindow {
  long long lo = 0, hi = 0;  // lo may be negative for tiny parameters
};

HWWindow hw_window(uint64_t q, unsigned n, int m);

/// N = 1 + q^2 N_0, asserted inside the Hasse-Weil window.
long long point_count(const ASCurve& c, bool brute = false, unsigned workers = 1);

enum class Extremality { kMaximal, kMinimal, kNeither };

/// Extremal iff R(upsilon) = n - 2m - 1 for every upsilon in U; then the
/// direction is decided by the parity of n - 1.
Extremality classify_extremal(const ASCurve& c);

struct CurveReport {
  uint64_t q = 0;
  unsigned n = 0;
  int m = 0;
  std::string poly_text;
  long long curve_genus = 0;
  long long points = 0;
  HWWindow window;
  Extremality status = Extremality::kNeither;
  bool verified_brute = false;
};

CurveReport curve_report(const ASCurve& c, bool brute = false, unsigned workers = 1);

/// The full N_c table of the monomial L = a x^{q^{2m}} from its closed
/// branch formulas, cross-checked against the generic counting formula.
/// The report's bound section carries the extremality criterion.
CountReport monomial_counts(const Field& f, const Elem& a, int m);

/// Extremality criterion for monomials: (2m+1)(q+1) divides n and alpha = 1.
bool monomial_extremal(const Field& f, const Elem& a, int m);

struct BinomialDerived {
  unsigned n = 0;  // k * lcm(m-l, (m+l+1)(q+1))
  int d = 0;       // gcd(m-l, m+l+1)
  uint64_t s = 0;
};

/// Parameter arithmetic only; no field required.
BinomialDerived binomial_derive(uint64_t q, int m, int l, unsigned k);

struct BinomialResult {
  LinPoly poly;
  long long predicted_deviation = 0;  // N_0 - q^{2(n-1)}
  BinomialDerived derived;
  Extremality status = Extremality::kNeither;
};

/// Builds L = gamma^{q^{2m+1}+1} delta x^{q^{2m}} - gamma^{q^{2l+1}+1} delta
/// x^{q^{2l}} after verifying every hypothesis, and re-derives the extremal
/// profile rather than trusting it. The field must have the derived n.
BinomialResult binomial_construct(const Field& f, const Elem& gamma,
                                  const Elem& delta, int m, int l, unsigned k);

}  // namespace sesq
