#include "sesq/curves.hpp"

#include <numeric>

#include "rat.hpp"

namespace sesq {

using internal::ipow;
using internal::q_pow;
using internal::Rat;

ASCurve make_curve(LinPoly l) {
  int m = l.top_index();
  if (m < 0) throw DomainError("the zero polynomial defines no curve degree");
  return ASCurve{std::move(l), m};
}

long long genus(uint64_t q, int m) {
  __int128 g = __int128(q) * q - 1;
  g *= ipow(__int128(q), unsigned(2 * m + 1));
  g /= 2;  // (q^2-1) q^{2m+1} is always even
  if (g > INT64_MAX) throw DomainError("genus overflows");
  return (long long)g;
}

HWWindow hw_window(uint64_t q, unsigned n, int m) {
  __int128 center = ipow(__int128(q), 2 * n) + 1;
  __int128 radius = (__int128(q) * q - 1) * ipow(__int128(q), unsigned(int(n) + 2 * m + 1));
  if (center + radius > INT64_MAX) throw DomainError("window overflows");
  return HWWindow{(long long)(center - radius), (long long)(center + radius)};
}

long long point_count(const ASCurve& c, bool brute, unsigned workers) {
  const Field& f = c.l.field();
  long long n0 = brute ? nc_bruteforce(c.l, f.zero(), workers)
                       : nc_formula(c.l, f.zero());
  __int128 n = 1 + __int128(f.q()) * f.q() * n0;
  HWWindow w = hw_window(f.q(), f.n(), c.m);
  if (n < w.lo || n > w.hi)
    throw Error("point count escapes the Hasse-Weil window");  // falsification
  return (long long)n;
}

Extremality classify_extremal(const ASCurve& c) {
  const Field& f = c.l.field();
  RProfile profile = r_profile(c.l, c.m);
  if (!profile.constant_at(int(f.n()) - 2 * c.m - 1)) return Extremality::kNeither;
  return (f.n() % 2 == 1) ? Extremality::kMaximal : Extremality::kMinimal;
}

CurveReport curve_report(const ASCurve& c, bool brute, unsigned workers) {
  const Field& f = c.l.field();
  CurveReport out;
  out.q = f.q();
  out.n = f.n();
  out.m = c.m;
  out.poly_text = c.l.to_string();
  out.curve_genus = genus(f.q(), c.m);
  out.points = point_count(c, brute, workers);
  out.window = hw_window(f.q(), f.n(), c.m);
  out.status = classify_extremal(c);
  out.verified_brute = brute;
  if (brute) {
    // the profile decision must match the brute count against the window
    bool at_edge = out.points == out.window.lo || out.points == out.window.hi;
    bool extremal = out.status != Extremality::kNeither;
    if (at_edge != extremal)
      throw Error("profile extremality disagrees with the enumerated count");
  }
  return out;
}

// --- monomial proposition ---

namespace {

struct MonomialData {
  int d = 0;
  Elem alpha;
  long long big_q = 0;  // q + 1 - gcd(n/d, q+1) (q^d + 1)
  uint64_t gcd_nd_q1 = 0;
  bool branch_one = false;  // alpha^{(q+1)/gcd(n/d,q+1)} = 1
};

MonomialData monomial_data(const Field& f, const Elem& a, int m) {
  f.check(a);
  if (a.is_zero()) throw DomainError("monomial coefficient must be nonzero");
  if (m < 0 || m >= int(f.n())) throw DomainError("need 0 <= m < n");
  const uint64_t q = f.q();
  const unsigned n = f.n();
  MonomialData out;
  out.d = int(std::gcd(uint64_t(2 * m + 1), uint64_t(n)));
  uint64_t q2d = 1;
  for (int i = 0; i < 2 * out.d; ++i) q2d *= q;
  uint64_t exp = (f.size() - 1) / (q2d - 1);
  // alpha = (-a^{q^{2m+1}-1})^{(q^{2n}-1)/(q^{2d}-1)}
  Elem base = f.neg(f.div(f.frobenius(a, long((2 * m + 1) * f.e())), a));
  out.alpha = f.pow(base, exp);
  out.gcd_nd_q1 = std::gcd(uint64_t(n) / uint64_t(out.d), q + 1);
  uint64_t qd = 1;
  for (int i = 0; i < out.d; ++i) qd *= q;
  out.big_q = (long long)(q + 1) - (long long)(out.gcd_nd_q1 * (qd + 1));
  out.branch_one = f.pow(out.alpha, (q + 1) / out.gcd_nd_q1) == f.one();
  return out;
}

}  // namespace

bool monomial_extremal(const Field& f, const Elem& a, int m) {
  MonomialData data = monomial_data(f, a, m);
  bool divides = f.n() % (uint64_t(2 * m + 1) * (f.q() + 1)) == 0;
  return divides && data.alpha == f.one();
}

CountReport monomial_counts(const Field& f, const Elem& a, int m) {
  MonomialData data = monomial_data(f, a, m);
  const uint64_t q = f.q();
  const unsigned n = f.n();
  LinPoly l = LinPoly::monomial(f, a, m);
  RProfile profile = r_profile(l, m);

  CountReport out;
  out.q = q;
  out.n = n;
  out.poly_text = l.to_string();
  Rat base = q_pow(q, 2 * (int(n) - 1));
  for (const Elem& c : f.subfield_elements(2 * f.e())) {
    Rat dev;
    int sign_n = (n % 2 == 0) ? 1 : -1;  // (-1)^n
    if (data.branch_one) {
      Rat qn2 = q_pow(q, int(n) - 2);
      Rat q_term = Rat::of(data.big_q).mul(qn2);
      if (c.is_zero()) {
        dev = Rat::of(sign_n * (__int128(q) - 1)).mul(q_term);
      } else {
        bool middle =
            f.pow(f.neg(f.pow(c, q - 1)), n / unsigned(data.d)) == data.alpha;
        if (middle)
          dev = q_pow(q, int(n) + data.d - 1)
                    .add(q_term)
                    .mul(Rat::of(-sign_n));
        else
          dev = q_pow(q, int(n) - 1)
                    .mul(Rat::of(sign_n))
                    .add(q_term.mul(Rat::of(-sign_n)));
      }
    } else {
      Rat qn2 = q_pow(q, int(n) - 2);
      if (c.is_zero())
        dev = Rat::of(sign_n * (__int128(q) * q - 1)).mul(qn2);
      else
        dev = Rat::of(-sign_n).mul(qn2);
    }
    long long value = base.add(dev).to_int("monomial N_c");
    long long generic = nc_formula(profile, l, c);
    if (value != generic)
      throw Error("monomial table disagrees with the counting formula");
    out.table.push_back(CountRow{c, value, std::nullopt});
  }
  out.bound = bound_check(l, m);
  // the closing criterion matches the attained bound
  bool criterion = monomial_extremal(f, a, m);
  if (criterion != out.bound->equality_at_zero)
    throw Error("monomial extremality criterion disagrees with the bound");
  return out;
}

// --- binomial proposition ---

BinomialDerived binomial_derive(uint64_t q, int m, int l, unsigned k) {
  if (l < 0 || l >= m) throw DomainError("need integers 0 <= l < m");
  if (k == 0) throw DomainError("k must be positive");
  BinomialDerived out;
  uint64_t ml = uint64_t(m - l);
  uint64_t ml1 = uint64_t(m + l + 1);
  out.d = int(std::gcd(ml, ml1));
  out.n = unsigned(k * std::lcm(ml, ml1 * (q + 1)));
  uint64_t q2ml = 1;
  for (uint64_t i = 0; i < 2 * ml; ++i) q2ml *= q;
  uint64_t qd = 1;
  for (int i = 0; i < out.d; ++i) qd *= q;
  out.s = (q2ml - 1) / (qd + 1) * ((q + 1) / std::gcd(ml / uint64_t(out.d), q + 1));
  return out;
}

BinomialResult binomial_construct(const Field& f, const Elem& gamma,
                                  const Elem& delta, int m, int l, unsigned k) {
  BinomialDerived derived = binomial_derive(f.q(), m, l, k);
  if (f.n() != derived.n)
    throw DomainError("ambient field must be built with n = " +
                      std::to_string(derived.n));
  f.check(gamma);
  f.check(delta);
  if (gamma.is_zero()) throw HypothesisError("gamma = 0");
  unsigned sub = 2 * unsigned(m - l) * f.e();  // F_{q^{2(m-l)}}
  if (delta.is_zero() || !f.in_subfield(delta, sub))
    throw HypothesisError("delta is not in F_{q^{2(m-l)}}^*");
  if (f.pow(delta, derived.s * k) != f.one())
    throw HypothesisError("delta^{sk} != 1");
  bool delta_s_one = f.pow(delta, derived.s) == f.one();
  if (delta_s_one && std::gcd(uint64_t(k), f.q()) == 1)
    throw HypothesisError("delta^s = 1 and gcd(k, q) = 1");

  auto coef = [&](int j) {  // gamma^{q^{2j+1}+1} delta
    return f.mul(f.mul(f.frobenius(gamma, long((2 * j + 1) * f.e())), gamma), delta);
  };
  LinPoly poly =
      LinPoly::monomial(f, coef(m), m).sub(LinPoly::monomial(f, coef(l), l));

  // proof obligation: R(upsilon) = n - 2m - 1 for every upsilon
  RProfile profile = r_profile(poly, m);
  if (!profile.constant_at(int(f.n()) - 2 * m - 1))
    throw Error("binomial construction fails the extremal profile");  // falsification
  __int128 dev = (__int128(f.q()) * f.q() - 1) *
                 ipow(__int128(f.q()), unsigned(int(f.n()) + 2 * m - 1));
  if (f.n() % 2 == 0) dev = -dev;
  Extremality status =
      (f.n() % 2 == 1) ? Extremality::kMaximal : Extremality::kMinimal;
  return BinomialResult{std::move(poly), (long long)dev, derived, status};
}

}  // namespace sesq
