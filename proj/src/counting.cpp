#include "sesq/counting.hpp"

#include "rat.hpp"

namespace sesq {

using internal::ipow;
using internal::neg_q_inv_pow;
using internal::Rat;

namespace {

Rat profile_sum(const RProfile& profile, uint64_t q) {
  Rat t = Rat::of(0);
  for (const auto& [upsilon, r] : profile.values) t = t.add(neg_q_inv_pow(q, r));
  return t;
}

}  // namespace

std::vector<Elem> enumerate_u(const Field& f) { return unit_subgroup(f); }

int RProfile::at(const Elem& upsilon) const {
  for (const auto& [u, r] : values)
    if (u == upsilon) return r;
  throw DomainError("element is not in the unit subgroup U");
}

bool RProfile::constant_at(int r) const {
  for (const auto& [u, rv] : values)
    if (rv != r) return false;
  return true;
}

RProfile r_profile(const LinPoly& l, std::optional<int> m_hint) {
  const Field& f = l.field();
  LinPoly adj = l.adjoint();
  RProfile out;
  out.m_hint = m_hint;
  for (const Elem& upsilon : unit_subgroup(f)) {
    LinPoly shifted = adj.scaled(upsilon).add(l);
    int r = int(f.n()) - kernel(shifted).dim;
    if (m_hint && int(f.n()) - r > 2 * *m_hint + 1)
      throw Error("kernel dimension exceeds the degree bound 2m+1");
    out.values.emplace_back(upsilon, r);
  }
  return out;
}

namespace {

// upsilon = -c^{1-q}, computed as (-1) c^{q^2-q}; c must be nonzero.
Elem upsilon_of(const Field& f, const Elem& c) {
  return f.neg(f.pow(c, f.q() * (f.q() - 1)));
}

}  // namespace

long long nc_formula(const RProfile& profile, const LinPoly& l, const Elem& c) {
  const Field& f = l.field();
  f.check(c);
  if (!f.in_subfield(c, 2 * f.e()))
    throw DomainError("shift c must lie in F_{q^2}");
  const uint64_t q = f.q();
  const unsigned n = f.n();
  Rat base = Rat::of(ipow(__int128(q), 2 * (n - 1)));
  Rat t = profile_sum(profile, q);
  if (c.is_zero()) {
    Rat res = base.add(Rat::of(__int128(q - 1)).mul(base).mul(t));
    return res.to_int("N_0");
  }
  int r_at = profile.at(upsilon_of(f, c));
  Rat mid = Rat::of(ipow(__int128(q), 2 * n - 1)).mul(neg_q_inv_pow(q, r_at));
  Rat res = base.add(mid).add(base.mul(t).mul(Rat::of(-1)));
  return res.to_int("N_c");
}

long long nc_formula(const LinPoly& l, const Elem& c) {
  return nc_formula(r_profile(l), l, c);
}

long long nc_bruteforce(const LinPoly& l, const Elem& c, unsigned workers) {
  const Field& f = l.field();
  f.check(c);
  if (!f.in_subfield(c, 2 * f.e()))
    throw DomainError("shift c must lie in F_{q^2}");
  auto hist = diagonal_histogram(SesquiForm{l}, workers);
  return hist[f.subfield_index(f.neg(c), 2 * f.e())];
}

long long nc_hermitian(const LinPoly& l, const Elem& c) {
  const Field& f = l.field();
  f.check(c);
  if (!f.in_subfield(c, 2 * f.e()))
    throw DomainError("shift c must lie in F_{q^2}");
  HermitianInfo h = hermitian_lambda(SesquiForm{l});
  if (!h.is_hermitian()) throw DomainError("form is not lambda-Hermitian");
  const uint64_t q = f.q();
  const unsigned n = f.n();
  if (h.zero_form)  // every branch degenerates to q^{2n} at c=0, else 0
    return c.is_zero() ? (long long)ipow(__int128(q), 2 * n) : 0;
  int r = int(n) - kernel(l).dim;
  __int128 lead = ipow(__int128(q), 2 * n - 1);
  if (c.is_zero()) {
    __int128 tail = __int128(q - 1) * ipow(__int128(q), unsigned(2 * int(n) - r - 1));
    return (long long)(r % 2 ? lead - tail : lead + tail);
  }
  if (f.pow(c, q - 1) == *h.lambda) {
    __int128 tail = ipow(__int128(q), unsigned(2 * int(n) - r - 1));
    return (long long)(r % 2 ? lead + tail : lead - tail);
  }
  return 0;
}

BoundReport bound_check(const LinPoly& l, int m) {
  const Field& f = l.field();
  if (l.top_index() != m)
    throw DomainError("degree mismatch: L must have exact degree q^{2m}");
  const uint64_t q = f.q();
  const unsigned n = f.n();
  RProfile profile = r_profile(l, m);

  BoundReport out;
  out.m = m;
  __int128 rhs = __int128(q * q - 1) * ipow(__int128(q), unsigned(int(n) + 2 * m - 1));
  out.rhs = (long long)rhs;
  out.criterion = profile.constant_at(int(n) - 2 * m - 1);

  __int128 base = ipow(__int128(q), 2 * (n - 1));
  for (const Elem& c : f.subfield_elements(2 * f.e())) {
    long long nc = nc_formula(profile, l, c);
    __int128 dev = __int128(nc) - base;
    out.deviations.emplace_back(c, (long long)dev);
    __int128 mag = dev < 0 ? -dev : dev;
    if (mag > rhs) throw Error("deviation exceeds the bound");
    bool eq = mag == rhs;
    if (c.is_zero()) {
      out.equality_at_zero = eq;
      if (eq != out.criterion)
        throw Error("equality at c=0 disagrees with the profile criterion");
      if (eq) {
        bool positive = dev > 0;
        if (positive != (n % 2 == 1))
          throw Error("equality sign differs from (-1)^{n-1}");
      }
    } else if (eq) {
      throw Error("bound attained at nonzero c");
    }
  }
  return out;
}

bool CountReport::rows_match() const {
  for (const auto& row : table)
    if (row.formula && row.brute && *row.formula != *row.brute) return false;
  return true;
}

long long CountReport::total(bool brute) const {
  long long t = 0;
  for (const auto& row : table) {
    const auto& v = brute ? row.brute : row.formula;
    if (!v) throw DomainError("missing table values for the requested mode");
    t += *v;
  }
  return t;
}

CountReport count_report(const LinPoly& l, CountMode mode, unsigned workers) {
  const Field& f = l.field();
  CountReport out;
  out.q = f.q();
  out.n = f.n();
  out.poly_text = l.to_string();

  std::optional<RProfile> profile;
  if (mode != CountMode::kBrute) profile = r_profile(l);
  std::vector<long long> hist;
  if (mode != CountMode::kFormula) hist = diagonal_histogram(SesquiForm{l}, workers);

  for (const Elem& c : f.subfield_elements(2 * f.e())) {
    CountRow row{c, std::nullopt, std::nullopt};
    if (profile) row.formula = nc_formula(*profile, l, c);
    if (!hist.empty()) row.brute = hist[f.subfield_index(f.neg(c), 2 * f.e())];
    out.table.push_back(std::move(row));
  }
  if (!l.is_zero() && mode != CountMode::kBrute) out.bound = bound_check(l, l.top_index());
  return out;
}

}  // namespace sesq
