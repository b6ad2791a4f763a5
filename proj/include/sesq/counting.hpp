#pragma once

#include <optional>

#include "sesq/charsum.hpp"

namespace sesq {

/// The subgroup U of order q+1 in F_{q^2}^*, in deterministic order.
std::vector<Elem> enumerate_u(const Field& f);

/// R(upsilon) = n - dim ker(upsilon L* + L) for every upsilon in U.
struct RProfile {
  std::vector<std::pair<Elem, int>> values;  // in enumerate_u order
  std::optional<int> m_hint;

  int at(const Elem& upsilon) const;
  bool constant_at(int r) const;
};

RProfile r_profile(const LinPoly& l, std::optional<int> m_hint = std::nullopt);

/// Number of zeros of sigma_L(x,x) + c, by the exact character-sum formulas.
long long nc_formula(const LinPoly& l, const Elem& c);
long long nc_formula(const RProfile& profile, const LinPoly& l, const Elem& c);

/// Number of zeros by direct enumeration (one full-field sweep per call).
long long nc_bruteforce(const LinPoly& l, const Elem& c, unsigned workers = 1);

/// The three-branch closed form for lambda-Hermitian forms.
long long nc_hermitian(const LinPoly& l, const Elem& c);

struct BoundReport {
  int m = 0;
  long long rhs = 0;   // (q^2-1) q^{n+2m-1}
  bool criterion = false;  // R(upsilon) = n-2m-1 for every upsilon in U
  bool equality_at_zero = false;
  std::vector<std::pair<Elem, long long>> deviations;  // (c, N_c - q^{2(n-1)})
};

/// Checks |N_c - q^{2(n-1)}| <= rhs for every c, that equality happens exactly
/// at c = 0 under the kernel-dimension criterion, and that the sign at
/// equality is (-1)^{n-1}. Throws Error if any of that fails.
BoundReport bound_check(const LinPoly& l, int m);

enum class CountMode { kFormula, kBrute, kBoth };

struct CountRow {
  Elem c;
  std::optional<long long> formula;
  std::optional<long long> brute;
};

struct CountReport {
  uint64_t q = 0;
  unsigned n = 0;
  std::string poly_text;
  std::vector<CountRow> table;  // c in subfield enumeration order
  std::optional<BoundReport> bound;

  bool rows_match() const;  // no row with both values disagreeing
  long long total(bool brute) const;
};

CountReport count_report(const LinPoly& l, CountMode mode, unsigned workers = 1);

}  // namespace sesq
