#pragma once

#include "sesq/sesqui.hpp"

namespace sesq {

/// Exact element of Z[zeta_p]: p integer coordinates for sum c_i zeta^i,
/// kept in the canonical form with the last coordinate zero (reduced modulo
/// 1 + zeta + ... + zeta^{p-1}). Coordinates are 64-bit; the enumeration cap
/// keeps every sum computed here far below the overflow range.
class CycloInt {
 public:
  explicit CycloInt(uint32_t p) : p_(p), c_(p, 0) {
    if (p < 2) throw DomainError("cyclotomic order must be a prime");
  }
  static CycloInt integer(uint32_t p, long long v);
  static CycloInt root_power(uint32_t p, uint64_t k);  // zeta^k

  uint32_t prime() const { return p_; }
  const std::vector<long long>& counts() const { return c_; }

  CycloInt add(const CycloInt& o) const;
  CycloInt sub(const CycloInt& o) const;
  CycloInt mul(const CycloInt& o) const;
  CycloInt scaled(long long k) const;

  bool operator==(const CycloInt& o) const;
  bool operator!=(const CycloInt& o) const { return !(*this == o); }
  bool is_integer() const;
  long long int_value() const;  // requires is_integer()
  std::string to_string() const;

 private:
  void canonicalize();
  uint32_t p_;
  std::vector<long long> c_;
};

/// Canonical additive character of F_q: psi(w) = zeta_p^{Tr_{F_q/F_p}(w)}.
CycloInt psi(const Field& f, const Elem& w);
/// Canonical additive character of F_{q^2}.
CycloInt chi(const Field& f, const Elem& t);

/// The induced quadratic form over F_q: sigma(u,u)^q + sigma(u,u).
Elem rho(const SesquiForm& form, const Elem& u);

/// S(L) = sum over the field of psi(rho_L(u)), by the closed formula
/// (-1)^r q^{2n-r} with r = n - dim ker(L* + L).
long long s_formula(const LinPoly& l);

/// S(L) by full enumeration, as an exact cyclotomic sum. Also evaluates the
/// chi(sigma(u,u)) expression and verifies the two sums agree and land in Z.
long long s_bruteforce(const SesquiForm& form, unsigned workers = 1);

}  // namespace sesq
