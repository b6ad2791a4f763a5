#include "sesq/charsum.hpp"

namespace sesq {

void CycloInt::canonicalize() {
  long long top = c_[p_ - 1];
  if (!top) return;
  for (auto& x : c_) x -= top;
}

CycloInt CycloInt::integer(uint32_t p, long long v) {
  CycloInt z(p);
  z.c_[0] = v;
  return z;
}

CycloInt CycloInt::root_power(uint32_t p, uint64_t k) {
  CycloInt z(p);
  z.c_[k % p] = 1;
  z.canonicalize();
  return z;
}

CycloInt CycloInt::add(const CycloInt& o) const {
  if (p_ != o.p_) throw DomainError("cyclotomic orders differ");
  CycloInt z(p_);
  for (uint32_t i = 0; i < p_; ++i) z.c_[i] = c_[i] + o.c_[i];
  z.canonicalize();
  return z;
}

CycloInt CycloInt::sub(const CycloInt& o) const {
  if (p_ != o.p_) throw DomainError("cyclotomic orders differ");
  CycloInt z(p_);
  for (uint32_t i = 0; i < p_; ++i) z.c_[i] = c_[i] - o.c_[i];
  z.canonicalize();
  return z;
}

CycloInt CycloInt::mul(const CycloInt& o) const {
  if (p_ != o.p_) throw DomainError("cyclotomic orders differ");
  CycloInt z(p_);
  for (uint32_t i = 0; i < p_; ++i) {
    if (!c_[i]) continue;
    for (uint32_t j = 0; j < p_; ++j)
      z.c_[(i + j) % p_] += c_[i] * o.c_[j];
  }
  z.canonicalize();
  return z;
}

CycloInt CycloInt::scaled(long long k) const {
  CycloInt z(p_);
  for (uint32_t i = 0; i < p_; ++i) z.c_[i] = c_[i] * k;
  z.canonicalize();
  return z;
}

bool CycloInt::operator==(const CycloInt& o) const {
  if (p_ != o.p_) throw DomainError("cyclotomic orders differ");
  return c_ == o.c_;
}

bool CycloInt::is_integer() const {
  for (uint32_t i = 1; i < p_; ++i)
    if (c_[i]) return false;
  return true;
}

long long CycloInt::int_value() const {
  if (!is_integer()) throw DomainError("cyclotomic value is not a rational integer");
  return c_[0];
}

std::string CycloInt::to_string() const {
  std::string s;
  for (uint32_t i = 0; i < p_; ++i) {
    if (i) s.push_back(',');
    s += std::to_string(c_[i]);
  }
  return s;
}

CycloInt psi(const Field& f, const Elem& w) {
  if (!f.in_subfield(w, f.e()))
    throw DomainError("psi argument must lie in F_q");
  return CycloInt::root_power(uint32_t(f.p()), f.abs_trace(w, f.e()));
}

CycloInt chi(const Field& f, const Elem& t) {
  if (!f.in_subfield(t, 2 * f.e()))
    throw DomainError("chi argument must lie in F_{q^2}");
  return CycloInt::root_power(uint32_t(f.p()), f.abs_trace(t, 2 * f.e()));
}

Elem rho(const SesquiForm& form, const Elem& u) {
  const Field& f = form.field();
  Elem s = form.eval(u, u);
  Elem r = f.add(f.frob_q(s), s);
  if (!f.in_subfield(r, f.e())) throw Error("rho value left F_q");  // cannot happen
  return r;
}

long long s_formula(const LinPoly& l) {
  const Field& f = l.field();
  int r = int(f.n()) - kernel(l.adjoint().add(l)).dim;
  unsigned exp = 2 * f.n() - unsigned(r);
  __int128 v = 1;
  for (unsigned i = 0; i < exp; ++i) {
    v *= f.q();
    if (v > (__int128(1) << 126) / 2) throw DomainError("character sum overflows");
  }
  long long out = (long long)v;
  return (r % 2) ? -out : out;
}

long long s_bruteforce(const SesquiForm& form, unsigned workers) {
  const Field& f = form.field();
  const uint32_t p = uint32_t(f.p());
  std::vector<long long> hist = diagonal_histogram(form, workers);
  CycloInt via_rho(p), via_chi(p);
  for (uint64_t idx = 0; idx < hist.size(); ++idx) {
    if (!hist[idx]) continue;
    Elem s = f.from_subfield_index(idx, 2 * f.e());
    Elem rho_val = f.add(f.frob_q(s), s);  // rho on this level set
    via_rho = via_rho.add(psi(f, rho_val).scaled(hist[idx]));
    via_chi = via_chi.add(chi(f, s).scaled(hist[idx]));
  }
  if (via_rho != via_chi)
    throw Error("psi(rho) and chi(sigma) brute-force sums disagree");
  return via_rho.int_value();  // throws unless the sum is a rational integer
}

}  // namespace sesq
