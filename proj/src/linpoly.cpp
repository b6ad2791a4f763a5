#include "sesq/linpoly.hpp"

#include <sstream>

namespace sesq {

LinPoly::LinPoly(const Field& f) : f_(&f), a_(f.n(), f.zero()) {}

LinPoly::LinPoly(const Field& f, std::vector<Elem> coeffs)
    : f_(&f), a_(std::move(coeffs)) {
  if (a_.size() != f.n())
    throw DomainError("linearized polynomial needs exactly n coefficients");
  for (const Elem& x : a_) f.check(x);
}

LinPoly LinPoly::identity(const Field& f) {
  LinPoly l(f);
  l.a_[0] = f.one();
  return l;
}

LinPoly LinPoly::monomial(const Field& f, const Elem& a, int i) {
  if (i < 0 || i >= int(f.n())) throw DomainError("monomial exponent out of range");
  LinPoly l(f);
  f.check(a);
  l.a_[size_t(i)] = a;
  return l;
}

bool LinPoly::is_zero() const {
  for (const Elem& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

int LinPoly::top_index() const {
  for (int i = int(a_.size()) - 1; i >= 0; --i)
    if (!a_[size_t(i)].is_zero()) return i;
  return -1;
}

Elem LinPoly::eval(const Elem& v) const {
  f_->check(v);
  Elem acc = f_->zero();
  Elem t = v;  // v^{q^{2i}}
  for (size_t i = 0; i < a_.size(); ++i) {
    if (!a_[i].is_zero()) acc = f_->add(acc, f_->mul(a_[i], t));
    if (i + 1 < a_.size()) t = f_->frob_q2(t);
  }
  return acc;
}

LinPoly LinPoly::adjoint() const {
  // L*(x) = sum_i (a_i^q x)^{q^{2(n-1-i)}}: coefficient n-1-i is
  // a_i^{q^{2(n-1-i)+1}}
  const unsigned n = f_->n();
  LinPoly out(*f_);
  for (unsigned i = 0; i < n; ++i) {
    unsigned j = n - 1 - i;
    out.a_[j] = f_->frobenius(a_[i], long((2 * j + 1) * f_->e()));
  }
  return out;
}

LinPoly LinPoly::compose(const LinPoly& o) const {
  if (f_ != o.f_) throw ContextError("polynomials from different fields");
  const unsigned n = f_->n();
  LinPoly out(*f_);
  for (unsigned i = 0; i < n; ++i) {
    if (a_[i].is_zero()) continue;
    for (unsigned j = 0; j < n; ++j) {
      if (o.a_[j].is_zero()) continue;
      // (a x^{q^{2i}}) o (b x^{q^{2j}}) = a b^{q^{2i}} x^{q^{2(i+j mod n)}}
      unsigned k = (i + j) % n;
      out.a_[k] = f_->add(out.a_[k], f_->mul(a_[i], f_->frob_q2(o.a_[j], long(i))));
    }
  }
  return out;
}

LinPoly LinPoly::add(const LinPoly& o) const {
  if (f_ != o.f_) throw ContextError("polynomials from different fields");
  LinPoly out(*f_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = f_->add(a_[i], o.a_[i]);
  return out;
}

LinPoly LinPoly::sub(const LinPoly& o) const {
  if (f_ != o.f_) throw ContextError("polynomials from different fields");
  LinPoly out(*f_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = f_->sub(a_[i], o.a_[i]);
  return out;
}

LinPoly LinPoly::scaled(const Elem& s) const {
  f_->check(s);
  LinPoly out(*f_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = f_->mul(a_[i], s);
  return out;
}

bool LinPoly::operator==(const LinPoly& o) const {
  if (f_ != o.f_) throw ContextError("polynomials from different fields");
  for (size_t i = 0; i < a_.size(); ++i)
    if (a_[i] != o.a_[i]) return false;
  return true;
}

std::string LinPoly::to_string() const {
  std::string s;
  for (size_t i = 0; i < a_.size(); ++i) {
    if (i) s.push_back(',');
    s += f_->to_string(a_[i]);
  }
  return s;
}

LinPoly LinPoly::parse(const Field& f, const std::string& s) {
  std::vector<Elem> coeffs;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) coeffs.push_back(f.parse_elem(tok));
  if (coeffs.size() != f.n())
    throw ParseError("expected " + std::to_string(f.n()) + " coefficients");
  return LinPoly(f, std::move(coeffs));
}

FMatrix to_matrix(const LinPoly& l, const CoordFrame& frame) {
  const Field& f = l.field();
  const int n = int(f.n());
  FMatrix m(f, 2 * f.e(), n, n);
  for (int j = 0; j < n; ++j) {
    std::vector<Elem> col = frame.coords(l.eval(frame.basis()[size_t(j)]));
    for (int i = 0; i < n; ++i) m.set(i, j, col[size_t(i)]);
  }
  return m;
}

KernelInfo kernel(const LinPoly& l) {
  const Field& f = l.field();
  CoordFrame frame(f, default_basis(f));
  FMatrix m = to_matrix(l, frame);
  KernelInfo out;
  for (const auto& v : m.kernel()) {
    Elem u = frame.from_coords(v);
    if (!l.eval(u).is_zero())
      throw Error("kernel vector fails to evaluate to zero");  // indicates a bug
    out.basis.push_back(u);
  }
  out.dim = int(out.basis.size());
  return out;
}

int kernel_dim(const LinPoly& l) { return kernel(l).dim; }

}  // namespace sesq
