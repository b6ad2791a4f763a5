#pragma once

#include <string>
#include <vector>

#include "sesq/fmatrix.hpp"

namespace sesq {

/// q^2-linearized polynomial sum a_i x^{q^{2i}}, reduced mod x^{q^{2n}} - x:
/// exactly n coefficients, and equal maps have equal coefficient vectors.
class LinPoly {
 public:
  explicit LinPoly(const Field& f);  // the zero polynomial
  LinPoly(const Field& f, std::vector<Elem> coeffs);
  static LinPoly identity(const Field& f);                        // L = x
  static LinPoly monomial(const Field& f, const Elem& a, int i);  // a x^{q^{2i}}

  const Field& field() const { return *f_; }
  const std::vector<Elem>& coeffs() const { return a_; }
  const Elem& coeff(int i) const { return a_[size_t(i)]; }
  bool is_zero() const;
  /// Largest i with a_i != 0; -1 for the zero polynomial.
  int top_index() const;

  Elem eval(const Elem& v) const;
  /// The adjoint polynomial: the unique representative with
  /// Tr(u L*(v^q)) = Tr(v L(u^q))^q for all u, v.
  LinPoly adjoint() const;
  LinPoly compose(const LinPoly& o) const;  // this after o
  LinPoly add(const LinPoly& o) const;
  LinPoly sub(const LinPoly& o) const;
  LinPoly scaled(const Elem& s) const;

  bool operator==(const LinPoly& o) const;
  bool operator!=(const LinPoly& o) const { return !(*this == o); }

  std::string to_string() const;
  static LinPoly parse(const Field& f, const std::string& s);

 private:
  const Field* f_;
  std::vector<Elem> a_;
};

struct KernelInfo {
  int dim = 0;
  std::vector<Elem> basis;
};

/// Matrix of the induced F_{q^2}-endomorphism: column j holds the
/// coordinates of L(basis_j).
FMatrix to_matrix(const LinPoly& l, const CoordFrame& frame);

/// Kernel of L as a subspace of F_{q^{2n}}/F_{q^2}, by row reduction in the
/// default frame.
KernelInfo kernel(const LinPoly& l);
int kernel_dim(const LinPoly& l);

}  // namespace sesq
