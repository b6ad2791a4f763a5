#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sesq/field.hpp"

namespace sesq {

/// Univariate polynomial over a tagged subfield of the ambient field.
/// Coefficients are stored low-degree-first with no trailing zeros.
class FPoly {
 public:
  FPoly(const Field& f, unsigned subdeg) : f_(&f), subdeg_(subdeg) {}
  FPoly(const Field& f, unsigned subdeg, std::vector<Elem> coeffs);

  const Field& field() const { return *f_; }
  unsigned subdeg() const { return subdeg_; }
  int degree() const { return int(c_.size()) - 1; }  // -1 for the zero polynomial
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const;
  Elem coeff(int i) const;  // zero beyond the degree
  const std::vector<Elem>& coeffs() const { return c_; }

  FPoly add(const FPoly& o) const;
  FPoly sub(const FPoly& o) const;
  FPoly mul(const FPoly& o) const;
  FPoly scaled(const Elem& s) const;
  /// Quotient and remainder; divisor must be nonzero.
  std::pair<FPoly, FPoly> divmod(const FPoly& d) const;
  FPoly monic() const;
  Elem eval(const Elem& x) const;

  bool operator==(const FPoly& o) const;
  bool operator!=(const FPoly& o) const { return !(*this == o); }

  static FPoly x_minus(const Field& f, unsigned subdeg, const Elem& c);
  std::string to_string() const;  // comma-separated coefficient list

 private:
  void normalize();
  const Field* f_;
  unsigned subdeg_;
  std::vector<Elem> c_;
};

FPoly gcd(const FPoly& a, const FPoly& b);

/// Matrix over a subfield of the ambient field. The tag records which
/// subfield (by F_p-degree) all entries must lie in.
class FMatrix {
 public:
  FMatrix(const Field& f, unsigned subdeg, int rows, int cols);
  static FMatrix identity(const Field& f, unsigned subdeg, int n);
  static FMatrix from_entries(const Field& f, unsigned subdeg, int rows, int cols,
                              std::vector<Elem> entries);

  const Field& field() const { return *f_; }
  unsigned subdeg() const { return subdeg_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Elem& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }
  /// Checked entry write (context and subfield membership).
  void set(int i, int j, const Elem& v);

  FMatrix add(const FMatrix& o) const;
  FMatrix sub(const FMatrix& o) const;
  FMatrix mul(const FMatrix& o) const;
  FMatrix scaled(const Elem& s) const;
  FMatrix transpose() const;
  /// Conjugate transpose: transpose with every entry raised to the q-th power.
  FMatrix star() const;
  /// Same entries under a different subfield tag (membership rechecked).
  FMatrix retag(unsigned subdeg) const;

  Elem det() const;
  int rank() const;
  std::optional<FMatrix> inverse() const;
  /// Basis of the right kernel, as coordinate vectors.
  std::vector<std::vector<Elem>> kernel() const;
  /// One solution of M x = rhs, if any.
  std::optional<std::vector<Elem>> solve(const std::vector<Elem>& rhs) const;
  FPoly charpoly() const;

  bool operator==(const FMatrix& o) const;
  bool operator!=(const FMatrix& o) const { return !(*this == o); }
  /// Row-major entry-wise coordinate-lex comparison (for canonical picks).
  bool lex_before(const FMatrix& o) const;

  std::string to_string() const;
  static FMatrix parse(const Field& f, unsigned subdeg, const std::string& s);

 private:
  Elem& mut(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  void require_compatible(const FMatrix& o) const;

  const Field* f_;
  unsigned subdeg_;
  int rows_, cols_;
  std::vector<Elem> a_;
};

/// Invariant factors of xI - M: the nonconstant diagonal entries of its
/// Smith normal form, monic, each dividing the next.
struct InvariantFactors {
  std::vector<FPoly> factors;
  bool operator==(const InvariantFactors& o) const { return factors == o.factors; }
  bool operator!=(const InvariantFactors& o) const { return !(*this == o); }
};

InvariantFactors invariant_factors(const FMatrix& m);

/// Conjugacy in GL over the tagged subfield, decided by invariant factors.
bool conjugate(const FMatrix& m0, const FMatrix& m1);

struct OracleCap {
  int max_order = 3;
  uint64_t max_subfield = 9;
};

/// Exhaustive search for nonsingular T with C0 = T C1 T*. Brute force over
/// all matrices with entries in the tagged subfield; capped.
std::optional<FMatrix> congruence_witness(const FMatrix& c0, const FMatrix& c1,
                                          const OracleCap& cap = {});

/// Lexicographically smallest matrix congruent to C (same brute force, capped).
FMatrix canonical_congruence_rep(const FMatrix& c, const OracleCap& cap = {});

}  // namespace sesq
