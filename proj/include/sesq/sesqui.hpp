#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sesq/linpoly.hpp"

namespace sesq {

/// The sesquilinear form sigma_L(u,v) = Tr(u L(v^q)) on F_{q^{2n}}/F_{q^2}.
class SesquiForm {
 public:
  explicit SesquiForm(LinPoly l) : l_(std::move(l)) {}

  const Field& field() const { return l_.field(); }
  const LinPoly& poly() const { return l_; }
  bool is_zero() const { return l_.is_zero(); }

  /// Tr(u L(v^q)); linear in u, q-semilinear in v, valued in F_{q^2}.
  Elem eval(const Elem& u, const Elem& v) const;
  /// The adjoint form sigma* = sigma_{L*}.
  SesquiForm adjoint_form() const { return SesquiForm(l_.adjoint()); }

  bool operator==(const SesquiForm& o) const { return l_ == o.l_; }

 private:
  LinPoly l_;
};

/// Recovers the unique L with sigma_L equal to the given pairing. The pairing
/// is spot-checked for (semi)bilinearity on a deterministic sample.
SesquiForm from_pairing(const Field& f,
                        const std::function<Elem(const Elem&, const Elem&)>& pairing);

/// A basis together with its Moore matrix B: B[i][j] = beta_i^{q^{2j}}.
struct BasisFrame {
  CoordFrame coords;
  FMatrix moore;  // ambient-tagged

  static BasisFrame make(const Field& f, std::vector<Elem> basis);
  static BasisFrame standard(const Field& f);
};

/// The circulant-with-Frobenius matrix M_L over the ambient field:
/// entry (i,j) = a_{(j-i) mod n}^{q^{2i}}.
FMatrix build_ml(const LinPoly& l);
/// The cyclic permutation matrix P with P[0][n-1] = 1, P[i][i-1] = 1.
FMatrix perm_p(const Field& f);

/// Coefficient matrix of the form: entry (i,j) = sigma(beta_i, beta_j),
/// over F_{q^2}; equals B M_L B*.
FMatrix coeff_matrix(const SesquiForm& form, const BasisFrame& frame);

/// An F_{q^2}-subspace of the ambient field, held by a reduced basis.
struct Subspace {
  std::vector<Elem> basis;
  int dim() const { return int(basis.size()); }
};

struct Radicals {
  Subspace left;   // rad sigma: trace-orthogonal complement of im L
  Subspace right;  // rad sigma*: preimage of ker L under the q-power map
};

Radicals radicals(const SesquiForm& form);

bool subspace_contains(const Field& f, const Subspace& s, const Elem& u);
bool subspace_equal(const Field& f, const Subspace& a, const Subspace& b);
Subspace subspace_meet(const Field& f, const Subspace& a, const Subspace& b);

struct HermitianInfo {
  bool zero_form = false;       // the zero form: lambda-Hermitian for every lambda
  std::optional<Elem> lambda;   // present iff nonzero and L* = lambda L
  bool is_hermitian() const { return zero_form || lambda.has_value(); }
};

HermitianInfo hermitian_lambda(const SesquiForm& form);

/// Classification descriptor: the meet dimension plus either the invariant
/// factors of C* C^{-1} of the reduced part (nonsingular case) or a canonical
/// matrix tag (singular reduced case).
struct FormClass {
  unsigned n = 0;
  int rad_meet_dim = 0;
  enum class Kind { kNonsingular, kSingularReduced } kind = Kind::kNonsingular;
  InvariantFactors invariants;
  std::optional<FMatrix> canonical;

  bool operator==(const FormClass& o) const;
  bool operator!=(const FormClass& o) const { return !(*this == o); }
};

FormClass classify(const SesquiForm& form, const OracleCap& cap = {});
bool equivalent(const SesquiForm& f0, const SesquiForm& f1, const OracleCap& cap = {});

/// Canonical descriptors of the complete 2-dimensional classification.
struct Dim2Class {
  enum class Kind { kSemisimple, kScalar, kJordan, kRank1, kNilpotentPair } kind;
  std::vector<Elem> params;
  FMatrix canonical;

  bool operator==(const Dim2Class& o) const;
  bool operator!=(const Dim2Class& o) const { return !(*this == o); }
};

Dim2Class classify_dim2(const SesquiForm& form);

struct Diagonalization {
  std::vector<Elem> entries;      // d_1..d_r, nonzero
  std::vector<Elem> frame_basis;  // certified: coeff matrix is diag(entries,0,..)
};

/// Diagonal coefficient matrix, when one exists (iff rad sigma = rad sigma*
/// and the reduced C* C^{-1} is diagonalizable with eigenvalues in U).
std::optional<Diagonalization> diagonalize(const SesquiForm& form);

/// Histogram of sigma(u,u) over the whole field, indexed by the F_{q^2}
/// subfield index of the value. Cap-guarded; workers partition the range.
std::vector<long long> diagonal_histogram(const SesquiForm& form, unsigned workers = 1);

}  // namespace sesq
