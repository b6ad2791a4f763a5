#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sesq/errors.hpp"

namespace sesq {

class Field;

/// Element of the ambient field F_{p^{2ne}} in polynomial-basis coordinates.
/// Coordinate i is the coefficient of x^i, reduced mod p.
struct Elem {
  const Field* field = nullptr;
  std::vector<uint32_t> c;

  bool is_zero() const;
  bool operator==(const Elem& o) const;
  bool operator!=(const Elem& o) const { return !(*this == o); }
};

/// Compares coordinate vectors lexicographically, coordinate 0 first.
bool lex_less(const Elem& a, const Elem& b);

/// Dense matrix over F_p. Plumbing for coordinate maps and F_p-linear algebra.
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(uint32_t p, int rows, int cols)
      : p_(p), rows_(rows), cols_(cols), a_(size_t(rows) * cols, 0) {}
  static FpMatrix identity(uint32_t p, int n);

  uint32_t& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  uint32_t at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  uint32_t p() const { return p_; }

  std::vector<uint32_t> apply(const std::vector<uint32_t>& x) const;
  // y (length rows) = M x (length cols); no allocation.
  void apply_raw(const uint32_t* x, uint32_t* y) const;
  FpMatrix mul(const FpMatrix& o) const;
  std::optional<FpMatrix> inverse() const;
  int rank() const;

 private:
  uint32_t p_ = 0;
  int rows_ = 0, cols_ = 0;
  std::vector<uint32_t> a_;
};

/// The ambient finite field F_{q^{2n}} with q = p^e, built as F_p[x]/(modulus),
/// together with the subfield tower, Frobenius, and trace/norm machinery.
/// Immutable after construction; elements hold a pointer back to their field.
class Field {
 public:
  static constexpr uint64_t kDefaultCap = uint64_t(1) << 26;

  /// Default enumeration cap: SESQ_CAP env var when set, else 2^26.
  static uint64_t default_cap();

  Field(uint64_t p, unsigned e, unsigned n,
        std::optional<std::vector<uint32_t>> modulus = std::nullopt,
        uint64_t cap = default_cap());
  /// Builds from the spec format "p^e^n" or "p^e^n:c0,c1,...,c_{2ne}".
  explicit Field(const std::string& spec, uint64_t cap = default_cap());

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  uint64_t p() const { return p_; }
  unsigned e() const { return e_; }
  unsigned n() const { return n_; }
  unsigned deg() const { return deg_; }  // 2ne, the F_p-degree
  uint64_t q() const { return q_; }
  uint64_t q2() const { return q2_; }
  uint64_t size() const { return size_; }
  uint64_t cap() const { return cap_; }
  const std::vector<uint32_t>& modulus() const { return modulus_; }
  std::string spec_string() const;

  // --- elements ---
  Elem zero() const;
  Elem one() const;
  Elem from_int(uint64_t k) const;  // k mod p, as a constant
  Elem from_coeffs(std::vector<uint32_t> c) const;
  const Elem& generator() const { return generator_; }
  uint64_t index_of(const Elem& u) const;  // sum c_i p^i
  Elem from_index(uint64_t idx) const;

  // --- arithmetic ---
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const;
  Elem pow(const Elem& a, uint64_t k) const;

  /// u^{p^k}; negative k applies the inverse automorphism.
  Elem frobenius(const Elem& u, long k) const;
  /// u^{q^k} and u^{q^{2k}} convenience modes.
  Elem frob_q(const Elem& u, long k = 1) const { return frobenius(u, k * long(e_)); }
  Elem frob_q2(const Elem& u, long k = 1) const { return frobenius(u, 2 * k * long(e_)); }

  // --- subfield tower (degrees are F_p-degrees dividing 2ne) ---
  bool in_subfield(const Elem& u, unsigned sdeg) const;
  Elem rel_trace(const Elem& u, unsigned from_deg, unsigned to_deg) const;
  Elem rel_norm(const Elem& u, unsigned from_deg, unsigned to_deg) const;
  /// Trace of the ambient field onto F_{q^2}.
  Elem trace_q2(const Elem& u) const { return rel_trace(u, deg_, 2 * e_); }
  /// Absolute trace to F_p, as a residue.
  uint32_t abs_trace(const Elem& u, unsigned from_deg) const;
  /// Fixed primitive element of the subfield of F_p-degree sdeg.
  Elem subfield_primitive(unsigned sdeg) const;
  /// All p^sdeg subfield elements: 0 followed by the powers of the primitive.
  std::vector<Elem> subfield_elements(unsigned sdeg) const;

  // --- F_p-linear algebra views ---
  /// Matrix (deg x deg) of an F_p-linear map given by its action on elements.
  FpMatrix linear_map(const std::function<Elem(const Elem&)>& fn) const;
  /// Composite map u -> coordinates of rel_trace(u, deg, sdeg) in the basis
  /// {zeta^j : j < sdeg} of the subfield; sdeg x deg.
  FpMatrix trace_coord_map(unsigned sdeg) const;
  /// Coordinates of a subfield element in the basis {zeta^j : j < sdeg}.
  std::vector<uint32_t> subfield_coords(const Elem& u, unsigned sdeg) const;
  Elem from_subfield_coords(const std::vector<uint32_t>& x, unsigned sdeg) const;
  /// Index of a subfield element: sum of subfield_coords digits times p^j.
  uint64_t subfield_index(const Elem& u, unsigned sdeg) const;
  Elem from_subfield_index(uint64_t idx, unsigned sdeg) const;

  // --- raw kernels (no allocation; for enumeration loops) ---
  /// out = a*b, all length deg; scratch length 2*deg, of uint64_t.
  void raw_mul(const uint32_t* a, const uint32_t* b, uint32_t* out,
               uint64_t* scratch) const;

  // --- text I/O ---
  /// Hex digit string, coordinate 0 first (requires p <= 16); for larger p a
  /// dot-separated decimal list is used.
  std::string to_string(const Elem& u) const;
  Elem parse_elem(const std::string& s) const;

  void check(const Elem& u) const;
  void require_cap(uint64_t count, const std::string& what) const;

 private:
  void init();
  Elem reduce_product(const std::vector<uint64_t>& prod) const;

  uint64_t p_ = 0;
  unsigned e_ = 0, n_ = 0, deg_ = 0;
  uint64_t q_ = 0, q2_ = 0, size_ = 0, cap_ = 0;
  std::vector<uint32_t> modulus_;       // monic, length deg+1
  std::vector<uint32_t> neg_mod_;       // (p - modulus_[j]) % p, j < deg
  std::vector<FpMatrix> frob_;          // frob_[k]: u -> u^{p^k}, k < deg
  std::vector<uint64_t> order_primes_;  // distinct prime factors of size-1
  Elem generator_;
  struct SubfieldInfo {
    unsigned sdeg;
    Elem primitive;            // zeta, order p^sdeg - 1 (or 1 when sdeg covers F_p)
    FpMatrix coord_extractor;  // sdeg x deg: ambient coords -> zeta-basis coords
    FpMatrix coord_embed;      // deg x sdeg: zeta-basis coords -> ambient coords
  };
  std::vector<SubfieldInfo> subfields_;  // one per divisor of deg
  const SubfieldInfo& subfield_info(unsigned sdeg) const;
};

// Operator sugar; all checks are performed by the Field methods.
inline Elem operator+(const Elem& a, const Elem& b) { return a.field->add(a, b); }
inline Elem operator-(const Elem& a, const Elem& b) { return a.field->sub(a, b); }
inline Elem operator*(const Elem& a, const Elem& b) { return a.field->mul(a, b); }
inline Elem operator/(const Elem& a, const Elem& b) { return a.field->div(a, b); }
inline Elem operator-(const Elem& a) { return a.field->neg(a); }

/// F_{q^2}-coordinates of the ambient field with respect to a basis of
/// F_{q^{2n}} over F_{q^2}. Throws DomainError if the basis is dependent.
class CoordFrame {
 public:
  CoordFrame(const Field& f, std::vector<Elem> basis);

  const Field& field() const { return *f_; }
  const std::vector<Elem>& basis() const { return basis_; }
  /// n coordinates, each an element of F_{q^2}.
  std::vector<Elem> coords(const Elem& u) const;
  Elem from_coords(const std::vector<Elem>& c) const;

 private:
  const Field* f_;
  std::vector<Elem> basis_;
  FpMatrix phi_inv_;  // inverse of the F_p change-of-basis matrix
};

/// The default basis 1, g, ..., g^{n-1} (powers of the field generator).
std::vector<Elem> default_basis(const Field& f);

/// The subgroup U of order q+1 in F_{q^2}^*, as consecutive powers of
/// the (q-1)-th power of the fixed F_{q^2} primitive. Deterministic order.
std::vector<Elem> unit_subgroup(const Field& f);

}  // namespace sesq
