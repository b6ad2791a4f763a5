#include "sesq/sesqui.hpp"

#include <algorithm>
#include <thread>

namespace sesq {

Elem SesquiForm::eval(const Elem& u, const Elem& v) const {
  const Field& f = field();
  f.check(u);
  f.check(v);
  return f.trace_q2(f.mul(u, l_.eval(f.frob_q(v))));
}

// --- frames, M_L, P, coefficient matrices ---

BasisFrame BasisFrame::make(const Field& f, std::vector<Elem> basis) {
  CoordFrame coords(f, basis);
  const int n = int(f.n());
  FMatrix b(f, f.deg(), n, n);
  for (int i = 0; i < n; ++i) {
    Elem t = basis[size_t(i)];
    for (int j = 0; j < n; ++j) {
      b.set(i, j, t);
      t = f.frob_q2(t);
    }
  }
  return BasisFrame{std::move(coords), std::move(b)};
}

BasisFrame BasisFrame::standard(const Field& f) {
  return make(f, default_basis(f));
}

FMatrix build_ml(const LinPoly& l) {
  const Field& f = l.field();
  const int n = int(f.n());
  FMatrix m(f, f.deg(), n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int k = ((j - i) % n + n) % n;
      m.set(i, j, f.frob_q2(l.coeff(k), long(i)));
    }
  return m;
}

FMatrix perm_p(const Field& f) {
  const int n = int(f.n());
  FMatrix p(f, f.deg(), n, n);
  p.set(0, n - 1, f.one());
  for (int i = 1; i < n; ++i) p.set(i, i - 1, f.one());
  return p;
}

FMatrix coeff_matrix(const SesquiForm& form, const BasisFrame& frame) {
  const Field& f = form.field();
  const int n = int(f.n());
  FMatrix c(f, 2 * f.e(), n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      c.set(i, j, form.eval(frame.coords.basis()[size_t(i)],
                            frame.coords.basis()[size_t(j)]));
  return c;
}

// --- subspace helpers (coordinates in the default frame) ---

namespace {

// Reduced (RREF) coordinate row matrix of a spanning set; rows are returned
// as coordinate vectors over F_{q^2}.
std::vector<std::vector<Elem>> reduced_rows(const Field& f, const CoordFrame& frame,
                                            const std::vector<Elem>& span) {
  const int n = int(f.n());
  if (span.empty()) return {};
  FMatrix m(f, 2 * f.e(), int(span.size()), n);
  for (size_t i = 0; i < span.size(); ++i) {
    auto row = frame.coords(span[i]);
    for (int j = 0; j < n; ++j) m.set(int(i), j, row[size_t(j)]);
  }
  // RREF via kernel machinery: reuse rank-style elimination by transposing is
  // awkward; run a local elimination instead.
  std::vector<std::vector<Elem>> rows;
  for (size_t i = 0; i < span.size(); ++i) {
    std::vector<Elem> r;
    for (int j = 0; j < n; ++j) r.push_back(m.at(int(i), j));
    rows.push_back(std::move(r));
  }
  size_t rank = 0;
  for (int col = 0; col < n && rank < rows.size(); ++col) {
    size_t piv = rank;
    while (piv < rows.size() && rows[piv][size_t(col)].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    Elem inv = f.inv(rows[rank][size_t(col)]);
    for (int j = 0; j < n; ++j) rows[rank][size_t(j)] = f.mul(rows[rank][size_t(j)], inv);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][size_t(col)].is_zero()) continue;
      Elem t = rows[i][size_t(col)];
      for (int j = 0; j < n; ++j)
        rows[i][size_t(j)] = f.sub(rows[i][size_t(j)], f.mul(t, rows[rank][size_t(j)]));
    }
    ++rank;
  }
  rows.resize(rank);
  return rows;
}

Subspace subspace_from_span(const Field& f, const CoordFrame& frame,
                            const std::vector<Elem>& span) {
  Subspace s;
  for (const auto& row : reduced_rows(f, frame, span))
    s.basis.push_back(frame.from_coords(row));
  return s;
}

std::vector<int> pivot_columns(const Field& f, const CoordFrame& frame,
                               const Subspace& s) {
  std::vector<int> pivots;
  auto rows = reduced_rows(f, frame, s.basis);
  for (const auto& row : rows)
    for (size_t j = 0; j < row.size(); ++j)
      if (!row[j].is_zero()) { pivots.push_back(int(j)); break; }
  return pivots;
}

}  // namespace

bool subspace_contains(const Field& f, const Subspace& s, const Elem& u) {
  CoordFrame frame(f, default_basis(f));
  std::vector<Elem> ext = s.basis;
  ext.push_back(u);
  return reduced_rows(f, frame, ext).size() == s.basis.size();
}

bool subspace_equal(const Field& f, const Subspace& a, const Subspace& b) {
  if (a.dim() != b.dim()) return false;
  for (const Elem& u : a.basis)
    if (!subspace_contains(f, b, u)) return false;
  return true;
}

Subspace subspace_meet(const Field& f, const Subspace& a, const Subspace& b) {
  if (a.basis.empty() || b.basis.empty()) return {};
  CoordFrame frame(f, default_basis(f));
  const int n = int(f.n());
  const int da = a.dim(), db = b.dim();
  // solve sum x_i a_i = sum y_j b_j: kernel of [A^T | -B^T]
  FMatrix m(f, 2 * f.e(), n, da + db);
  for (int i = 0; i < da; ++i) {
    auto col = frame.coords(a.basis[size_t(i)]);
    for (int r = 0; r < n; ++r) m.set(r, i, col[size_t(r)]);
  }
  for (int j = 0; j < db; ++j) {
    auto col = frame.coords(b.basis[size_t(j)]);
    for (int r = 0; r < n; ++r) m.set(r, da + j, f.neg(col[size_t(r)]));
  }
  std::vector<Elem> span;
  for (const auto& v : m.kernel()) {
    Elem u = f.zero();
    for (int i = 0; i < da; ++i) u = f.add(u, f.mul(v[size_t(i)], a.basis[size_t(i)]));
    span.push_back(u);
  }
  return subspace_from_span(f, frame, span);
}

// --- from_pairing ---

SesquiForm from_pairing(const Field& f,
                        const std::function<Elem(const Elem&, const Elem&)>& pairing) {
  const int n = int(f.n());
  const unsigned sq2 = 2 * f.e();
  std::vector<Elem> beta = default_basis(f);

  // Gram matrix of the trace pairing
  FMatrix gram(f, sq2, n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      gram.set(j, k, f.trace_q2(f.mul(beta[size_t(j)], beta[size_t(k)])));

  // recover phi(beta_i) = alpha_i with Tr(u alpha_i) = pairing(u, beta_i)
  std::vector<Elem> alpha;
  for (int i = 0; i < n; ++i) {
    std::vector<Elem> rhs;
    for (int j = 0; j < n; ++j) {
      Elem val = pairing(beta[size_t(j)], beta[size_t(i)]);
      f.check(val);
      if (!f.in_subfield(val, sq2))
        throw DomainError("pairing values must lie in F_{q^2}");
      rhs.push_back(val);
    }
    auto x = gram.solve(rhs);
    if (!x) throw Error("trace Gram matrix is singular");  // cannot happen
    Elem a = f.zero();
    for (int k = 0; k < n; ++k) a = f.add(a, f.mul((*x)[size_t(k)], beta[size_t(k)]));
    alpha.push_back(a);
  }

  // interpolate L with L(beta_i^q) = alpha_i (Moore system over the ambient)
  FMatrix v(f, f.deg(), n, n);
  for (int i = 0; i < n; ++i) {
    Elem t = f.frob_q(beta[size_t(i)]);
    for (int k = 0; k < n; ++k) {
      v.set(i, k, t);
      t = f.frob_q2(t);
    }
  }
  auto a = v.solve(alpha);
  if (!a) throw Error("Moore interpolation system is singular");  // cannot happen
  SesquiForm form{LinPoly(f, *a)};

  // a-posteriori sample check that the pairing really is sesquilinear
  std::vector<Elem> sample = beta;
  Elem g = f.generator();
  sample.push_back(g);
  if (n >= 2) sample.push_back(f.add(beta[0], beta[1]));
  sample.push_back(f.add(g, f.one()));
  Elem zeta = f.subfield_primitive(sq2);
  for (const Elem& b : beta) sample.push_back(f.mul(zeta, b));
  for (const Elem& u : sample)
    for (const Elem& w : sample)
      if (form.eval(u, w) != pairing(u, w))
        throw DomainError("pairing fails sesquilinearity spot checks");
  return form;
}

// --- radicals ---

Radicals radicals(const SesquiForm& form) {
  const Field& f = form.field();
  const LinPoly& l = form.poly();
  const int n = int(f.n());
  CoordFrame frame(f, default_basis(f));
  const std::vector<Elem>& beta = frame.basis();

  // image of L
  std::vector<Elem> images;
  for (const Elem& b : beta) images.push_back(l.eval(b));
  Subspace im = subspace_from_span(f, frame, images);

  // left radical: trace-orthogonal complement of im L
  Subspace left;
  {
    int r = im.dim();
    FMatrix cond(f, 2 * f.e(), std::max(r, 1), n);
    if (r == 0) {
      left = subspace_from_span(f, frame, beta);
    } else {
      for (int k = 0; k < r; ++k)
        for (int i = 0; i < n; ++i)
          cond.set(k, i, f.trace_q2(f.mul(beta[size_t(i)], im.basis[size_t(k)])));
      std::vector<Elem> span;
      for (const auto& v : cond.kernel()) span.push_back(frame.from_coords(v));
      left = subspace_from_span(f, frame, span);
    }
  }

  // right radical: preimage of ker L under the q-power map
  Subspace right;
  {
    std::vector<Elem> span;
    for (const Elem& w : kernel(l).basis) span.push_back(f.frobenius(w, -long(f.e())));
    right = subspace_from_span(f, frame, span);
  }

  if (left.dim() != right.dim())
    throw Error("radical dimensions disagree");  // indicates a bug
  // membership by definition: vanishing against the basis is enough by
  // (semi)linearity in the other argument
  for (const Elem& u : left.basis)
    for (const Elem& b : beta)
      if (!form.eval(u, b).is_zero()) throw Error("left radical member fails definition");
  for (const Elem& v : right.basis)
    for (const Elem& b : beta)
      if (!form.eval(b, v).is_zero()) throw Error("right radical member fails definition");
  return Radicals{std::move(left), std::move(right)};
}

// --- Hermitian detection ---

HermitianInfo hermitian_lambda(const SesquiForm& form) {
  const Field& f = form.field();
  const LinPoly& l = form.poly();
  if (l.is_zero()) return HermitianInfo{true, std::nullopt};
  LinPoly adj = l.adjoint();
  int i0 = l.top_index();
  Elem lambda = f.div(adj.coeff(i0), l.coeff(i0));
  if (!f.in_subfield(lambda, 2 * f.e())) return HermitianInfo{false, std::nullopt};
  if (adj != l.scaled(lambda)) return HermitianInfo{false, std::nullopt};
  return HermitianInfo{false, lambda};
}

// --- classification ---

namespace {

// Deterministic complement of W0: frame basis vectors at non-pivot indices.
std::vector<Elem> complement_basis(const Field& f, const CoordFrame& frame,
                                   const Subspace& w0) {
  std::vector<int> pivots = pivot_columns(f, frame, w0);
  std::vector<Elem> w;
  for (int i = 0; i < int(f.n()); ++i)
    if (std::find(pivots.begin(), pivots.end(), i) == pivots.end())
      w.push_back(frame.basis()[size_t(i)]);
  return w;
}

FMatrix reduced_coeff_matrix(const SesquiForm& form, const std::vector<Elem>& w) {
  const Field& f = form.field();
  int r = int(w.size());
  FMatrix c(f, 2 * f.e(), r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) c.set(i, j, form.eval(w[size_t(i)], w[size_t(j)]));
  return c;
}

}  // namespace

FormClass classify(const SesquiForm& form, const OracleCap& cap) {
  const Field& f = form.field();
  CoordFrame frame(f, default_basis(f));
  Radicals rads = radicals(form);
  Subspace w0 = subspace_meet(f, rads.left, rads.right);
  std::vector<Elem> w = complement_basis(f, frame, w0);
  const int r = int(w.size());

  FormClass out;
  out.n = f.n();
  out.rad_meet_dim = w0.dim();
  if (r == 0) {
    out.kind = FormClass::Kind::kNonsingular;
    return out;
  }
  FMatrix c = reduced_coeff_matrix(form, w);
  auto cinv = c.inverse();
  if (cinv) {
    out.kind = FormClass::Kind::kNonsingular;
    out.invariants = invariant_factors(c.star().mul(*cinv));
    return out;
  }
  out.kind = FormClass::Kind::kSingularReduced;
  if (r == 1) throw Error("singular 1x1 reduced form contradicts maximality of W0");
  if (r == 2) {
    if (c.rank() != 1) throw Error("singular reduced 2x2 with unexpected rank");
    FMatrix canon(f, 2 * f.e(), 2, 2);
    canon.set(1, 0, f.one());
    out.canonical = std::move(canon);
    return out;
  }
  uint64_t q2 = f.q2();
  if (r <= cap.max_order && q2 <= cap.max_subfield) {
    out.canonical = canonical_congruence_rep(c, cap);
    return out;
  }
  throw UnclassifiedError(
      "singular reduced form of order " + std::to_string(r) +
      " is outside the brute-force fallback range");
}

bool FormClass::operator==(const FormClass& o) const {
  if (n != o.n || rad_meet_dim != o.rad_meet_dim || kind != o.kind) return false;
  if (kind == Kind::kNonsingular) return invariants == o.invariants;
  return *canonical == *o.canonical;
}

bool equivalent(const SesquiForm& f0, const SesquiForm& f1, const OracleCap& cap) {
  if (&f0.field() != &f1.field()) throw ContextError("forms from different fields");
  return classify(f0, cap) == classify(f1, cap);
}

// --- the 2-dimensional table ---

namespace {

Elem smallest_with_power(const Field& f, uint64_t exp_num, const Elem& target) {
  // smallest (coordinate-lex) nonzero d in F_{q^2} with d^exp_num = target
  std::vector<Elem> elems = f.subfield_elements(2 * f.e());
  std::sort(elems.begin(), elems.end(),
            [](const Elem& a, const Elem& b) { return lex_less(a, b); });
  for (const Elem& d : elems) {
    if (d.is_zero()) continue;
    if (f.pow(d, exp_num) == target) return d;
  }
  throw Error("no solution of d^k = target in F_{q^2}");
}

}  // namespace

Dim2Class classify_dim2(const SesquiForm& form) {
  const Field& f = form.field();
  if (f.n() != 2) throw DomainError("classify_dim2 requires n = 2");
  if (form.is_zero()) throw DomainError("classify_dim2 requires a nonzero form");
  const unsigned sq2 = 2 * f.e();
  const uint64_t q = f.q();
  Elem b = form.poly().coeff(0);  // L = a x^{q^2} + b x
  Elem a = form.poly().coeff(1);
  Elem na = f.rel_norm(a, f.deg(), sq2);
  Elem nb = f.rel_norm(b, f.deg(), sq2);

  auto scalar_cond = [&]() {  // a^{q+1} == b^{q^3+1}
    return f.mul(f.frob_q(a), a) == f.mul(f.frobenius(b, long(3 * f.e())), b);
  };

  if (na != nb) {
    Elem alpha = f.trace_q2(f.mul(a, f.frob_q(b)));  // Tr(a b^q)
    Elem beta = f.sub(na, nb);
    Elem alpha_diff = f.sub(alpha, f.frob_q(alpha));
    if (scalar_cond()) {
      Elem s = f.div(f.frob_q(a), b);
      FMatrix canon = FMatrix::identity(f, sq2, 2).scaled(s);
      return Dim2Class{Dim2Class::Kind::kScalar, {s}, std::move(canon)};
    }
    // beta^{q+1} and the discriminant (alpha - alpha^q)^2 + 4 beta^{q+1}
    Elem beta_q1 = f.mul(f.frob_q(beta), beta);
    Elem disc = f.add(f.mul(alpha_diff, alpha_diff),
                      f.mul(f.from_int(4), beta_q1));
    Elem beta_qm1 = f.div(f.frob_q(beta), beta);  // beta^{q-1}
    if (!disc.is_zero()) {
      Elem tr = f.div(alpha_diff, beta);
      Elem det = f.neg(beta_qm1);
      FMatrix canon(f, sq2, 2, 2);  // companion with the right trace and det
      canon.set(0, 1, f.neg(det));
      canon.set(1, 0, f.one());
      canon.set(1, 1, tr);
      return Dim2Class{Dim2Class::Kind::kSemisimple, {tr, det}, std::move(canon)};
    }
    Elem s;
    if (q % 2 == 1) {
      s = f.div(alpha_diff, f.mul(f.from_int(2), beta));
    } else {
      s = f.pow(beta_qm1, f.size() / 2);  // the unique square root in char 2
    }
    FMatrix canon(f, sq2, 2, 2);
    canon.set(0, 0, s);
    canon.set(1, 0, f.one());
    canon.set(1, 1, s);
    return Dim2Class{Dim2Class::Kind::kJordan, {s}, std::move(canon)};
  }

  // N(a) == N(b), not both zero since the form is nonzero
  if (scalar_cond()) {
    Elem k = f.div(f.frob_q(a), b);
    Elem d = smallest_with_power(f, q - 1, k);
    FMatrix canon(f, sq2, 2, 2);
    canon.set(0, 0, d);
    return Dim2Class{Dim2Class::Kind::kRank1, {k}, std::move(canon)};
  }
  FMatrix canon(f, sq2, 2, 2);
  canon.set(1, 0, f.one());
  return Dim2Class{Dim2Class::Kind::kNilpotentPair, {}, std::move(canon)};
}

bool Dim2Class::operator==(const Dim2Class& o) const {
  if (kind != o.kind || params.size() != o.params.size()) return false;
  for (size_t i = 0; i < params.size(); ++i)
    if (params[i] != o.params[i]) return false;
  return true;
}

// --- diagonalization ---

std::optional<Diagonalization> diagonalize(const SesquiForm& form) {
  const Field& f = form.field();
  const unsigned sq2 = 2 * f.e();
  const uint64_t q = f.q();
  CoordFrame frame(f, default_basis(f));
  Radicals rads = radicals(form);
  if (!subspace_equal(f, rads.left, rads.right)) return std::nullopt;
  Subspace w0 = rads.left;  // equals the meet here
  std::vector<Elem> w = complement_basis(f, frame, w0);
  const int r = int(w.size());

  Diagonalization out;
  if (r > 0) {
    FMatrix c = reduced_coeff_matrix(form, w);
    auto cinv = c.inverse();
    if (!cinv) throw Error("rad = rad* forces a nonsingular reduced matrix");
    FMatrix s = c.star().mul(*cinv).transpose();  // tau in w-coordinates

    // eigenspaces over U must exhaust the reduced space, else no diagonal
    // coefficient matrix exists
    std::vector<std::pair<Elem, std::vector<std::vector<Elem>>>> eigenspaces;
    int dim_sum = 0;
    for (const Elem& mu : unit_subgroup(f)) {
      FMatrix shifted = s.sub(FMatrix::identity(f, sq2, r).scaled(mu));
      auto eig = shifted.kernel();
      if (eig.empty()) continue;
      dim_sum += int(eig.size());
      eigenspaces.emplace_back(mu, std::move(eig));
    }
    if (dim_sum != r) return std::nullopt;

    std::vector<Elem> gammas;
    for (const auto& [mu, eig] : eigenspaces) {
      // eigenvectors as field elements
      std::vector<Elem> basis;
      for (const auto& x : eig) {
        Elem u = f.zero();
        for (int k = 0; k < r; ++k) u = f.add(u, f.mul(x[size_t(k)], w[size_t(k)]));
        basis.push_back(u);
      }
      Elem d_min = smallest_with_power(f, q - 1, mu);
      // Gram-Schmidt on the mu-Hermitian restriction
      while (!basis.empty()) {
        std::optional<Elem> anisotropic;
        for (const Elem& v : basis)
          if (!form.eval(v, v).is_zero()) { anisotropic = v; break; }
        if (!anisotropic) {
          // all basis vectors isotropic: use a pair with nonzero pairing
          for (size_t i = 0; i < basis.size() && !anisotropic; ++i)
            for (size_t j = 0; j < basis.size() && !anisotropic; ++j) {
              if (i == j || form.eval(basis[i], basis[j]).is_zero()) continue;
              for (const Elem& cc : f.subfield_elements(sq2)) {
                if (cc.is_zero()) continue;
                Elem cand = f.add(basis[i], f.mul(cc, basis[j]));
                if (!form.eval(cand, cand).is_zero()) { anisotropic = cand; break; }
              }
            }
        }
        if (!anisotropic)
          throw Error("nondegenerate Hermitian block with no anisotropic vector");
        Elem u = *anisotropic;
        Elem val = form.eval(u, u);
        // scale so the diagonal entry is the fixed smallest solution
        Elem ratio = f.div(d_min, val);
        std::optional<Elem> scale;
        for (const Elem& cc : f.subfield_elements(sq2)) {
          if (cc.is_zero()) continue;
          if (f.mul(f.frob_q(cc), cc) == ratio) { scale = cc; break; }
        }
        if (!scale) throw Error("norm equation c^{q+1} = ratio has no solution");
        Elem gamma = f.mul(*scale, u);
        gammas.push_back(gamma);
        out.entries.push_back(d_min);
        // orthogonal complement of gamma inside the current block
        int bd = int(basis.size());
        FMatrix row(f, sq2, 1, bd);
        for (int k = 0; k < bd; ++k) row.set(0, k, form.eval(gamma, basis[size_t(k)]));
        std::vector<Elem> next;
        for (const auto& y : row.kernel()) {
          Elem v = f.zero();
          for (int k = 0; k < bd; ++k)
            v = f.add(v, f.mul(f.frobenius(y[size_t(k)], -long(f.e())), basis[size_t(k)]));
          next.push_back(v);
        }
        basis = std::move(next);
      }
    }
    if (int(gammas.size()) != r)
      throw Error("eigenspace decomposition lost dimensions");  // indicates a bug
    out.frame_basis = std::move(gammas);
  }
  for (const Elem& u : w0.basis) out.frame_basis.push_back(u);

  // certify: the coefficient matrix in the produced frame is exactly diagonal
  BasisFrame check_frame = BasisFrame::make(f, out.frame_basis);
  FMatrix c = coeff_matrix(form, check_frame);
  const int n = int(f.n());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Elem want = f.zero();
      if (i == j && i < int(out.entries.size())) want = out.entries[size_t(i)];
      if (c.at(i, j) != want) throw Error("diagonalization certificate failed");
    }
  return out;
}

// --- diagonal value histogram ---

std::vector<long long> diagonal_histogram(const SesquiForm& form, unsigned workers) {
  const Field& f = form.field();
  f.require_cap(f.size(), "diagonal histogram");
  const unsigned d = f.deg(), sq2 = 2 * f.e();
  const LinPoly& l = form.poly();
  FpMatrix lq = f.linear_map([&](const Elem& u) { return l.eval(f.frob_q(u)); });
  FpMatrix tm = f.trace_coord_map(sq2);
  const uint64_t total = f.size();
  const uint64_t p = f.p();

  uint64_t nbuckets = 1;
  for (unsigned i = 0; i < sq2; ++i) nbuckets *= p;

  if (workers == 0) workers = 1;
  workers = std::min<uint64_t>(workers, 64);
  std::vector<std::vector<long long>> partial(workers,
                                              std::vector<long long>(nbuckets, 0));
  auto run = [&](unsigned wi, uint64_t lo, uint64_t hi) {
    std::vector<uint32_t> u(d), v(d), w(d), t(sq2);
    std::vector<uint64_t> scratch(2 * size_t(d));
    // decode the starting element
    uint64_t idx = lo;
    for (unsigned i = 0; i < d; ++i) {
      u[i] = uint32_t(idx % p);
      idx /= p;
    }
    auto& counts = partial[wi];
    for (uint64_t k = lo; k < hi; ++k) {
      lq.apply_raw(u.data(), v.data());
      f.raw_mul(u.data(), v.data(), w.data(), scratch.data());
      tm.apply_raw(w.data(), t.data());
      uint64_t bucket = 0;
      for (int i = int(sq2) - 1; i >= 0; --i) bucket = bucket * p + t[size_t(i)];
      ++counts[bucket];
      // odometer step
      for (unsigned i = 0; i < d; ++i) {
        if (++u[i] < p) break;
        u[i] = 0;
      }
    }
  };
  if (workers == 1) {
    run(0, 0, total);
  } else {
    std::vector<std::thread> pool;
    uint64_t chunk = (total + workers - 1) / workers;
    for (unsigned wi = 0; wi < workers; ++wi) {
      uint64_t lo = std::min<uint64_t>(wi * chunk, total);
      uint64_t hi = std::min<uint64_t>(lo + chunk, total);
      pool.emplace_back(run, wi, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  std::vector<long long> counts(nbuckets, 0);
  for (const auto& part : partial)
    for (uint64_t i = 0; i < nbuckets; ++i) counts[i] += part[i];
  return counts;
}

}  // namespace sesq
