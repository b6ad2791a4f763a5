#include "sesq/fmatrix.hpp"

#include <algorithm>
#include <sstream>

namespace sesq {

// --- FPoly ---

FPoly::FPoly(const Field& f, unsigned subdeg, std::vector<Elem> coeffs)
    : f_(&f), subdeg_(subdeg), c_(std::move(coeffs)) {
  for (const Elem& x : c_) {
    f.check(x);
    if (!f.in_subfield(x, subdeg_))
      throw DomainError("polynomial coefficient outside tagged subfield");
  }
  normalize();
}

void FPoly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

bool FPoly::is_monic() const {
  return !c_.empty() && c_.back() == f_->one();
}

Elem FPoly::coeff(int i) const {
  if (i < 0 || i >= int(c_.size())) return f_->zero();
  return c_[size_t(i)];
}

FPoly FPoly::add(const FPoly& o) const {
  if (f_ != o.f_) throw ContextError("polynomials from different fields");
  FPoly r(*f_, subdeg_);
  r.c_.resize(std::max(c_.size(), o.c_.size()), f_->zero());
  for (size_t i = 0; i < r.c_.size(); ++i)
    r.c_[i] = f_->add(i < c_.size() ? c_[i] : f_->zero(),
                      i < o.c_.size() ? o.c_[i] : f_->zero());
  r.normalize();
  return r;
}

FPoly FPoly::sub(const FPoly& o) const { return add(o.scaled(f_->neg(f_->one()))); }

FPoly FPoly::mul(const FPoly& o) const {
  if (f_ != o.f_) throw ContextError("polynomials from different fields");
  FPoly r(*f_, subdeg_);
  if (is_zero() || o.is_zero()) return r;
  r.c_.assign(c_.size() + o.c_.size() - 1, f_->zero());
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j)
      r.c_[i + j] = f_->add(r.c_[i + j], f_->mul(c_[i], o.c_[j]));
  r.normalize();
  return r;
}

FPoly FPoly::scaled(const Elem& s) const {
  FPoly r(*f_, subdeg_);
  r.c_ = c_;
  for (Elem& x : r.c_) x = f_->mul(x, s);
  r.normalize();
  return r;
}

std::pair<FPoly, FPoly> FPoly::divmod(const FPoly& d) const {
  if (d.is_zero()) throw DomainError("polynomial division by zero");
  FPoly q(*f_, subdeg_), r = *this;
  if (degree() < d.degree()) return {q, r};
  q.c_.assign(size_t(degree() - d.degree() + 1), f_->zero());
  Elem lead_inv = f_->inv(d.c_.back());
  while (r.degree() >= d.degree()) {
    int shift = r.degree() - d.degree();
    Elem coef = f_->mul(r.c_.back(), lead_inv);
    q.c_[size_t(shift)] = coef;
    for (int i = 0; i <= d.degree(); ++i)
      r.c_[size_t(i + shift)] =
          f_->sub(r.c_[size_t(i + shift)], f_->mul(coef, d.c_[size_t(i)]));
    r.normalize();
  }
  q.normalize();
  return {q, r};
}

FPoly FPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(f_->inv(c_.back()));
}

Elem FPoly::eval(const Elem& x) const {
  Elem acc = f_->zero();
  for (int i = degree(); i >= 0; --i) acc = f_->add(f_->mul(acc, x), c_[size_t(i)]);
  return acc;
}

bool FPoly::operator==(const FPoly& o) const {
  if (f_ != o.f_) throw ContextError("polynomials from different fields");
  if (c_.size() != o.c_.size()) return false;
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != o.c_[i]) return false;
  return true;
}

FPoly FPoly::x_minus(const Field& f, unsigned subdeg, const Elem& c) {
  return FPoly(f, subdeg, {f.neg(c), f.one()});
}

std::string FPoly::to_string() const {
  std::string s;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) s.push_back(',');
    s += f_->to_string(c_[i]);
  }
  return s;
}

FPoly gcd(const FPoly& a, const FPoly& b) {
  FPoly x = a, y = b;
  while (!y.is_zero()) {
    FPoly r = x.divmod(y).second;
    x = y;
    y = r;
  }
  return x.monic();
}

// --- FMatrix ---

FMatrix::FMatrix(const Field& f, unsigned subdeg, int rows, int cols)
    : f_(&f), subdeg_(subdeg), rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw DomainError("negative matrix dimension");
  a_.assign(size_t(rows) * cols, f.zero());
}

FMatrix FMatrix::identity(const Field& f, unsigned subdeg, int n) {
  FMatrix m(f, subdeg, n, n);
  for (int i = 0; i < n; ++i) m.mut(i, i) = f.one();
  return m;
}

FMatrix FMatrix::from_entries(const Field& f, unsigned subdeg, int rows, int cols,
                              std::vector<Elem> entries) {
  if (entries.size() != size_t(rows) * cols)
    throw DomainError("matrix entry count mismatch");
  FMatrix m(f, subdeg, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.set(i, j, entries[size_t(i) * cols + j]);
  return m;
}

void FMatrix::set(int i, int j, const Elem& v) {
  f_->check(v);
  if (!f_->in_subfield(v, subdeg_))
    throw DomainError("matrix entry outside tagged subfield");
  mut(i, j) = v;
}

void FMatrix::require_compatible(const FMatrix& o) const {
  if (f_ != o.f_) throw ContextError("matrices from different fields");
  if (subdeg_ != o.subdeg_) throw DomainError("matrices with different subfield tags");
}

FMatrix FMatrix::add(const FMatrix& o) const {
  require_compatible(o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix shape mismatch");
  FMatrix r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->add(a_[i], o.a_[i]);
  return r;
}

FMatrix FMatrix::sub(const FMatrix& o) const {
  require_compatible(o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix shape mismatch");
  FMatrix r = *this;
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->sub(a_[i], o.a_[i]);
  return r;
}

FMatrix FMatrix::mul(const FMatrix& o) const {
  require_compatible(o);
  if (cols_ != o.rows_) throw DomainError("matrix shape mismatch");
  FMatrix r(*f_, subdeg_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Elem& v = at(i, k);
      if (v.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j)
        r.mut(i, j) = f_->add(r.at(i, j), f_->mul(v, o.at(k, j)));
    }
  return r;
}

FMatrix FMatrix::scaled(const Elem& s) const {
  FMatrix r = *this;
  for (Elem& x : r.a_) x = f_->mul(x, s);
  return r;
}

FMatrix FMatrix::transpose() const {
  FMatrix r(*f_, subdeg_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.mut(j, i) = at(i, j);
  return r;
}

FMatrix FMatrix::star() const {
  FMatrix r(*f_, subdeg_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.mut(j, i) = f_->frob_q(at(i, j));
  return r;
}

FMatrix FMatrix::retag(unsigned subdeg) const {
  FMatrix r(*f_, subdeg, rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(i, j, at(i, j));
  return r;
}

Elem FMatrix::det() const {
  if (rows_ != cols_) throw DomainError("determinant of non-square matrix");
  FMatrix a = *this;
  Elem d = f_->one();
  for (int col = 0; col < cols_; ++col) {
    int piv = -1;
    for (int i = col; i < rows_; ++i)
      if (!a.at(i, col).is_zero()) { piv = i; break; }
    if (piv < 0) return f_->zero();
    if (piv != col) {
      for (int j = 0; j < cols_; ++j) std::swap(a.mut(piv, j), a.mut(col, j));
      d = f_->neg(d);
    }
    d = f_->mul(d, a.at(col, col));
    Elem inv = f_->inv(a.at(col, col));
    for (int i = col + 1; i < rows_; ++i) {
      if (a.at(i, col).is_zero()) continue;
      Elem t = f_->mul(a.at(i, col), inv);
      for (int j = col; j < cols_; ++j)
        a.mut(i, j) = f_->sub(a.at(i, j), f_->mul(t, a.at(col, j)));
    }
  }
  return d;
}

namespace {
// Row-reduce in place; returns pivot column list. Optionally carries a
// right-hand block of extra columns that undergo the same row operations.
std::vector<int> rref(const Field& f, std::vector<Elem>& a, int rows, int cols,
                      int total_cols) {
  auto at = [&](int i, int j) -> Elem& { return a[size_t(i) * total_cols + j]; };
  std::vector<int> pivots;
  int r = 0;
  for (int col = 0; col < cols && r < rows; ++col) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (!at(i, col).is_zero()) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < total_cols; ++j) std::swap(at(piv, j), at(r, j));
    Elem inv = f.inv(at(r, col));
    for (int j = 0; j < total_cols; ++j) at(r, j) = f.mul(at(r, j), inv);
    for (int i = 0; i < rows; ++i) {
      if (i == r || at(i, col).is_zero()) continue;
      Elem t = at(i, col);
      for (int j = 0; j < total_cols; ++j)
        at(i, j) = f.sub(at(i, j), f.mul(t, at(r, j)));
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}
}  // namespace

int FMatrix::rank() const {
  std::vector<Elem> work = a_;
  return int(rref(*f_, work, rows_, cols_, cols_).size());
}

std::optional<FMatrix> FMatrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  int n = rows_;
  std::vector<Elem> work;
  work.reserve(size_t(n) * 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) work.push_back(at(i, j));
    for (int j = 0; j < n; ++j) work.push_back(i == j ? f_->one() : f_->zero());
  }
  auto pivots = rref(*f_, work, n, n, 2 * n);
  if (int(pivots.size()) != n) return std::nullopt;
  FMatrix r(*f_, subdeg_, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.mut(i, j) = work[size_t(i) * 2 * n + n + j];
  return r;
}

std::vector<std::vector<Elem>> FMatrix::kernel() const {
  std::vector<Elem> work = a_;
  auto pivots = rref(*f_, work, rows_, cols_, cols_);
  std::vector<int> is_pivot(cols_, -1);
  for (size_t k = 0; k < pivots.size(); ++k) is_pivot[size_t(pivots[k])] = int(k);
  std::vector<std::vector<Elem>> basis;
  for (int free = 0; free < cols_; ++free) {
    if (is_pivot[size_t(free)] >= 0) continue;
    std::vector<Elem> v(size_t(cols_), f_->zero());
    v[size_t(free)] = f_->one();
    for (int col = 0; col < cols_; ++col) {
      int prow = is_pivot[size_t(col)];
      if (prow >= 0) v[size_t(col)] = f_->neg(work[size_t(prow) * cols_ + free]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Elem>> FMatrix::solve(const std::vector<Elem>& rhs) const {
  if (int(rhs.size()) != rows_) throw DomainError("rhs length mismatch");
  int total = cols_ + 1;
  std::vector<Elem> work;
  work.reserve(size_t(rows_) * total);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) work.push_back(at(i, j));
    work.push_back(rhs[size_t(i)]);
  }
  auto pivots = rref(*f_, work, rows_, cols_, total);
  // inconsistent if some row is (0...0 | nonzero)
  for (int i = 0; i < rows_; ++i) {
    bool all_zero = true;
    for (int j = 0; j < cols_; ++j)
      if (!work[size_t(i) * total + j].is_zero()) { all_zero = false; break; }
    if (all_zero && !work[size_t(i) * total + cols_].is_zero()) return std::nullopt;
  }
  std::vector<Elem> x(size_t(cols_), f_->zero());
  for (size_t k = 0; k < pivots.size(); ++k)
    x[size_t(pivots[k])] = work[k * size_t(total) + cols_];
  return x;
}

bool FMatrix::operator==(const FMatrix& o) const {
  require_compatible(o);
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t i = 0; i < a_.size(); ++i)
    if (a_[i] != o.a_[i]) return false;
  return true;
}

bool FMatrix::lex_before(const FMatrix& o) const {
  for (size_t i = 0; i < a_.size(); ++i) {
    if (a_[i] != o.a_[i]) return lex_less(a_[i], o.a_[i]);
  }
  return false;
}

std::string FMatrix::to_string() const {
  std::string s;
  for (int i = 0; i < rows_; ++i) {
    if (i) s.push_back(';');
    for (int j = 0; j < cols_; ++j) {
      if (j) s.push_back(',');
      s += f_->to_string(at(i, j));
    }
  }
  return s;
}

FMatrix FMatrix::parse(const Field& f, unsigned subdeg, const std::string& s) {
  std::vector<std::vector<Elem>> rows;
  std::stringstream rs(s);
  std::string row;
  while (std::getline(rs, row, ';')) {
    std::vector<Elem> entries;
    std::stringstream es(row);
    std::string tok;
    while (std::getline(es, tok, ',')) entries.push_back(f.parse_elem(tok));
    rows.push_back(std::move(entries));
  }
  if (rows.empty()) throw ParseError("empty matrix");
  size_t cols = rows[0].size();
  std::vector<Elem> flat;
  for (auto& r : rows) {
    if (r.size() != cols) throw ParseError("ragged matrix rows");
    for (auto& x : r) flat.push_back(std::move(x));
  }
  return from_entries(f, subdeg, int(rows.size()), int(cols), std::move(flat));
}

// --- characteristic polynomial (Hessenberg reduction + recurrence) ---

FPoly FMatrix::charpoly() const {
  if (rows_ != cols_) throw DomainError("charpoly of non-square matrix");
  int n = rows_;
  const Field& f = *f_;
  FMatrix h = *this;
  for (int k = 0; k + 2 < n; ++k) {
    int piv = -1;
    for (int i = k + 1; i < n; ++i)
      if (!h.at(i, k).is_zero()) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != k + 1) {
      for (int j = 0; j < n; ++j) std::swap(h.mut(k + 1, j), h.mut(piv, j));
      for (int i = 0; i < n; ++i) std::swap(h.mut(i, k + 1), h.mut(i, piv));
    }
    Elem inv = f.inv(h.at(k + 1, k));
    for (int i = k + 2; i < n; ++i) {
      if (h.at(i, k).is_zero()) continue;
      Elem t = f.mul(h.at(i, k), inv);
      for (int j = 0; j < n; ++j) h.mut(i, j) = f.sub(h.at(i, j), f.mul(t, h.at(k + 1, j)));
      for (int r = 0; r < n; ++r) h.mut(r, k + 1) = f.add(h.at(r, k + 1), f.mul(t, h.at(r, i)));
    }
  }
  std::vector<FPoly> p;
  p.emplace_back(f, subdeg_, std::vector<Elem>{f.one()});
  for (int m = 1; m <= n; ++m) {
    FPoly pm = FPoly::x_minus(f, subdeg_, h.at(m - 1, m - 1)).mul(p[size_t(m - 1)]);
    Elem prod = f.one();
    for (int i = m - 1; i >= 1; --i) {
      prod = f.mul(prod, h.at(i, i - 1));
      Elem coef = f.mul(h.at(i - 1, m - 1), prod);
      pm = pm.sub(p[size_t(i - 1)].scaled(coef));
    }
    p.push_back(std::move(pm));
  }
  return p[size_t(n)];
}

// --- invariant factors via Smith reduction of xI - M over F[x] ---

namespace {

struct PolyMat {
  int n;
  std::vector<FPoly> a;
  FPoly& at(int i, int j) { return a[size_t(i) * n + j]; }
};

}  // namespace

InvariantFactors invariant_factors(const FMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("invariant factors of non-square matrix");
  const Field& f = m.field();
  const unsigned sd = m.subdeg();
  int n = m.rows();
  PolyMat a{n, {}};
  a.a.reserve(size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j)
        a.a.push_back(FPoly::x_minus(f, sd, m.at(i, j)));
      else
        a.a.push_back(FPoly(f, sd, {f.neg(m.at(i, j))}));
    }

  for (int t = 0; t < n; ++t) {
    for (;;) {
      // pick the minimal-degree nonzero entry in the trailing block
      int bi = -1, bj = -1, bd = -1;
      for (int i = t; i < n; ++i)
        for (int j = t; j < n; ++j) {
          const FPoly& x = a.at(i, j);
          if (x.is_zero()) continue;
          if (bd < 0 || x.degree() < bd) { bd = x.degree(); bi = i; bj = j; }
        }
      if (bd < 0) { t = n; break; }  // trailing block is zero
      if (bi != t)
        for (int j = 0; j < n; ++j) std::swap(a.at(bi, j), a.at(t, j));
      if (bj != t)
        for (int i = 0; i < n; ++i) std::swap(a.at(i, bj), a.at(i, t));

      bool retry = false;
      for (int i = t + 1; i < n && !retry; ++i) {
        if (a.at(i, t).is_zero()) continue;
        auto [q, r] = a.at(i, t).divmod(a.at(t, t));
        for (int j = t; j < n; ++j)
          a.at(i, j) = a.at(i, j).sub(q.mul(a.at(t, j)));
        if (!r.is_zero()) retry = true;  // smaller-degree entry appeared
      }
      if (retry) continue;
      for (int j = t + 1; j < n && !retry; ++j) {
        if (a.at(t, j).is_zero()) continue;
        auto [q, r] = a.at(t, j).divmod(a.at(t, t));
        for (int i = t; i < n; ++i)
          a.at(i, j) = a.at(i, j).sub(a.at(i, t).mul(q));
        if (!r.is_zero()) retry = true;
      }
      if (retry) continue;

      // pivot must divide the rest of the block
      bool divides_all = true;
      for (int i = t + 1; i < n && divides_all; ++i)
        for (int j = t + 1; j < n && divides_all; ++j) {
          if (a.at(i, j).is_zero()) continue;
          if (!a.at(i, j).divmod(a.at(t, t)).second.is_zero()) {
            for (int jj = t; jj < n; ++jj)
              a.at(t, jj) = a.at(t, jj).add(a.at(i, jj));
            divides_all = false;
          }
        }
      if (!divides_all) continue;
      break;
    }
    if (t >= n) break;
  }

  InvariantFactors out;
  for (int t = 0; t < n; ++t) {
    FPoly d = a.at(t, t).monic();
    if (d.degree() >= 1) out.factors.push_back(std::move(d));
  }
  return out;
}

bool conjugate(const FMatrix& m0, const FMatrix& m1) {
  if (&m0.field() != &m1.field()) throw ContextError("matrices from different fields");
  if (m0.subdeg() != m1.subdeg() || m0.rows() != m1.rows() || m0.cols() != m1.cols())
    throw DomainError("conjugacy test needs matching order and subfield tag");
  return invariant_factors(m0) == invariant_factors(m1);
}

// --- brute-force congruence machinery ---

namespace {

// Visits all matrices over the tagged subfield in a fixed odometer order.
template <typename Fn>
void for_each_matrix(const Field& f, unsigned subdeg, int n, Fn&& fn) {
  std::vector<Elem> elems = f.subfield_elements(subdeg);
  size_t s = elems.size();
  std::vector<size_t> idx(size_t(n) * n, 0);
  FMatrix t(f, subdeg, n, n);
  for (;;) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t.set(i, j, elems[idx[size_t(i) * n + j]]);
    if (fn(t)) return;
    int k = int(idx.size()) - 1;
    while (k >= 0 && idx[size_t(k)] == s - 1) idx[size_t(k--)] = 0;
    if (k < 0) return;
    ++idx[size_t(k)];
  }
}

void check_oracle_cap(const Field& f, unsigned subdeg, int n, const OracleCap& cap) {
  uint64_t s = 1;
  for (unsigned i = 0; i < subdeg; ++i) s *= f.p();
  if (n > cap.max_order || s > cap.max_subfield)
    throw CapError("congruence oracle limited to order " +
                   std::to_string(cap.max_order) + " and subfield size " +
                   std::to_string(cap.max_subfield));
}

}  // namespace

std::optional<FMatrix> congruence_witness(const FMatrix& c0, const FMatrix& c1,
                                          const OracleCap& cap) {
  if (&c0.field() != &c1.field()) throw ContextError("matrices from different fields");
  if (c0.subdeg() != c1.subdeg() || c0.rows() != c1.rows() || c0.cols() != c1.cols() ||
      c0.rows() != c0.cols())
    throw DomainError("congruence oracle needs square matrices of equal order and tag");
  const Field& f = c0.field();
  check_oracle_cap(f, c0.subdeg(), c0.rows(), cap);
  std::optional<FMatrix> found;
  for_each_matrix(f, c0.subdeg(), c0.rows(), [&](const FMatrix& t) {
    if (t.det().is_zero()) return false;
    if (t.mul(c1).mul(t.star()) == c0) {
      found = t;
      return true;
    }
    return false;
  });
  return found;
}

FMatrix canonical_congruence_rep(const FMatrix& c, const OracleCap& cap) {
  const Field& f = c.field();
  if (c.rows() != c.cols()) throw DomainError("canonical rep needs a square matrix");
  check_oracle_cap(f, c.subdeg(), c.rows(), cap);
  std::optional<FMatrix> best;
  for_each_matrix(f, c.subdeg(), c.rows(), [&](const FMatrix& t) {
    if (t.det().is_zero()) return false;
    FMatrix cand = t.mul(c).mul(t.star());
    if (!best || cand.lex_before(*best)) best = cand;
    return false;
  });
  return *best;
}

}  // namespace sesq
