#include "sesq/field.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace sesq {

namespace {

bool is_prime_u64(uint64_t m) {
  if (m < 2) return false;
  if (m % 2 == 0) return m == 2;
  for (uint64_t d = 3; d * d <= m; d += 2)
    if (m % d == 0) return false;
  return true;
}

uint64_t checked_pow_u64(uint64_t base, unsigned exp, const char* what) {
  uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (r > (uint64_t(1) << 62) / base) throw DomainError(std::string(what) + " overflows");
    r *= base;
  }
  return r;
}

// --- dense polynomial helpers over F_p (used only for modulus work) ---

using Pol = std::vector<uint32_t>;  // low-degree-first; not normalized

int pol_deg(const Pol& a) {
  for (int i = int(a.size()) - 1; i >= 0; --i)
    if (a[i]) return i;
  return -1;
}

void pol_trim(Pol& a) { a.resize(size_t(pol_deg(a) + 1)); }

// a mod f, f monic of degree d.
void pol_mod(Pol& a, const Pol& f, uint64_t p) {
  int d = pol_deg(f);
  for (int i = pol_deg(a); i >= d; --i) {
    uint64_t c = a[i];
    if (!c) continue;
    a[i] = 0;
    for (int j = 0; j < d; ++j)
      a[i - d + j] = uint32_t((a[i - d + j] + c * (p - f[j])) % p);
  }
  pol_trim(a);
}

Pol pol_mulmod(const Pol& a, const Pol& b, const Pol& f, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Pol r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = uint32_t((r[i + j] + uint64_t(a[i]) * b[j]) % p);
  }
  pol_mod(r, f, p);
  return r;
}

// g^p mod f via the p-power coefficient spread (valid over F_p).
Pol pol_frob(const Pol& g, const Pol& f, uint64_t p) {
  if (g.empty()) return {};
  Pol r(size_t(pol_deg(g)) * p + 1, 0);
  for (size_t i = 0; i < g.size(); ++i) r[i * p] = g[i];
  pol_mod(r, f, p);
  return r;
}

uint64_t mod_inverse(uint64_t a, uint64_t p) {
  // Fermat; p prime.
  uint64_t r = 1, b = a % p, k = p - 2;
  while (k) {
    if (k & 1) r = r * b % p;
    b = b * b % p;
    k >>= 1;
  }
  return r;
}

Pol pol_gcd(Pol a, Pol b, uint64_t p) {
  while (pol_deg(b) >= 0) {
    uint64_t lead_inv = mod_inverse(b[size_t(pol_deg(b))], p);
    Pol bm = b;
    for (auto& x : bm) x = uint32_t(uint64_t(x) * lead_inv % p);
    bm.resize(size_t(pol_deg(bm) + 1));
    Pol r = a;
    pol_mod(r, bm, p);
    a = b;
    b = r;
  }
  return a;
}

std::vector<unsigned> prime_factors_of(unsigned m) {
  std::vector<unsigned> fs;
  for (unsigned d = 2; d * d <= m; ++d)
    while (m % d == 0) {
      if (fs.empty() || fs.back() != d) fs.push_back(d);
      m /= d;
    }
  if (m > 1) fs.push_back(m);
  return fs;
}

// Rabin irreducibility test for monic f of degree d over F_p.
bool pol_irreducible(const Pol& f, uint64_t p) {
  int d = pol_deg(f);
  if (d < 1) return false;
  if (d == 1) return true;
  if (f[0] == 0) return false;  // divisible by x
  Pol x = {0, 1};
  Pol t = x;
  std::vector<unsigned> ls = prime_factors_of(unsigned(d));
  std::vector<int> checkpoints;
  for (unsigned l : ls) checkpoints.push_back(d / int(l));
  for (int k = 1; k <= d; ++k) {
    t = pol_frob(t, f, p);  // t = x^{p^k} mod f
    if (std::find(checkpoints.begin(), checkpoints.end(), k) != checkpoints.end()) {
      Pol diff = t;
      diff.resize(std::max(diff.size(), size_t(2)), 0);
      diff[1] = uint32_t((diff[1] + p - 1) % p);
      pol_trim(diff);
      Pol g = pol_gcd(f, diff, p);
      if (pol_deg(g) != 0) return false;
    }
  }
  // x^{p^d} == x mod f
  Pol diff = t;
  diff.resize(std::max(diff.size(), size_t(2)), 0);
  diff[1] = uint32_t((diff[1] + p - 1) % p);
  pol_trim(diff);
  return pol_deg(diff) < 0;
}

std::vector<uint64_t> distinct_prime_factors_u64(uint64_t m) {
  std::vector<uint64_t> fs;
  for (uint64_t d = 2; d * d <= m; d += (d == 2 ? 1 : 2))
    while (m % d == 0) {
      if (fs.empty() || fs.back() != d) fs.push_back(d);
      m /= d;
    }
  if (m > 1) fs.push_back(m);
  return fs;
}

}  // namespace

// --- Elem ---

bool Elem::is_zero() const {
  for (uint32_t x : c)
    if (x) return false;
  return true;
}

bool Elem::operator==(const Elem& o) const {
  if (field != o.field)
    throw ContextError("comparing elements of different fields");
  return c == o.c;
}

bool lex_less(const Elem& a, const Elem& b) {
  if (a.field != b.field) throw ContextError("comparing elements of different fields");
  return a.c < b.c;  // vector< is lexicographic, coordinate 0 first
}

// --- FpMatrix ---

FpMatrix FpMatrix::identity(uint32_t p, int n) {
  FpMatrix m(p, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

std::vector<uint32_t> FpMatrix::apply(const std::vector<uint32_t>& x) const {
  std::vector<uint32_t> y(size_t(rows_), 0);
  apply_raw(x.data(), y.data());
  return y;
}

void FpMatrix::apply_raw(const uint32_t* x, uint32_t* y) const {
  for (int i = 0; i < rows_; ++i) {
    uint64_t acc = 0;
    const uint32_t* row = &a_[size_t(i) * cols_];
    for (int j = 0; j < cols_; ++j) acc += uint64_t(row[j]) * x[j];
    y[i] = uint32_t(acc % p_);
  }
}

FpMatrix FpMatrix::mul(const FpMatrix& o) const {
  FpMatrix r(p_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      uint64_t v = at(i, k);
      if (!v) continue;
      for (int j = 0; j < o.cols_; ++j)
        r.at(i, j) = uint32_t((r.at(i, j) + v * o.at(k, j)) % p_);
    }
  return r;
}

std::optional<FpMatrix> FpMatrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  int n = rows_;
  FpMatrix a = *this, inv = identity(p_, n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (a.at(i, col)) { piv = i; break; }
    if (piv < 0) return std::nullopt;
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a.at(piv, j), a.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    uint64_t d = mod_inverse(a.at(col, col), p_);
    for (int j = 0; j < n; ++j) {
      a.at(col, j) = uint32_t(a.at(col, j) * d % p_);
      inv.at(col, j) = uint32_t(inv.at(col, j) * d % p_);
    }
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      uint64_t t = a.at(i, col);
      if (!t) continue;
      for (int j = 0; j < n; ++j) {
        a.at(i, j) = uint32_t((a.at(i, j) + (p_ - t) * a.at(col, j)) % p_);
        inv.at(i, j) = uint32_t((inv.at(i, j) + (p_ - t) * inv.at(col, j)) % p_);
      }
    }
  }
  return inv;
}

int FpMatrix::rank() const {
  FpMatrix a = *this;
  int r = 0;
  for (int col = 0; col < cols_ && r < rows_; ++col) {
    int piv = -1;
    for (int i = r; i < rows_; ++i)
      if (a.at(i, col)) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < cols_; ++j) std::swap(a.at(piv, j), a.at(r, j));
    uint64_t d = mod_inverse(a.at(r, col), p_);
    for (int j = 0; j < cols_; ++j) a.at(r, j) = uint32_t(a.at(r, j) * d % p_);
    for (int i = 0; i < rows_; ++i) {
      if (i == r) continue;
      uint64_t t = a.at(i, col);
      if (!t) continue;
      for (int j = 0; j < cols_; ++j)
        a.at(i, j) = uint32_t((a.at(i, j) + (p_ - t) * a.at(r, j)) % p_);
    }
    ++r;
  }
  return r;
}

// --- Field ---

uint64_t Field::default_cap() {
  if (const char* env = std::getenv("SESQ_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultCap;
}

Field::Field(uint64_t p, unsigned e, unsigned n,
             std::optional<std::vector<uint32_t>> modulus, uint64_t cap)
    : p_(p), e_(e), n_(n), cap_(cap) {
  if (!is_prime_u64(p_)) throw DomainError("non-prime characteristic " + std::to_string(p_));
  if (p_ >= (uint64_t(1) << 15)) throw DomainError("characteristic too large");
  if (e_ == 0 || n_ == 0) throw DomainError("e and n must be positive");
  deg_ = 2 * e_ * n_;
  q_ = checked_pow_u64(p_, e_, "q = p^e");
  q2_ = checked_pow_u64(p_, 2 * e_, "q^2");
  size_ = checked_pow_u64(p_, deg_, "field size p^(2ne)");
  if (size_ > cap_)
    throw CapError("field size " + std::to_string(size_) + " exceeds cap " +
                   std::to_string(cap_));
  if (modulus) {
    modulus_ = std::move(*modulus);
    if (modulus_.size() != size_t(deg_) + 1 || modulus_[deg_] != 1)
      throw DomainError("modulus degree mismatch: need monic of degree " +
                        std::to_string(deg_));
    for (auto& c : modulus_)
      if (c >= p_) throw DomainError("modulus coefficient out of range");
    if (!pol_irreducible(modulus_, p_)) throw DomainError("reducible modulus");
  } else {
    // Lexicographically smallest monic irreducible, coefficients compared
    // low-degree-first. c_0 = 0 is never irreducible for deg >= 2.
    Pol f(size_t(deg_) + 1, 0);
    f[deg_] = 1;
    f[0] = 1;
    for (;;) {
      if (pol_irreducible(f, p_)) break;
      int i = int(deg_) - 1;
      while (i >= 0 && f[i] == p_ - 1) f[i--] = 0;
      if (i < 0) throw DomainError("no irreducible modulus found");  // unreachable
      ++f[i];
    }
    modulus_ = f;
  }
  init();
}

void Field::init() {
  neg_mod_.resize(deg_);
  for (unsigned j = 0; j < deg_; ++j) neg_mod_[j] = uint32_t((p_ - modulus_[j]) % p_);

  // Frobenius matrices for u -> u^{p^k}, all k < deg.
  frob_.clear();
  frob_.push_back(FpMatrix::identity(uint32_t(p_), int(deg_)));
  {
    // column i of frob_[1] is (x^p)^i
    std::vector<uint32_t> xc(deg_, 0);
    xc[1] = 1;
    Elem xp = pow(from_coeffs(xc), p_);
    FpMatrix m{uint32_t(p_), int(deg_), int(deg_)};
    Elem col = one();
    for (unsigned i = 0; i < deg_; ++i) {
      for (unsigned r = 0; r < deg_; ++r) m.at(int(r), int(i)) = col.c[r];
      col = mul(col, xp);
    }
    frob_.push_back(m);
  }
  for (unsigned k = 2; k < deg_; ++k) frob_.push_back(frob_[1].mul(frob_[k - 1]));

  order_primes_ = distinct_prime_factors_u64(size_ - 1);

  // Smallest element in coordinate-lex order with full multiplicative order.
  {
    std::vector<uint32_t> c(deg_, 0);
    for (;;) {
      // odometer: last coordinate fastest => coordinate-lex ascending
      int i = int(deg_) - 1;
      while (i >= 0 && c[i] == p_ - 1) c[i--] = 0;
      if (i < 0) throw DomainError("no generator found");  // unreachable
      ++c[i];
      Elem u = from_coeffs(c);
      bool full = true;
      for (uint64_t r : order_primes_)
        if (pow(u, (size_ - 1) / r) == one()) { full = false; break; }
      if (full) { generator_ = u; break; }
    }
  }

  // Subfield data for every divisor of deg.
  for (unsigned k = 1; k <= deg_; ++k) {
    if (deg_ % k) continue;
    SubfieldInfo info;
    info.sdeg = k;
    uint64_t sub_size = 1;
    for (unsigned i = 0; i < k; ++i) sub_size *= p_;
    info.primitive = pow(generator_, (size_ - 1) / (sub_size - 1));
    // S: deg x k matrix of coords of zeta^j
    FpMatrix S{uint32_t(p_), int(deg_), int(k)};
    Elem z = one();
    for (unsigned j = 0; j < k; ++j) {
      for (unsigned r = 0; r < deg_; ++r) S.at(int(r), int(j)) = z.c[r];
      z = mul(z, info.primitive);
    }
    info.coord_embed = S;
    // Row-select k independent rows, invert, scatter into a k x deg extractor.
    FpMatrix work = S;
    std::vector<int> sel;
    std::vector<int> used(deg_, 0);
    for (unsigned col = 0; col < k; ++col) {
      int piv = -1;
      for (unsigned i = 0; i < deg_; ++i)
        if (!used[i] && work.at(int(i), int(col))) { piv = int(i); break; }
      if (piv < 0) throw DomainError("subfield basis degenerate");  // unreachable
      used[piv] = 1;
      sel.push_back(piv);
      uint64_t d = mod_inverse(work.at(piv, int(col)), p_);
      for (unsigned j = 0; j < k; ++j)
        work.at(piv, int(j)) = uint32_t(work.at(piv, int(j)) * d % p_);
      for (unsigned i = 0; i < deg_; ++i) {
        if (int(i) == piv) continue;
        uint64_t t = work.at(int(i), int(col));
        if (!t) continue;
        for (unsigned j = 0; j < k; ++j)
          work.at(int(i), int(j)) = uint32_t(
              (work.at(int(i), int(j)) + (p_ - t) * work.at(piv, int(j))) % p_);
      }
    }
    FpMatrix Ssel{uint32_t(p_), int(k), int(k)};
    for (unsigned i = 0; i < k; ++i)
      for (unsigned j = 0; j < k; ++j) Ssel.at(int(i), int(j)) = S.at(sel[i], int(j));
    auto inv = Ssel.inverse();
    if (!inv) throw DomainError("subfield coordinate solve failed");  // unreachable
    FpMatrix E{uint32_t(p_), int(k), int(deg_)};
    for (unsigned i = 0; i < k; ++i)
      for (unsigned j = 0; j < k; ++j) E.at(int(i), sel[j]) = inv->at(int(i), int(j));
    info.coord_extractor = E;
    subfields_.push_back(std::move(info));
  }
}

const Field::SubfieldInfo& Field::subfield_info(unsigned sdeg) const {
  for (const auto& s : subfields_)
    if (s.sdeg == sdeg) return s;
  throw DomainError("degree " + std::to_string(sdeg) + " does not divide " +
                    std::to_string(deg_));
}

Elem Field::zero() const { return Elem{this, std::vector<uint32_t>(deg_, 0)}; }

Elem Field::one() const {
  Elem u = zero();
  u.c[0] = 1;
  return u;
}

Elem Field::from_int(uint64_t k) const {
  Elem u = zero();
  u.c[0] = uint32_t(k % p_);
  return u;
}

Elem Field::from_coeffs(std::vector<uint32_t> c) const {
  if (c.size() != deg_) throw DomainError("coefficient vector length mismatch");
  for (auto& x : c)
    if (x >= p_) throw DomainError("coefficient out of range");
  return Elem{this, std::move(c)};
}

uint64_t Field::index_of(const Elem& u) const {
  check(u);
  uint64_t idx = 0;
  for (int i = int(deg_) - 1; i >= 0; --i) idx = idx * p_ + u.c[size_t(i)];
  return idx;
}

Elem Field::from_index(uint64_t idx) const {
  Elem u = zero();
  for (unsigned i = 0; i < deg_; ++i) {
    u.c[i] = uint32_t(idx % p_);
    idx /= p_;
  }
  if (idx) throw DomainError("element index out of range");
  return u;
}

void Field::check(const Elem& u) const {
  if (u.field != this) throw ContextError("element belongs to a different field");
}

void Field::require_cap(uint64_t count, const std::string& what) const {
  if (count > cap_)
    throw CapError(what + " needs " + std::to_string(count) +
                   " elements, cap is " + std::to_string(cap_));
}

Elem Field::add(const Elem& a, const Elem& b) const {
  check(a);
  check(b);
  Elem r = a;
  for (unsigned i = 0; i < deg_; ++i) {
    uint32_t s = r.c[i] + b.c[i];
    r.c[i] = s >= p_ ? s - uint32_t(p_) : s;
  }
  return r;
}

Elem Field::sub(const Elem& a, const Elem& b) const {
  check(a);
  check(b);
  Elem r = a;
  for (unsigned i = 0; i < deg_; ++i) {
    uint32_t s = r.c[i] + uint32_t(p_) - b.c[i];
    r.c[i] = s >= p_ ? s - uint32_t(p_) : s;
  }
  return r;
}

Elem Field::neg(const Elem& a) const { return sub(zero(), a); }

void Field::raw_mul(const uint32_t* a, const uint32_t* b, uint32_t* out,
                    uint64_t* scratch) const {
  const unsigned d = deg_;
  for (unsigned i = 0; i < 2 * d; ++i) scratch[i] = 0;
  for (unsigned i = 0; i < d; ++i) {
    if (!a[i]) continue;
    uint64_t ai = a[i];
    for (unsigned j = 0; j < d; ++j) scratch[i + j] += ai * b[j];
  }
  for (unsigned i = 2 * d - 2; i >= d; --i) {
    uint64_t c = scratch[i] % p_;
    if (c)
      for (unsigned j = 0; j < d; ++j) scratch[i - d + j] += c * neg_mod_[j];
    if (i == d) break;
  }
  for (unsigned j = 0; j < d; ++j) out[j] = uint32_t(scratch[j] % p_);
}

Elem Field::mul(const Elem& a, const Elem& b) const {
  check(a);
  check(b);
  Elem r = zero();
  if (deg_ == 1) {
    r.c[0] = uint32_t(uint64_t(a.c[0]) * b.c[0] % p_);
    return r;
  }
  std::vector<uint64_t> scratch(2 * size_t(deg_));
  raw_mul(a.c.data(), b.c.data(), r.c.data(), scratch.data());
  return r;
}

Elem Field::pow(const Elem& a, uint64_t k) const {
  check(a);
  if (k == 0) return one();
  Elem base = a, r = one();
  while (k) {
    if (k & 1) r = mul(r, base);
    k >>= 1;
    if (k) base = mul(base, base);
  }
  return r;
}

Elem Field::inv(const Elem& a) const {
  check(a);
  if (a.is_zero()) throw DomainError("division by zero");
  return pow(a, size_ - 2);
}

Elem Field::div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

Elem Field::frobenius(const Elem& u, long k) const {
  check(u);
  long d = long(deg_);
  long kk = ((k % d) + d) % d;
  Elem r = zero();
  frob_[size_t(kk)].apply_raw(u.c.data(), r.c.data());
  return r;
}

bool Field::in_subfield(const Elem& u, unsigned sdeg) const {
  check(u);
  if (deg_ % sdeg) return false;
  return frobenius(u, long(sdeg)) == u;
}

Elem Field::rel_trace(const Elem& u, unsigned from_deg, unsigned to_deg) const {
  check(u);
  if (from_deg == 0 || to_deg == 0 || from_deg % to_deg || deg_ % from_deg)
    throw DomainError("non-divisible degrees in relative trace");
  if (!in_subfield(u, from_deg))
    throw DomainError("element not in the stated subfield");
  unsigned steps = from_deg / to_deg;
  Elem acc = zero(), t = u;
  for (unsigned i = 0; i < steps; ++i) {
    acc = add(acc, t);
    t = frobenius(t, long(to_deg));
  }
  if (!in_subfield(acc, to_deg))
    throw Error("relative trace left the target subfield");  // indicates a bug
  return acc;
}

Elem Field::rel_norm(const Elem& u, unsigned from_deg, unsigned to_deg) const {
  check(u);
  if (from_deg == 0 || to_deg == 0 || from_deg % to_deg || deg_ % from_deg)
    throw DomainError("non-divisible degrees in relative norm");
  if (!in_subfield(u, from_deg))
    throw DomainError("element not in the stated subfield");
  unsigned steps = from_deg / to_deg;
  Elem acc = one(), t = u;
  for (unsigned i = 0; i < steps; ++i) {
    acc = mul(acc, t);
    t = frobenius(t, long(to_deg));
  }
  if (!in_subfield(acc, to_deg))
    throw Error("relative norm left the target subfield");  // indicates a bug
  return acc;
}

uint32_t Field::abs_trace(const Elem& u, unsigned from_deg) const {
  Elem t = rel_trace(u, from_deg, 1);
  return t.c[0];
}

Elem Field::subfield_primitive(unsigned sdeg) const {
  return subfield_info(sdeg).primitive;
}

std::vector<Elem> Field::subfield_elements(unsigned sdeg) const {
  const auto& info = subfield_info(sdeg);
  uint64_t sz = 1;
  for (unsigned i = 0; i < sdeg; ++i) sz *= p_;
  require_cap(sz, "subfield enumeration");
  std::vector<Elem> out;
  out.reserve(size_t(sz));
  out.push_back(zero());
  Elem t = one();
  for (uint64_t i = 0; i + 1 < sz; ++i) {
    out.push_back(t);
    t = mul(t, info.primitive);
  }
  return out;
}

FpMatrix Field::linear_map(const std::function<Elem(const Elem&)>& fn) const {
  FpMatrix m{uint32_t(p_), int(deg_), int(deg_)};
  for (unsigned i = 0; i < deg_; ++i) {
    Elem b = zero();
    b.c[i] = 1;
    Elem img = fn(b);
    check(img);
    for (unsigned r = 0; r < deg_; ++r) m.at(int(r), int(i)) = img.c[r];
  }
  return m;
}

FpMatrix Field::trace_coord_map(unsigned sdeg) const {
  const auto& info = subfield_info(sdeg);
  FpMatrix m{uint32_t(p_), int(sdeg), int(deg_)};
  std::vector<uint32_t> tr(deg_);
  for (unsigned i = 0; i < deg_; ++i) {
    Elem b = zero();
    b.c[i] = 1;
    Elem t = rel_trace(b, deg_, sdeg);
    info.coord_extractor.apply_raw(t.c.data(), tr.data());
    for (unsigned r = 0; r < sdeg; ++r) m.at(int(r), int(i)) = tr[r];
  }
  return m;
}

std::vector<uint32_t> Field::subfield_coords(const Elem& u, unsigned sdeg) const {
  check(u);
  if (!in_subfield(u, sdeg)) throw DomainError("element not in the stated subfield");
  return subfield_info(sdeg).coord_extractor.apply(u.c);
}

Elem Field::from_subfield_coords(const std::vector<uint32_t>& x, unsigned sdeg) const {
  const auto& info = subfield_info(sdeg);
  if (x.size() != sdeg) throw DomainError("subfield coordinate length mismatch");
  Elem r = zero();
  info.coord_embed.apply_raw(x.data(), r.c.data());
  return r;
}

uint64_t Field::subfield_index(const Elem& u, unsigned sdeg) const {
  auto x = subfield_coords(u, sdeg);
  uint64_t idx = 0;
  for (int i = int(sdeg) - 1; i >= 0; --i) idx = idx * p_ + x[size_t(i)];
  return idx;
}

Elem Field::from_subfield_index(uint64_t idx, unsigned sdeg) const {
  std::vector<uint32_t> x(sdeg);
  for (unsigned i = 0; i < sdeg; ++i) {
    x[i] = uint32_t(idx % p_);
    idx /= p_;
  }
  if (idx) throw DomainError("subfield index out of range");
  return from_subfield_coords(x, sdeg);
}

// --- text I/O ---

namespace {
char hex_digit(uint32_t v) { return v < 10 ? char('0' + v) : char('a' + v - 10); }
int hex_value(char ch) {
  if (ch >= '0' && ch <= '9') return ch - '0';
  if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
  if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
  return -1;
}
}  // namespace

std::string Field::to_string(const Elem& u) const {
  check(u);
  std::string s;
  if (p_ <= 16) {
    s.reserve(deg_);
    for (unsigned i = 0; i < deg_; ++i) s.push_back(hex_digit(u.c[i]));
  } else {
    for (unsigned i = 0; i < deg_; ++i) {
      if (i) s.push_back('.');
      s += std::to_string(u.c[i]);
    }
  }
  return s;
}

Elem Field::parse_elem(const std::string& s) const {
  std::vector<uint32_t> c;
  if (s.find('.') != std::string::npos) {
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, '.')) {
      try {
        c.push_back(uint32_t(std::stoul(tok)));
      } catch (const std::exception&) {
        throw ParseError("bad coordinate '" + tok + "'");
      }
    }
  } else {
    if (p_ > 16) throw ParseError("hex element form requires p <= 16");
    for (char ch : s) {
      int v = hex_value(ch);
      if (v < 0) throw ParseError(std::string("bad hex digit '") + ch + "'");
      c.push_back(uint32_t(v));
    }
  }
  if (c.size() != deg_)
    throw ParseError("element needs " + std::to_string(deg_) + " coordinates, got " +
                     std::to_string(c.size()));
  for (uint32_t v : c)
    if (v >= p_) throw ParseError("coordinate out of range for p=" + std::to_string(p_));
  return Elem{this, std::move(c)};
}

namespace {
struct SpecParts {
  uint64_t p;
  unsigned e, n;
  std::optional<std::vector<uint32_t>> mods;
};

SpecParts parse_spec(const std::string& spec) {
  SpecParts out;
  std::string head = spec, tail;
  auto colon = spec.find(':');
  if (colon != std::string::npos) {
    head = spec.substr(0, colon);
    tail = spec.substr(colon + 1);
  }
  unsigned long long vals[3];
  size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    size_t caret = i < 2 ? head.find('^', pos) : head.size();
    if (caret == std::string::npos) throw ParseError("field spec must be p^e^n[:mods]");
    std::string tok = head.substr(pos, caret - pos);
    try {
      vals[i] = std::stoull(tok);
    } catch (const std::exception&) {
      throw ParseError("bad field spec component '" + tok + "'");
    }
    pos = caret + 1;
  }
  out.p = vals[0];
  out.e = unsigned(vals[1]);
  out.n = unsigned(vals[2]);
  if (!tail.empty()) {
    std::vector<uint32_t> mods;
    std::stringstream ss(tail);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        mods.push_back(uint32_t(std::stoul(tok)));
      } catch (const std::exception&) {
        throw ParseError("bad modulus coefficient '" + tok + "'");
      }
    }
    out.mods = std::move(mods);
  }
  return out;
}
}  // namespace

Field::Field(const std::string& spec, uint64_t cap)
    : Field(parse_spec(spec).p, parse_spec(spec).e, parse_spec(spec).n,
            parse_spec(spec).mods, cap) {}

std::string Field::spec_string() const {
  std::string s = std::to_string(p_) + "^" + std::to_string(e_) + "^" + std::to_string(n_) + ":";
  for (unsigned i = 0; i <= deg_; ++i) {
    if (i) s.push_back(',');
    s += std::to_string(modulus_[i]);
  }
  return s;
}

// --- CoordFrame ---

CoordFrame::CoordFrame(const Field& f, std::vector<Elem> basis)
    : f_(&f), basis_(std::move(basis)) {
  const unsigned n = f.n(), d = f.deg(), s = 2 * f.e();
  if (basis_.size() != n) throw DomainError("basis must have n elements");
  Elem zeta = f.subfield_primitive(s);
  FpMatrix phi{uint32_t(f.p()), int(d), int(d)};
  for (unsigned i = 0; i < n; ++i) {
    f.check(basis_[i]);
    Elem bz = basis_[i];
    for (unsigned j = 0; j < s; ++j) {
      for (unsigned r = 0; r < d; ++r) phi.at(int(r), int(i * s + j)) = bz.c[r];
      bz = f.mul(bz, zeta);
    }
  }
  auto inv = phi.inverse();
  if (!inv) throw DomainError("dependent basis");
  phi_inv_ = std::move(*inv);
}

std::vector<Elem> CoordFrame::coords(const Elem& u) const {
  f_->check(u);
  const unsigned n = f_->n(), s = 2 * f_->e();
  std::vector<uint32_t> x = phi_inv_.apply(u.c);
  std::vector<Elem> out;
  out.reserve(n);
  for (unsigned i = 0; i < n; ++i) {
    std::vector<uint32_t> part(x.begin() + i * s, x.begin() + (i + 1) * s);
    out.push_back(f_->from_subfield_coords(part, s));
  }
  return out;
}

Elem CoordFrame::from_coords(const std::vector<Elem>& c) const {
  const unsigned n = f_->n();
  if (c.size() != n) throw DomainError("coordinate vector length mismatch");
  Elem acc = f_->zero();
  for (unsigned i = 0; i < n; ++i) {
    f_->check(c[i]);
    if (!f_->in_subfield(c[i], 2 * f_->e()))
      throw DomainError("coordinate not in F_{q^2}");
    acc = f_->add(acc, f_->mul(c[i], basis_[i]));
  }
  return acc;
}

std::vector<Elem> default_basis(const Field& f) {
  std::vector<Elem> b;
  b.reserve(f.n());
  Elem t = f.one();
  for (unsigned i = 0; i < f.n(); ++i) {
    b.push_back(t);
    t = f.mul(t, f.generator());
  }
  return b;
}

std::vector<Elem> unit_subgroup(const Field& f) {
  Elem zeta = f.subfield_primitive(2 * f.e());
  Elem h = f.pow(zeta, f.q() - 1);  // order q+1
  std::vector<Elem> u;
  u.reserve(size_t(f.q()) + 1);
  Elem t = f.one();
  for (uint64_t i = 0; i <= f.q(); ++i) {
    u.push_back(t);
    t = f.mul(t, h);
  }
  return u;
}

}  // namespace sesq
