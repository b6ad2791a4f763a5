#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "sesq/fmatrix.hpp"

using namespace sesq;

namespace {

Elem rand_elem(const Field& f, std::mt19937_64& rng) {
  return f.from_index(rng() % f.size());
}

FMatrix rand_matrix(const Field& f, unsigned subdeg, int n, std::mt19937_64& rng) {
  auto elems = f.subfield_elements(subdeg);
  FMatrix m(f, subdeg, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.set(i, j, elems[rng() % elems.size()]);
  return m;
}

FMatrix rand_nonsingular(const Field& f, unsigned subdeg, int n, std::mt19937_64& rng) {
  for (;;) {
    FMatrix m = rand_matrix(f, subdeg, n, rng);
    if (!m.det().is_zero()) return m;
  }
}

// Cofactor-expansion determinant of xI - M; independent charpoly oracle.
FPoly charpoly_brute(const FMatrix& m) {
  const Field& f = m.field();
  int n = m.rows();
  std::vector<FPoly> a;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j)
        a.push_back(FPoly::x_minus(f, m.subdeg(), m.at(i, j)));
      else
        a.push_back(FPoly(f, m.subdeg(), {f.neg(m.at(i, j))}));
    }
  std::function<FPoly(std::vector<int>, std::vector<int>)> det =
      [&](std::vector<int> rows, std::vector<int> cols) -> FPoly {
    if (rows.size() == 1) return a[size_t(rows[0]) * n + cols[0]];
    FPoly acc(f, m.subdeg());
    Elem sign = f.one();
    for (size_t k = 0; k < cols.size(); ++k) {
      std::vector<int> sub_rows(rows.begin() + 1, rows.end());
      std::vector<int> sub_cols;
      for (size_t j = 0; j < cols.size(); ++j)
        if (j != k) sub_cols.push_back(cols[j]);
      FPoly term = a[size_t(rows[0]) * n + cols[k]].mul(det(sub_rows, sub_cols));
      acc = acc.add(term.scaled(sign));
      sign = f.neg(sign);
    }
    return acc;
  };
  std::vector<int> idx((size_t(n)));
  for (int i = 0; i < n; ++i) idx[size_t(i)] = i;
  return det(idx, idx);
}

}  // namespace

TEST_CASE("polynomial arithmetic basics") {
  Field f(3, 1, 1);
  unsigned sd = f.deg();
  FPoly x = FPoly(f, sd, {f.zero(), f.one()});
  FPoly p = x.mul(x).add(FPoly(f, sd, {f.one()}));  // x^2 + 1
  CHECK(p.degree() == 2);
  auto [q, r] = p.divmod(x);
  CHECK(q == x);
  CHECK(r == FPoly(f, sd, {f.one()}));
  CHECK(gcd(p, x).degree() == 0);
  CHECK(p.eval(f.zero()) == f.one());
  // (x+1)(x+2) over F_9: gcd with (x+1) is x+1
  FPoly a = FPoly::x_minus(f, sd, f.neg(f.one()));
  FPoly b = FPoly::x_minus(f, sd, f.neg(f.from_int(2)));
  CHECK(gcd(a.mul(b), a) == a.monic());
}

TEST_CASE("inverse, rank, det basics") {
  Field f(2, 1, 2);
  FMatrix id = FMatrix::identity(f, 2, 3);
  CHECK(*id.inverse() == id);
  FMatrix z(f, 2, 3, 3);
  CHECK(z.rank() == 0);
  CHECK(z.det().is_zero());
  CHECK(!z.inverse().has_value());
  CHECK(id.rank() == 3);
}

TEST_CASE("M_L inverse matches the closed 2x2 formula, exhaustively") {
  // over F_{q^4} with q=2: M_L = [[b,a],[a^{q^2},b^{q^2}]], nonsingular iff
  // N(a) != N(b); inverse = [[-b^{q^2},a],[a^{q^2},-b]] / (N(a)-N(b))
  Field f(2, 1, 2);
  const unsigned amb = f.deg();
  for (uint64_t ia = 0; ia < f.size(); ++ia)
    for (uint64_t ib = 0; ib < f.size(); ++ib) {
      Elem a = f.from_index(ia), b = f.from_index(ib);
      Elem na = f.rel_norm(a, 4, 2), nb = f.rel_norm(b, 4, 2);
      FMatrix m = FMatrix::from_entries(
          f, amb, 2, 2, {b, a, f.frob_q2(a), f.frob_q2(b)});
      if (na == nb) {
        CHECK(m.det().is_zero());
        continue;
      }
      Elem d = f.inv(f.sub(na, nb));
      FMatrix want = FMatrix::from_entries(
          f, amb, 2, 2,
          {f.neg(f.frob_q2(b)), a, f.frob_q2(a), f.neg(b)});
      CHECK(*m.inverse() == want.scaled(d));
    }
}

TEST_CASE("star operation") {
  Field f(2, 1, 2);
  std::mt19937_64 rng(7);
  FMatrix id = FMatrix::identity(f, 2, 2);
  CHECK(id.star() == id);

  // entries in F_q: star is the plain transpose
  auto fq = f.subfield_elements(f.e());
  FMatrix m(f, f.e(), 2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m.set(i, j, fq[(i * 2 + j + 1) % fq.size()]);
  CHECK(m.star() == m.transpose());

  // (AB)* = B* A*
  for (int t = 0; t < 25; ++t) {
    FMatrix a = rand_matrix(f, 2, 3, rng), b = rand_matrix(f, 2, 3, rng);
    CHECK(a.mul(b).star() == b.star().mul(a.star()));
  }

  // star is an involution exactly on F_{q^2} entries
  for (uint64_t i = 0; i < f.size(); ++i) {
    Elem u = f.from_index(i);
    FMatrix one_by_one = FMatrix::from_entries(f, f.deg(), 1, 1, {u});
    bool fixed = one_by_one.star().star() == one_by_one;
    CHECK(fixed == f.in_subfield(u, 2 * f.e()));
  }
}

TEST_CASE("invariant factor examples") {
  Field f(2, 1, 2);
  auto x_minus_one = FPoly::x_minus(f, 2, f.one());

  FMatrix id = FMatrix::identity(f, 2, 2);
  auto inv_id = invariant_factors(id);
  REQUIRE(inv_id.factors.size() == 2);
  CHECK(inv_id.factors[0] == x_minus_one);
  CHECK(inv_id.factors[1] == x_minus_one);

  Elem c = f.subfield_primitive(2);  // generator of F_4^*
  FMatrix scal = FMatrix::identity(f, 2, 2).scaled(c);
  auto inv_scal = invariant_factors(scal);
  auto x_minus_c = FPoly::x_minus(f, 2, c);
  REQUIRE(inv_scal.factors.size() == 2);
  CHECK(inv_scal.factors[0] == x_minus_c);
  CHECK(inv_scal.factors[1] == x_minus_c);

  // nontrivial Jordan-type block: single factor (x-c)^2
  FMatrix jord = FMatrix::from_entries(f, 2, 2, 2, {c, f.zero(), f.one(), c});
  auto inv_j = invariant_factors(jord);
  REQUIRE(inv_j.factors.size() == 1);
  CHECK(inv_j.factors[0] == x_minus_c.mul(x_minus_c));
}

TEST_CASE("conjugacy test: reflexivity and similarity invariance") {
  Field f(2, 1, 2);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    FMatrix m = rand_matrix(f, 2, 3, rng);
    CHECK(conjugate(m, m));
    FMatrix s = rand_nonsingular(f, 2, 3, rng);
    CHECK(conjugate(m, s.mul(m).mul(*s.inverse())));
  }
}

TEST_CASE("invariant factors decide conjugacy: exhaustive 2x2 over F_4") {
  Field f(2, 1, 2);
  auto elems = f.subfield_elements(2);
  std::vector<FMatrix> mats;
  for (size_t i0 = 0; i0 < 4; ++i0)
    for (size_t i1 = 0; i1 < 4; ++i1)
      for (size_t i2 = 0; i2 < 4; ++i2)
        for (size_t i3 = 0; i3 < 4; ++i3)
          mats.push_back(FMatrix::from_entries(
              f, 2, 2, 2, {elems[i0], elems[i1], elems[i2], elems[i3]}));

  auto key = [&](const FMatrix& m) {
    uint64_t k = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) k = k * 16 + f.index_of(m.at(i, j));
    return k;
  };

  // brute-force conjugacy orbits
  std::map<uint64_t, int> orbit_of;
  int orbit_count = 0;
  for (const auto& m : mats) {
    if (orbit_of.count(key(m))) continue;
    int id = orbit_count++;
    for (const auto& s : mats) {
      if (s.det().is_zero()) continue;
      orbit_of[key(s.mul(m).mul(*s.inverse()))] = id;
    }
    orbit_of[key(m)] = id;
  }

  // the invariant-factor certificate matches orbit equality on every pair
  std::vector<std::string> certs;
  certs.reserve(mats.size());
  for (const auto& m : mats) {
    std::string c;
    for (const auto& p : invariant_factors(m).factors) c += p.to_string() + "|";
    certs.push_back(c);
  }
  for (size_t i = 0; i < mats.size(); ++i)
    for (size_t j = i; j < mats.size(); ++j) {
      bool same_orbit = orbit_of[key(mats[i])] == orbit_of[key(mats[j])];
      bool same_cert = certs[i] == certs[j];
      if (same_orbit != same_cert) {
        CAPTURE(mats[i].to_string());
        CAPTURE(mats[j].to_string());
        REQUIRE(same_orbit == same_cert);
      }
    }
}

TEST_CASE("invariant factors are stable under base extension") {
  Field f(2, 1, 2);
  std::mt19937_64 rng(23);
  for (int t = 0; t < 20; ++t) {
    FMatrix m = rand_matrix(f, 2, 2, rng);
    auto over_sub = invariant_factors(m);
    auto over_amb = invariant_factors(m.retag(f.deg()));
    REQUIRE(over_sub.factors.size() == over_amb.factors.size());
    for (size_t i = 0; i < over_sub.factors.size(); ++i)
      CHECK(over_sub.factors[i] == over_amb.factors[i]);
  }
}

TEST_CASE("Wall's lemma at 2x2 over F_4") {
  // A* conjugate to A^{-1} in GL exactly when A = C* C^{-1} for some C in GL
  Field f(2, 1, 2);
  auto elems = f.subfield_elements(2);
  std::vector<FMatrix> gl;
  for (size_t i0 = 0; i0 < 4; ++i0)
    for (size_t i1 = 0; i1 < 4; ++i1)
      for (size_t i2 = 0; i2 < 4; ++i2)
        for (size_t i3 = 0; i3 < 4; ++i3) {
          FMatrix m = FMatrix::from_entries(
              f, 2, 2, 2, {elems[i0], elems[i1], elems[i2], elems[i3]});
          if (!m.det().is_zero()) gl.push_back(m);
        }
  CHECK(gl.size() == 180);

  auto key = [&](const FMatrix& m) {
    uint64_t k = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) k = k * 16 + f.index_of(m.at(i, j));
    return k;
  };
  std::set<uint64_t> image;  // { C* C^{-1} }
  for (const auto& c : gl) image.insert(key(c.star().mul(*c.inverse())));
  std::set<uint64_t> passing;  // { A : A* ~ A^{-1} }
  for (const auto& a : gl)
    if (conjugate(a.star(), *a.inverse())) passing.insert(key(a));
  CHECK(image == passing);
}

TEST_CASE("charpoly agrees with two independent routes") {
  std::mt19937_64 rng(31);
  Field f(2, 1, 2);
  for (int n = 1; n <= 4; ++n)
    for (int t = 0; t < 10; ++t) {
      FMatrix m = rand_matrix(f, 2, n, rng);
      FPoly cp = m.charpoly();
      CHECK(cp.is_monic());
      CHECK(cp.degree() == n);
      CHECK(cp == charpoly_brute(m));
      // product of all Smith diagonal entries = charpoly; nonconstant ones
      // are the invariant factors, constants are 1 after normalization
      FPoly prod(f, 2, {f.one()});
      for (const auto& d : invariant_factors(m).factors) prod = prod.mul(d);
      CHECK(prod == cp);
      // the x^{n-1} coefficient is minus the trace
      Elem tr = f.zero();
      for (int i = 0; i < n; ++i) tr = f.add(tr, m.at(i, i));
      CHECK(cp.coeff(n - 1) == f.neg(tr));
    }
}

TEST_CASE("charpoly of a companion matrix") {
  Field f(3, 1, 1);
  unsigned sd = f.deg();
  // companion of x^2 - 2x - 1 over F_9's prime field values
  Elem two = f.from_int(2), one = f.one();
  FMatrix m(f, sd, 2, 2);
  m.set(0, 1, one);
  m.set(0, 0, f.zero());
  m.set(1, 0, one);
  m.set(1, 1, two);
  // charpoly = x^2 - 2x - 1... computed by brute cofactor oracle instead
  CHECK(m.charpoly() == charpoly_brute(m));
}

TEST_CASE("congruence oracle finds witnesses and respects caps") {
  Field f(2, 1, 2);
  std::mt19937_64 rng(41);
  for (int t = 0; t < 10; ++t) {
    FMatrix c1 = rand_matrix(f, 2, 2, rng);
    FMatrix t0 = rand_nonsingular(f, 2, 2, rng);
    FMatrix c0 = t0.mul(c1).mul(t0.star());
    auto w = congruence_witness(c0, c1);
    REQUIRE(w.has_value());
    CHECK(w->mul(c1).mul(w->star()) == c0);
  }
  // congruence preserves rank, so distinct ranks have no witness
  FMatrix z(f, 2, 2, 2);
  CHECK(!congruence_witness(FMatrix::identity(f, 2, 2), z).has_value());
  // cap
  FMatrix big = FMatrix::identity(f, 2, 4);
  CHECK_THROWS_AS(congruence_witness(big, big), CapError);
}

TEST_CASE("canonical congruence representative is orbit-invariant") {
  Field f(2, 1, 2);
  std::mt19937_64 rng(43);
  FMatrix c = rand_matrix(f, 2, 2, rng);
  FMatrix canon = canonical_congruence_rep(c);
  for (int t = 0; t < 5; ++t) {
    FMatrix s = rand_nonsingular(f, 2, 2, rng);
    CHECK(canonical_congruence_rep(s.mul(c).mul(s.star())) == canon);
  }
}

TEST_CASE("matrix text form round trips") {
  Field f(2, 1, 2);
  std::mt19937_64 rng(47);
  FMatrix m = rand_matrix(f, 2, 3, rng);
  CHECK(FMatrix::parse(f, 2, m.to_string()) == m);
  CHECK_THROWS_AS(FMatrix::parse(f, 2, "0000,0000;0000"), ParseError);
}

TEST_CASE("subfield tag is enforced") {
  Field f(2, 1, 2);
  FMatrix m(f, 2, 2, 2);
  CHECK_THROWS_AS(m.set(0, 0, f.generator()), DomainError);  // ambient entry
  FMatrix amb(f, 4, 2, 2);
  CHECK_THROWS_AS((void)m.mul(amb), DomainError);  // mixed tags
}
