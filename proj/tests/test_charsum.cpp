#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "sesq/charsum.hpp"

using namespace sesq;

TEST_CASE("cyclotomic integer canonical form and arithmetic") {
  // p = 3: zeta^2 reduces to -1 - zeta
  CycloInt z2 = CycloInt::root_power(3, 2);
  CHECK(z2.counts() == std::vector<long long>{-1, -1, 0});
  CHECK(!z2.is_integer());

  // 1 + zeta + zeta^2 = 0
  CycloInt sum(3);
  for (uint64_t k = 0; k < 3; ++k) sum = sum.add(CycloInt::root_power(3, k));
  CHECK(sum.is_integer());
  CHECK(sum.int_value() == 0);

  // multiplication adds exponents
  for (uint64_t a = 0; a < 5; ++a)
    for (uint64_t b = 0; b < 5; ++b)
      CHECK(CycloInt::root_power(5, a).mul(CycloInt::root_power(5, b)) ==
            CycloInt::root_power(5, a + b));

  CHECK(CycloInt::integer(2, 7).scaled(-3).int_value() == -21);
  CHECK_THROWS_AS(CycloInt::root_power(3, 1).int_value(), DomainError);
}

TEST_CASE("psi: unit values, additivity, full sum zero") {
  for (auto spec : {"2^1^2", "3^1^1", "2^2^1"}) {
    Field f(spec);
    CHECK(psi(f, f.zero()) == CycloInt::integer(uint32_t(f.p()), 1));
    auto fq = f.subfield_elements(f.e());
    CycloInt total(uint32_t(f.p()));
    for (const Elem& w : fq) total = total.add(psi(f, w));
    CHECK(total.int_value() == 0);
    for (const Elem& w : fq)
      for (const Elem& w2 : fq)
        CHECK(psi(f, f.add(w, w2)) == psi(f, w).mul(psi(f, w2)));
  }
  Field f(2, 1, 2);
  CHECK_THROWS_AS(psi(f, f.generator()), DomainError);  // outside F_q
}

TEST_CASE("sum of psi(t^{q+1}) over F_{q^2} equals -q") {
  for (auto spec : {"2^1^1", "3^1^1", "2^2^1", "2^1^2", "5^1^1"}) {
    Field f(spec);
    CycloInt total(uint32_t(f.p()));
    for (const Elem& t : f.subfield_elements(2 * f.e()))
      total = total.add(psi(f, f.pow(t, f.q() + 1)));
    CHECK(total.int_value() == -(long long)f.q());
  }
}

TEST_CASE("rho: values in F_q, zero cases, square homogeneity") {
  std::mt19937_64 rng(29);
  for (auto spec : {"3^1^1", "2^1^2"}) {
    Field f(spec);
    SesquiForm zero{LinPoly(f)};
    auto fq = f.subfield_elements(f.e());
    for (uint64_t i = 0; i < f.size(); ++i) {
      Elem u = f.from_index(i);
      CHECK(rho(zero, u).is_zero());
    }
    for (int t = 0; t < 5; ++t) {
      std::vector<Elem> coeffs;
      for (unsigned i = 0; i < f.n(); ++i) coeffs.push_back(f.from_index(rng() % f.size()));
      SesquiForm form{LinPoly(f, coeffs)};
      CHECK(rho(form, f.zero()).is_zero());
      for (uint64_t i = 0; i < f.size(); ++i) {
        Elem u = f.from_index(i);
        Elem r = rho(form, u);
        CHECK(f.in_subfield(r, f.e()));
        for (const Elem& a : fq)
          CHECK(rho(form, f.mul(a, u)) == f.mul(f.mul(a, a), r));
      }
    }
  }
}

TEST_CASE("S: zero form gives q^{2n}") {
  for (auto spec : {"2^1^2", "3^1^1", "2^1^3"}) {
    Field f(spec);
    long long want = 1;
    for (unsigned i = 0; i < 2 * f.n(); ++i) want *= (long long)f.q();
    CHECK(s_formula(LinPoly(f)) == want);
    CHECK(s_bruteforce(SesquiForm{LinPoly(f)}) == want);
  }
}

TEST_CASE("S formula equals brute force, exhaustively at (2,1) and (3,1)") {
  for (auto spec : {"2^1^1", "3^1^1"}) {
    Field f(spec);
    for (uint64_t ia = 0; ia < f.size(); ++ia) {
      LinPoly l(f, {f.from_index(ia)});
      CHECK(s_formula(l) == s_bruteforce(SesquiForm{l}));
    }
  }
}

TEST_CASE("S formula equals brute force on random forms at (2,2), (2,3)") {
  std::mt19937_64 rng(31);
  for (auto spec : {"2^1^2", "2^1^3"}) {
    Field f(spec);
    for (int t = 0; t < 40; ++t) {
      std::vector<Elem> coeffs;
      for (unsigned i = 0; i < f.n(); ++i) coeffs.push_back(f.from_index(rng() % f.size()));
      LinPoly l(f, coeffs);
      CHECK(s_formula(l) == s_bruteforce(SesquiForm{l}));
    }
  }
}

TEST_CASE("hermitian forms with trivial kernel: both parity branches") {
  // q odd, lambda != -1: r = n and S = (-1)^n q^n
  Field f9(3, 1, 1);
  for (uint64_t ia = 1; ia < f9.size(); ++ia) {
    Elem a = f9.from_index(ia);
    LinPoly l(f9, {a});
    HermitianInfo h = hermitian_lambda(SesquiForm{l});
    REQUIRE(h.lambda.has_value());
    if (*h.lambda == f9.neg(f9.one())) {
      // L* + L = 0: r = 0 and S = q^{2n}
      CHECK(s_formula(l) == 9);
    } else {
      CHECK(s_formula(l) == -3);  // (-1)^1 q^1
    }
    CHECK(s_formula(l) == s_bruteforce(SesquiForm{l}));
  }
  // char 2: lambda = a, and -1 = 1, so L* + L = 0 exactly when lambda = 1
  Field f4(2, 1, 1);
  for (uint64_t ia = 1; ia < f4.size(); ++ia) {
    Elem a = f4.from_index(ia);
    LinPoly l(f4, {a});
    HermitianInfo h = hermitian_lambda(SesquiForm{l});
    REQUIRE(h.lambda.has_value());
    CHECK(*h.lambda == a);  // a^{q-1} = a at q = 2
    long long want = (a == f4.one()) ? 4 : -2;
    CHECK(s_formula(l) == want);
    CHECK(s_bruteforce(SesquiForm{l}) == want);
  }
}

TEST_CASE("S depends on L only through r") {
  Field f(2, 1, 2);
  std::map<int, std::set<long long>> by_r;
  for (uint64_t i0 = 0; i0 < f.size(); ++i0)
    for (uint64_t i1 = 0; i1 < f.size(); ++i1) {
      LinPoly l(f, {f.from_index(i0), f.from_index(i1)});
      int r = int(f.n()) - kernel(l.adjoint().add(l)).dim;
      by_r[r].insert(s_bruteforce(SesquiForm{l}));
    }
  for (const auto& [r, vals] : by_r) CHECK(vals.size() == 1);
}

TEST_CASE("S is never zero") {
  Field f(2, 1, 2);
  for (uint64_t i0 = 0; i0 < f.size(); ++i0)
    for (uint64_t i1 = 0; i1 < f.size(); ++i1) {
      LinPoly l(f, {f.from_index(i0), f.from_index(i1)});
      CHECK(s_formula(l) != 0);
    }
}
