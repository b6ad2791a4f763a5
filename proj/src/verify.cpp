#include "sesq/verify.hpp"

#include <random>

namespace sesq {

namespace {

// Visits all (q^{2n})^n coefficient vectors, or `samples` seeded random ones.
void for_each_linpoly(const Field& f, const SuiteOptions& opt,
                      const std::function<void(const LinPoly&)>& fn) {
  if (opt.samples > 0) {
    std::mt19937_64 rng(opt.seed);
    for (int t = 0; t < opt.samples; ++t) {
      std::vector<Elem> c;
      for (unsigned i = 0; i < f.n(); ++i) c.push_back(f.from_index(rng() % f.size()));
      fn(LinPoly(f, std::move(c)));
    }
    return;
  }
  uint64_t total = 1;
  for (unsigned i = 0; i < f.n(); ++i) {
    if (total > f.cap() / f.size())
      throw CapError("exhaustive polynomial sweep");
    total *= f.size();
  }
  for (uint64_t li = 0; li < total; ++li) {
    uint64_t rest = li;
    std::vector<Elem> c;
    for (unsigned i = 0; i < f.n(); ++i) {
      c.push_back(f.from_index(rest % f.size()));
      rest /= f.size();
    }
    fn(LinPoly(f, std::move(c)));
  }
}

std::string describe(const LinPoly& l) { return "L=" + l.to_string(); }

}  // namespace

SuiteResult verify_rep(const Field& f, const SuiteOptions& opt) {
  SuiteResult out{"rep", 0, {}};
  for_each_linpoly(f, opt, [&](const LinPoly& l) {
    ++out.checked;
    SesquiForm form{l};
    SesquiForm back = from_pairing(
        f, [&](const Elem& u, const Elem& v) { return form.eval(u, v); });
    if (back.poly() != l)
      out.failures.push_back(describe(l) + ": pairing round trip changed L");
    auto hist = diagonal_histogram(form, opt.workers);
    bool alternating = hist[0] == (long long)f.size();
    if (alternating != l.is_zero())
      out.failures.push_back(describe(l) + ": alternating iff zero violated");
  });
  return out;
}

SuiteResult verify_adjoint(const Field& f, const SuiteOptions& opt) {
  SuiteResult out{"adjoint", 0, {}};
  FMatrix p = perm_p(f);
  auto fq2 = f.subfield_elements(2 * f.e());
  for_each_linpoly(f, opt, [&](const LinPoly& l) {
    ++out.checked;
    LinPoly adj = l.adjoint();
    if (adj.adjoint() != l) {
      out.failures.push_back(describe(l) + ": L** != L");
      return;
    }
    for (const Elem& alpha : fq2)
      if (l.scaled(alpha).adjoint() != adj.scaled(f.frob_q(alpha))) {
        out.failures.push_back(describe(l) + ": (aL)* != a^q L*");
        return;
      }
    if (build_ml(adj) != p.mul(build_ml(l).star())) {
      out.failures.push_back(describe(l) + ": M_{L*} != P M_L^*");
      return;
    }
    // Tr(u L*(v^q)) = Tr(v L(u^q))^q over every pair
    FpMatrix ml = f.linear_map([&](const Elem& u) { return l.eval(f.frob_q(u)); });
    FpMatrix madj = f.linear_map([&](const Elem& u) { return adj.eval(f.frob_q(u)); });
    const unsigned d = f.deg();
    std::vector<uint32_t> lu(d), av(d), prod(d);
    std::vector<uint64_t> scratch(2 * size_t(d));
    FpMatrix tm = f.trace_coord_map(2 * f.e());
    std::vector<uint32_t> t1(2 * f.e()), t2(2 * f.e());
    for (uint64_t iu = 0; iu < f.size(); ++iu) {
      Elem u = f.from_index(iu);
      ml.apply_raw(u.c.data(), lu.data());  // L(u^q)
      for (uint64_t iv = 0; iv < f.size(); ++iv) {
        Elem v = f.from_index(iv);
        madj.apply_raw(v.c.data(), av.data());  // L*(v^q)
        f.raw_mul(u.c.data(), av.data(), prod.data(), scratch.data());
        tm.apply_raw(prod.data(), t1.data());
        Elem lhs = f.from_subfield_coords(t1, 2 * f.e());
        f.raw_mul(v.c.data(), lu.data(), prod.data(), scratch.data());
        tm.apply_raw(prod.data(), t2.data());
        Elem rhs = f.frob_q(f.from_subfield_coords(t2, 2 * f.e()));
        if (lhs != rhs) {
          out.failures.push_back(describe(l) + ": trace identity fails at u=" +
                                 f.to_string(u) + " v=" + f.to_string(v));
          return;
        }
      }
    }
  });
  return out;
}

SuiteResult verify_equiv(const Field& f, const SuiteOptions& opt) {
  SuiteResult out{"equiv", 0, {}};
  BasisFrame frame = BasisFrame::standard(f);
  std::vector<LinPoly> nonsingular;
  std::vector<LinPoly> nonzero;
  for_each_linpoly(f, opt, [&](const LinPoly& l) {
    if (!l.is_zero()) nonzero.push_back(l);
    if (kernel(l).dim == 0) nonsingular.push_back(l);
  });

  std::vector<FormClass> classes;
  std::vector<FMatrix> cmats;
  for (const LinPoly& l : nonsingular) {
    classes.push_back(classify(SesquiForm{l}));
    cmats.push_back(coeff_matrix(SesquiForm{l}, frame));
  }
  for (size_t i = 0; i < nonsingular.size(); ++i)
    for (size_t j = i; j < nonsingular.size(); ++j) {
      ++out.checked;
      bool by_class = classes[i] == classes[j];
      bool by_oracle = congruence_witness(cmats[i], cmats[j]).has_value();
      if (by_class != by_oracle)
        out.failures.push_back(describe(nonsingular[i]) + " vs " +
                               describe(nonsingular[j]) +
                               ": decider and oracle disagree");
    }

  if (f.n() == 2) {
    std::vector<FormClass> gen;
    std::vector<Dim2Class> tab;
    for (const LinPoly& l : nonzero) {
      gen.push_back(classify(SesquiForm{l}));
      tab.push_back(classify_dim2(SesquiForm{l}));
    }
    for (size_t i = 0; i < nonzero.size(); ++i)
      for (size_t j = i + 1; j < nonzero.size(); ++j) {
        ++out.checked;
        if ((gen[i] == gen[j]) != (tab[i] == tab[j]))
          out.failures.push_back(describe(nonzero[i]) + " vs " +
                                 describe(nonzero[j]) +
                                 ": dim-2 table disagrees with classify");
      }
  }
  return out;
}

SuiteResult verify_ssum(const Field& f, const SuiteOptions& opt) {
  SuiteResult out{"ssum", 0, {}};
  for_each_linpoly(f, opt, [&](const LinPoly& l) {
    ++out.checked;
    long long formula = s_formula(l);
    long long brute = s_bruteforce(SesquiForm{l}, opt.workers);
    if (formula != brute)
      out.failures.push_back(describe(l) + ": S " + std::to_string(brute) +
                             " != formula " + std::to_string(formula));
  });
  return out;
}

SuiteResult verify_count(const Field& f, const SuiteOptions& opt) {
  SuiteResult out{"count", 0, {}};
  auto cs = f.subfield_elements(2 * f.e());
  for_each_linpoly(f, opt, [&](const LinPoly& l) {
    ++out.checked;
    CountReport rep = count_report(l, CountMode::kBoth, opt.workers);
    if (!rep.rows_match()) {
      out.failures.push_back(describe(l) + ": formula/brute mismatch");
      return;
    }
    if (rep.total(true) != (long long)f.size()) {
      out.failures.push_back(describe(l) + ": counts do not partition the field");
      return;
    }
    if (hermitian_lambda(SesquiForm{l}).is_hermitian()) {
      for (const Elem& c : cs)
        if (nc_hermitian(l, c) != nc_formula(l, c)) {
          out.failures.push_back(describe(l) + ": hermitian branch mismatch at c=" +
                                 f.to_string(c));
          return;
        }
    }
  });
  return out;
}

SuiteResult verify_hermitian(const Field& f, const SuiteOptions& opt) {
  SuiteResult out{"hermitian", 0, {}};
  auto cs = f.subfield_elements(2 * f.e());
  for_each_linpoly(f, opt, [&](const LinPoly& l) {
    SesquiForm form{l};
    HermitianInfo h = hermitian_lambda(form);
    if (!h.lambda.has_value()) return;
    ++out.checked;
    if (f.pow(*h.lambda, f.q() + 1) != f.one()) {
      out.failures.push_back(describe(l) + ": lambda^{q+1} != 1");
      return;
    }
    for (const Elem& c : cs)
      if (nc_hermitian(l, c) != nc_formula(l, c)) {
        out.failures.push_back(describe(l) + ": three-branch count mismatch");
        return;
      }
    auto diag = diagonalize(form);
    if (!diag) {
      out.failures.push_back(describe(l) + ": hermitian form failed to diagonalize");
      return;
    }
    int r = int(f.n()) - kernel(l).dim;
    if (int(diag->entries.size()) != r) {
      out.failures.push_back(describe(l) + ": wrong diagonal rank");
      return;
    }
    for (const Elem& d : diag->entries)
      if (f.pow(d, f.q() - 1) != *h.lambda) {
        out.failures.push_back(describe(l) + ": d^{q-1} != lambda");
        return;
      }
  });
  return out;
}

SuiteResult verify_bound(const Field& f, const SuiteOptions& opt) {
  SuiteResult out{"bound", 0, {}};
  // all monomials first
  for (int m = 0; m < int(f.n()); ++m)
    for (uint64_t ia = 1; ia < f.size(); ++ia) {
      ++out.checked;
      try {
        (void)bound_check(LinPoly::monomial(f, f.from_index(ia), m), m);
      } catch (const Error& e) {
        out.failures.push_back("monomial a=" + f.to_string(f.from_index(ia)) +
                               " m=" + std::to_string(m) + ": " + e.what());
      }
    }
  // then general polynomials with their exact degree
  for_each_linpoly(f, opt, [&](const LinPoly& l) {
    if (l.is_zero()) return;
    ++out.checked;
    try {
      (void)bound_check(l, l.top_index());
    } catch (const Error& e) {
      out.failures.push_back(describe(l) + ": " + e.what());
    }
  });
  return out;
}

SuiteResult verify_monomial(const Field& f, int m, const SuiteOptions& opt) {
  SuiteResult out{"monomial", 0, {}};
  for (uint64_t ia = 1; ia < f.size(); ++ia) {
    ++out.checked;
    Elem a = f.from_index(ia);
    LinPoly l = LinPoly::monomial(f, a, m);
    try {
      CountReport table = monomial_counts(f, a, m);  // asserts vs the formula
      CountReport brute = count_report(l, CountMode::kBoth, opt.workers);
      for (size_t i = 0; i < table.table.size(); ++i)
        if (*table.table[i].formula != *brute.table[i].brute) {
          out.failures.push_back("a=" + f.to_string(a) +
                                 ": table disagrees with enumeration at c=" +
                                 f.to_string(table.table[i].c));
          break;
        }
      bool extremal = monomial_extremal(f, a, m);
      Extremality status = classify_extremal(ASCurve{l, m});
      if (extremal != (status != Extremality::kNeither))
        out.failures.push_back("a=" + f.to_string(a) +
                               ": extremality criterion mismatch");
    } catch (const Error& e) {
      out.failures.push_back("a=" + f.to_string(a) + ": " + e.what());
    }
  }
  return out;
}

SuiteResult verify_binomial(uint64_t p, unsigned e, const BinomialSuiteOptions& opt) {
  SuiteResult out{"binomial", 0, {}};
  for (unsigned k : opt.ks) {
    BinomialDerived derived;
    try {
      derived = binomial_derive([&] {
        uint64_t q = 1;
        for (unsigned i = 0; i < e; ++i) q *= p;
        return q;
      }(), opt.m, opt.l, k);
    } catch (const Error& err) {
      out.failures.push_back("k=" + std::to_string(k) + ": " + err.what());
      continue;
    }
    Field f(p, e, derived.n, std::nullopt, opt.cap);
    auto deltas = f.subfield_elements(2 * unsigned(opt.m - opt.l) * f.e());
    for (const Elem& delta : deltas) {
      if (delta.is_zero()) continue;
      ++out.checked;
      try {
        BinomialResult res =
            binomial_construct(f, f.generator(), delta, opt.m, opt.l, k);
        BoundReport b = bound_check(res.poly, opt.m);  // throws on violation
        if (!b.equality_at_zero) {
          out.failures.push_back("k=" + std::to_string(k) +
                                 " delta=" + f.to_string(delta) +
                                 ": bound equality missing");
          continue;
        }
        long long dev0 = 0;
        for (const auto& [c, dev] : b.deviations)
          if (c.is_zero()) dev0 = dev;
        if (dev0 != res.predicted_deviation) {
          out.failures.push_back("k=" + std::to_string(k) +
                                 " delta=" + f.to_string(delta) +
                                 ": deviation != prediction");
          continue;
        }
        if (opt.enumerate) {
          long long n0 = nc_bruteforce(res.poly, f.zero(), opt.workers);
          long long base = 1;
          for (unsigned i = 0; i + 1 < derived.n; ++i) base *= (long long)f.q2();
          if (n0 - base != res.predicted_deviation)
            out.failures.push_back("k=" + std::to_string(k) +
                                   " delta=" + f.to_string(delta) +
                                   ": enumerated N_0 disagrees");
        }
      } catch (const HypothesisError&) {
        // a rejected parameter set is a valid outcome, not a failure
      } catch (const Error& err) {
        out.failures.push_back("k=" + std::to_string(k) +
                               " delta=" + f.to_string(delta) + ": " + err.what());
      }
    }
  }
  return out;
}

}  // namespace sesq
