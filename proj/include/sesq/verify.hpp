#pragma once

#include "sesq/curves.hpp"

namespace sesq {

struct SuiteResult {
  std::string suite;
  long long checked = 0;
  std::vector<std::string> failures;  // counterexample dumps
  bool ok() const { return failures.empty(); }
};

struct SuiteOptions {
  int samples = 0;  // 0 = exhaustive over all L (guarded by the cap)
  uint64_t seed = 12345;
  unsigned workers = 1;
};

/// Polynomial representation: pairing round trips and alternating iff zero.
SuiteResult verify_rep(const Field& f, const SuiteOptions& opt = {});
/// Adjoint laws: L** = L, (aL)* = a^q L*, M_{L*} = P M_L^*, trace identity.
SuiteResult verify_adjoint(const Field& f, const SuiteOptions& opt = {});
/// Equivalence decider against the brute-force congruence oracle, and the
/// complete n=2 table against the generic classifier.
SuiteResult verify_equiv(const Field& f, const SuiteOptions& opt = {});
/// Character sums: brute force (both expressions) against the closed formula.
SuiteResult verify_ssum(const Field& f, const SuiteOptions& opt = {});
/// Zero counts: formula vs enumeration for every c, totals, Hermitian branch.
SuiteResult verify_count(const Field& f, const SuiteOptions& opt = {});
/// Hermitian forms: lambda laws, the three-branch count, diagonalization.
SuiteResult verify_hermitian(const Field& f, const SuiteOptions& opt = {});
/// The deviation bound, its equality criterion, and the equality sign.
SuiteResult verify_bound(const Field& f, const SuiteOptions& opt = {});
/// Monomial table against full enumeration plus the extremality criterion.
SuiteResult verify_monomial(const Field& f, int m, const SuiteOptions& opt = {});

struct BinomialSuiteOptions {
  int m = 1, l = 0;
  std::vector<unsigned> ks = {1, 2};
  bool enumerate = false;  // confirm N_0 by full enumeration when in cap
  unsigned workers = 1;
  uint64_t cap = Field::default_cap();
};

/// Binomial construction: hypothesis screening over all delta, profile and
/// bound verification, optional enumeration confirmation.
SuiteResult verify_binomial(uint64_t p, unsigned e, const BinomialSuiteOptions& opt);

}  // namespace sesq
