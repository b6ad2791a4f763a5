#include "sesq/report.hpp"

namespace sesq {

using nlohmann::json;

const char* extremality_name(Extremality s) {
  switch (s) {
    case Extremality::kMaximal: return "maximal";
    case Extremality::kMinimal: return "minimal";
    default: return "neither";
  }
}

json form_class_json(const Field& f, const FormClass& c) {
  json j;
  j["n"] = c.n;
  j["rad_meet_dim"] = c.rad_meet_dim;
  j["kind"] = c.kind == FormClass::Kind::kNonsingular ? "nonsingular"
                                                      : "singular-reduced";
  if (c.kind == FormClass::Kind::kNonsingular) {
    json factors = json::array();
    for (const FPoly& p : c.invariants.factors) {
      json coeffs = json::array();
      for (const Elem& x : p.coeffs()) coeffs.push_back(f.to_string(x));
      factors.push_back(coeffs);
    }
    j["invariant_factors"] = factors;
    j["canonical_matrix"] = nullptr;
  } else {
    j["invariant_factors"] = nullptr;
    j["canonical_matrix"] = c.canonical->to_string();
  }
  return j;
}

json count_report_json(const Field& f, const CountReport& r) {
  json j;
  j["q"] = r.q;
  j["n"] = r.n;
  j["L"] = r.poly_text;
  json table = json::array();
  for (const CountRow& row : r.table) {
    json jr;
    jr["c"] = f.to_string(row.c);
    jr["formula"] = row.formula ? json(*row.formula) : json(nullptr);
    jr["brute"] = row.brute ? json(*row.brute) : json(nullptr);
    table.push_back(jr);
  }
  j["table"] = table;
  if (r.bound) {
    json b;
    b["m"] = r.bound->m;
    b["rhs"] = r.bound->rhs;
    b["equality_at_zero"] = r.bound->equality_at_zero;
    j["bound"] = b;
  } else {
    j["bound"] = nullptr;
  }
  return j;
}

json curve_report_json(const CurveReport& r) {
  json j;
  j["q"] = r.q;
  j["n"] = r.n;
  j["m"] = r.m;
  j["L"] = r.poly_text;
  j["genus"] = r.curve_genus;
  j["N"] = r.points;
  j["window"] = json::array({r.window.lo, r.window.hi});
  j["status"] = extremality_name(r.status);
  j["verified_by"] = r.verified_brute ? "bruteforce" : "profile";
  return j;
}

json suite_json(const SuiteResult& r) {
  json j;
  j["suite"] = r.suite;
  j["checked"] = r.checked;
  j["failures"] = r.failures;
  j["ok"] = r.ok();
  return j;
}

json hermitian_json(const Field& f, const HermitianInfo& h) {
  json j;
  j["hermitian"] = h.is_hermitian();
  j["zero_form"] = h.zero_form;
  j["lambda"] = h.lambda ? json(f.to_string(*h.lambda)) : json(nullptr);
  return j;
}

json diagonalization_json(const Field& f, const std::optional<Diagonalization>& d) {
  json j;
  if (!d) {
    j["diagonalizable"] = false;
    return j;
  }
  j["diagonalizable"] = true;
  json entries = json::array(), basis = json::array();
  for (const Elem& x : d->entries) entries.push_back(f.to_string(x));
  for (const Elem& x : d->frame_basis) basis.push_back(f.to_string(x));
  j["entries"] = entries;
  j["frame"] = basis;
  return j;
}

}  // namespace sesq
