#pragma once

#include <json.hpp>

#include "sesq/verify.hpp"

namespace sesq {

nlohmann::json form_class_json(const Field& f, const FormClass& c);
nlohmann::json count_report_json(const Field& f, const CountReport& r);
nlohmann::json curve_report_json(const CurveReport& r);
nlohmann::json suite_json(const SuiteResult& r);
nlohmann::json hermitian_json(const Field& f, const HermitianInfo& h);
nlohmann::json diagonalization_json(const Field& f,
                                    const std::optional<Diagonalization>& d);

const char* extremality_name(Extremality s);

}  // namespace sesq
