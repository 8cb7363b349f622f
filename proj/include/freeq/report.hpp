#ifndef FREEQ_REPORT_HPP
#define FREEQ_REPORT_HPP

#include <freeq/ext.hpp>
#include <freeq/formality.hpp>
#include <freeq/resolution.hpp>

#include <json.hpp>

#include <string>

namespace freeq {

using Json = nlohmann::json;

// Rationals are written as canonical "p/q" (or "p") strings.
Json to_json(const Rational& q);
Json to_json(const Matrix& m);
std::string element_string(const FreeModule& f, const FreeElement& x);

Json conventions_json();
Json to_json(const ExtTable& table);
Json to_json(const AdamsE2Report& report);
Json to_json(const ProjectiveComplex& c);
Json to_json(const ExactnessReport& r);
Json to_json(const TorsionResult& r, int t_min, int t_max);
Json to_json(const EquivariantDGA& c, const FormalityMap& f, const QuasiIsoReport& r);
Json error_json(const std::exception& e);

// Canonical serialization: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

}  // namespace freeq

#endif
