#pragma once

#include <string>

#include <json.hpp>

#include "mubplane/incidence.hpp"
#include "mubplane/mub.hpp"
#include "mubplane/search.hpp"
#include "mubplane/survey.hpp"

namespace mubplane {

// {"p": int, "n": int, "modulus": [int]}
nlohmann::json to_json(const FieldSpec& spec);
FieldSpec field_spec_from_json(const nlohmann::json& j);

// {"points": int, "lines": int, "incidence": [[0|1,...]],
//  "point_labels": [...], "line_labels": [...]}
nlohmann::json to_json(const IncidenceStructure& s);
IncidenceStructure incidence_from_json(const nlohmann::json& j);

// {"v": int, "residues": [int]}
nlohmann::json to_json(const DifferenceSet& ds);
DifferenceSet difference_set_from_json(const nlohmann::json& j);

// {"d": int, "bases": [basis]}, basis = [column], column = [[re, im]];
// canonical column phases are applied on write.
nlohmann::json to_json(const MubSet& s);
MubSet mub_set_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SearchConfig& c);
nlohmann::json to_json(const SearchResult& r);

nlohmann::json to_json(const PlaneCertificate& c);
nlohmann::json to_json(const AffineCertificate& c);
nlohmann::json to_json(const UnbiasednessReport& r);
nlohmann::json to_json(const MeasurementBudget& b);
nlohmann::json to_json(const PlaneExistenceVerdict& v);

nlohmann::json to_json(const SurveyTable& t);
// Header: d,prime_power,plane_status,mub_constructed,mub_searched,consistency
std::string to_csv(const SurveyTable& t);

} // namespace mubplane
