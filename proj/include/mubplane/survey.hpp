#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mubplane/incidence.hpp"
#include "mubplane/search.hpp"

namespace mubplane {

enum class Consistency { Consistent, Open, Refutes };

std::string to_string(Consistency c);

struct SurveyRow {
    int d = 0;
    bool prime_power = false;
    PlaneStatus plane_status = PlaneStatus::Open;
    std::optional<int> mub_constructed;            // d+1 when construction applies
    std::optional<double> mub_constructed_deviation;
    std::optional<int> mub_searched;               // from search_max_mubs when enabled
    Consistency consistency = Consistency::Open;
};

struct SurveySettings {
    std::uint64_t seed = 0;
    int search_cap = 7;          // largest dimension the search may attempt
    SearchConfig search;         // template; dimension and target are set per row
    double certification_tol = kCertificationTol;
    int threads = 1;
};

struct SurveyProvenance {
    std::uint64_t seed = 0;
    bool search_enabled = false;
    int search_cap = 7;
    SearchConfig search;
    double certification_tol = kCertificationTol;
};

struct SurveyTable {
    std::vector<SurveyRow> rows;
    SurveyProvenance provenance;
};

// The conjecture's consistency value for one dimension. `certified_count`
// is a basis count certified by check_mub_set (construction, or a searched
// set that passed certification); `searched_max` is search evidence only.
// A search negative is never a proof, so a ruled-out plane with searched
// evidence below d+1 reads Consistent, not proven.
Consistency conjecture_consistency(int d, PlaneStatus status,
                                   std::optional<int> certified_count,
                                   std::optional<int> searched_max);

// One row per dimension in [d_min, d_max]: plane existence status, the
// constructed-and-certified MUB count for prime powers, search evidence for
// the rest (when enabled and within the cap), and the consistency value.
SurveyTable survey(int d_min, int d_max, bool enable_search,
                   const SurveySettings& settings = {});

} // namespace mubplane
