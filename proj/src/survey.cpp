#include "mubplane/survey.hpp"

namespace mubplane {

std::string to_string(Consistency c) {
    switch (c) {
    case Consistency::Consistent:
        return "Consistent";
    case Consistency::Open:
        return "Open";
    case Consistency::Refutes:
        return "Refutes";
    }
    return "Open";
}

Consistency conjecture_consistency(int d, PlaneStatus status,
                                   std::optional<int> certified_count,
                                   std::optional<int> searched_max) {
    const bool exists = (status == PlaneStatus::ExistsPrimePower);
    const bool ruled_out = (status == PlaneStatus::RuledOutBruckRyser ||
                            status == PlaneStatus::RuledOutByComputation);
    const bool complete_certified = certified_count && *certified_count >= d + 1;

    if (ruled_out && complete_certified)
        return Consistency::Refutes;
    if (exists && complete_certified)
        return Consistency::Consistent;
    if (ruled_out && searched_max && *searched_max < d + 1)
        return Consistency::Consistent;
    return Consistency::Open;
}

SurveyTable survey(int d_min, int d_max, bool enable_search,
                   const SurveySettings& settings) {
    if (d_min < 2 || d_min > d_max)
        throw UsageError("survey requires 2 <= d_min <= d_max");
    if (static_cast<std::uint64_t>(d_max) > kDefaultMubDimensionCap)
        throw UsageError("survey range exceeds the MUB construction cap");

    SurveyTable table;
    table.provenance = SurveyProvenance{settings.seed, enable_search, settings.search_cap,
                                        settings.search, settings.certification_tol};

    for (int d = d_min; d <= d_max; ++d) {
        SurveyRow row;
        row.d = d;
        const auto verdict = plane_existence_status(static_cast<std::uint64_t>(d));
        row.plane_status = verdict.status;
        row.prime_power = (verdict.status == PlaneStatus::ExistsPrimePower);

        std::optional<int> certified;
        if (row.prime_power) {
            const MubSet set = construct_mub_set(static_cast<std::uint64_t>(d));
            const auto report = check_mub_set(set, settings.certification_tol);
            row.mub_constructed = static_cast<int>(set.bases.size());
            row.mub_constructed_deviation = report.overall_max_deviation;
            if (report.pass)
                certified = row.mub_constructed;
        } else if (enable_search && d <= settings.search_cap) {
            SearchConfig config = settings.search;
            config.seed = settings.seed + static_cast<std::uint64_t>(d);
            std::vector<SearchResult> runs;
            const int found = search_max_mubs(d, config, settings.threads, &runs);
            row.mub_searched = found;
            // A searched set only certifies when it itself passes the
            // metric check at the certification tolerance.
            if (found >= d + 1 && !runs.empty()) {
                const auto& final_run = runs[static_cast<std::size_t>(found - 2)];
                const auto report = check_mub_set(final_run.best_set,
                                                  settings.certification_tol);
                if (report.pass)
                    certified = found;
            }
        }
        row.consistency = conjecture_consistency(d, row.plane_status, certified,
                                                 row.mub_searched);
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace mubplane
