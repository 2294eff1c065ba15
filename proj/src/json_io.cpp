#include "mubplane/json_io.hpp"

#include <sstream>

namespace mubplane {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw DomainError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

} // namespace

json to_json(const FieldSpec& spec) {
    return json{{"p", spec.p}, {"n", spec.n}, {"modulus", spec.modulus}};
}

FieldSpec field_spec_from_json(const json& j) {
    FieldSpec spec;
    spec.p = require(j, "p").get<std::uint64_t>();
    spec.n = require(j, "n").get<unsigned>();
    spec.modulus = require(j, "modulus").get<std::vector<std::uint32_t>>();
    if (!is_prime(spec.p))
        throw DomainError("field spec characteristic is not prime");
    if (spec.modulus.size() != spec.n + 1 || spec.modulus.back() != 1)
        throw DomainError("field spec modulus must be monic of the stated degree");
    for (auto c : spec.modulus)
        if (c >= spec.p)
            throw DomainError("field spec modulus coefficient out of range");
    if (!is_irreducible(spec.modulus, spec.p))
        throw DomainError("field spec modulus is reducible");
    return spec;
}

json to_json(const IncidenceStructure& s) {
    json rows = json::array();
    for (int p = 0; p < s.point_count; ++p) {
        json row = json::array();
        for (int l = 0; l < s.line_count; ++l)
            row.push_back(s.incident(p, l) ? 1 : 0);
        rows.push_back(std::move(row));
    }
    return json{{"points", s.point_count},
                {"lines", s.line_count},
                {"incidence", std::move(rows)},
                {"point_labels", s.point_labels},
                {"line_labels", s.line_labels}};
}

IncidenceStructure incidence_from_json(const json& j) {
    const int points = require(j, "points").get<int>();
    const int lines = require(j, "lines").get<int>();
    if (points < 0 || lines < 0)
        throw DomainError("incidence counts must be nonnegative");
    IncidenceStructure s = IncidenceStructure::zeros(points, lines);
    const json& rows = require(j, "incidence");
    if (!rows.is_array() || static_cast<int>(rows.size()) != points)
        throw DomainError("incidence table must hold one row per point");
    for (int p = 0; p < points; ++p) {
        const json& row = rows.at(static_cast<std::size_t>(p));
        if (!row.is_array() || static_cast<int>(row.size()) != lines)
            throw DomainError("incidence row length must equal the line count");
        for (int l = 0; l < lines; ++l) {
            const int bit = row.at(static_cast<std::size_t>(l)).get<int>();
            if (bit != 0 && bit != 1)
                throw DomainError("incidence entries must be 0 or 1");
            s.set(p, l, bit == 1);
        }
    }
    if (j.contains("point_labels"))
        s.point_labels = j.at("point_labels").get<std::vector<std::string>>();
    if (j.contains("line_labels"))
        s.line_labels = j.at("line_labels").get<std::vector<std::string>>();
    if (!s.point_labels.empty() && static_cast<int>(s.point_labels.size()) != points)
        throw DomainError("point label count mismatch");
    if (!s.line_labels.empty() && static_cast<int>(s.line_labels.size()) != lines)
        throw DomainError("line label count mismatch");
    return s;
}

json to_json(const DifferenceSet& ds) {
    return json{{"v", ds.modulus}, {"residues", ds.residues}};
}

DifferenceSet difference_set_from_json(const json& j) {
    DifferenceSet ds;
    ds.modulus = require(j, "v").get<int>();
    ds.residues = require(j, "residues").get<std::vector<int>>();
    if (ds.modulus < 1)
        throw DomainError("difference set modulus must be positive");
    for (int r : ds.residues)
        if (r < 0 || r >= ds.modulus)
            throw DomainError("difference set residue out of range");
    return ds;
}

json to_json(const MubSet& s) {
    const MubSet canon = canonicalize_phases(s);
    json bases = json::array();
    for (const Basis& b : canon.bases) {
        json basis = json::array();
        for (Eigen::Index col = 0; col < b.cols(); ++col) {
            json column = json::array();
            for (Eigen::Index row = 0; row < b.rows(); ++row)
                column.push_back(json::array({b(row, col).real(), b(row, col).imag()}));
            basis.push_back(std::move(column));
        }
        bases.push_back(std::move(basis));
    }
    return json{{"d", s.dimension}, {"bases", std::move(bases)}};
}

MubSet mub_set_from_json(const json& j) {
    MubSet s;
    s.dimension = require(j, "d").get<int>();
    if (s.dimension < 1)
        throw DomainError("mub set dimension must be positive");
    const json& bases = require(j, "bases");
    if (!bases.is_array())
        throw DomainError("\"bases\" must be an array");
    for (const json& basis : bases) {
        if (!basis.is_array() || static_cast<int>(basis.size()) != s.dimension)
            throw DomainError("each basis must hold d columns");
        Basis b(s.dimension, s.dimension);
        for (int col = 0; col < s.dimension; ++col) {
            const json& column = basis.at(static_cast<std::size_t>(col));
            if (!column.is_array() || static_cast<int>(column.size()) != s.dimension)
                throw DomainError("each column must hold d amplitudes");
            for (int row = 0; row < s.dimension; ++row) {
                const json& amp = column.at(static_cast<std::size_t>(row));
                if (!amp.is_array() || amp.size() != 2)
                    throw DomainError("amplitudes are [re, im] pairs");
                b(row, col) = std::complex<double>(amp.at(0).get<double>(),
                                                   amp.at(1).get<double>());
            }
        }
        s.bases.push_back(std::move(b));
    }
    return s;
}

json to_json(const SearchConfig& c) {
    return json{{"dimension", c.dimension},
                {"target_count", c.target_count},
                {"restarts", c.restarts},
                {"max_iterations", c.max_iterations},
                {"initial_step", c.initial_step},
                {"step_decay", c.step_decay},
                {"convergence_threshold", c.convergence_threshold},
                {"stall_threshold", c.stall_threshold},
                {"seed", c.seed}};
}

json to_json(const SearchResult& r) {
    return json{{"best_cost", r.best_cost},
                {"best_set", to_json(r.best_set)},
                {"converged", r.converged},
                {"iterations_used", r.iterations_used},
                {"per_restart_costs", r.per_restart_costs},
                {"seed_used", r.seed_used}};
}

namespace {

json axioms_to_json(const std::vector<AxiomResult>& axioms) {
    json arr = json::array();
    for (const auto& a : axioms) {
        json entry{{"axiom", a.axiom}, {"pass", a.pass}};
        if (!a.pass) {
            entry["witness"] = a.witness;
            if (a.a >= 0)
                entry["a"] = a.a;
            if (a.b >= 0)
                entry["b"] = a.b;
        }
        arr.push_back(std::move(entry));
    }
    return arr;
}

} // namespace

json to_json(const PlaneCertificate& c) {
    return json{{"pass", c.pass},
                {"order", c.order},
                {"points_per_line", c.points_per_line},
                {"lines_per_point", c.lines_per_point},
                {"axioms_checked", axioms_to_json(c.axioms_checked)}};
}

json to_json(const AffineCertificate& c) {
    return json{{"pass", c.pass},
                {"order", c.order},
                {"points_per_line", c.points_per_line},
                {"lines_per_point", c.lines_per_point},
                {"parallel_classes", c.parallel_classes},
                {"axioms_checked", axioms_to_json(c.axioms_checked)}};
}

json to_json(const UnbiasednessReport& r) {
    json pairs = json::array();
    for (const auto& p : r.pair_results)
        pairs.push_back(json{{"first", p.first},
                             {"second", p.second},
                             {"max_deviation", p.max_deviation}});
    return json{{"pair_results", std::move(pairs)},
                {"orthonormality_deviation", r.orthonormality_deviation},
                {"overall_max_deviation", r.overall_max_deviation},
                {"pass", r.pass}};
}

json to_json(const MeasurementBudget& b) {
    return json{{"dimension", b.dimension},
                {"density_matrix_parameters", b.density_matrix_parameters},
                {"outcomes_per_measurement", b.outcomes_per_measurement},
                {"measurements_needed", b.measurements_needed}};
}

json to_json(const PlaneExistenceVerdict& v) {
    return json{{"order", v.order}, {"status", to_string(v.status)}, {"detail", v.detail}};
}

json to_json(const SurveyTable& t) {
    json rows = json::array();
    for (const auto& row : t.rows) {
        json r{{"d", row.d},
               {"prime_power", row.prime_power},
               {"plane_status", to_string(row.plane_status)},
               {"mub_constructed",
                row.mub_constructed ? json(*row.mub_constructed) : json(nullptr)},
               {"mub_searched", row.mub_searched ? json(*row.mub_searched) : json(nullptr)},
               {"consistency", to_string(row.consistency)}};
        if (row.mub_constructed_deviation)
            r["mub_constructed_deviation"] = *row.mub_constructed_deviation;
        rows.push_back(std::move(r));
    }
    json provenance{{"seed", t.provenance.seed},
                    {"search_enabled", t.provenance.search_enabled},
                    {"search_cap", t.provenance.search_cap},
                    {"search_config", to_json(t.provenance.search)},
                    {"certification_tol", t.provenance.certification_tol}};
    return json{{"rows", std::move(rows)}, {"provenance", std::move(provenance)}};
}

std::string to_csv(const SurveyTable& t) {
    std::ostringstream out;
    out << "d,prime_power,plane_status,mub_constructed,mub_searched,consistency\n";
    for (const auto& row : t.rows) {
        out << row.d << ',' << (row.prime_power ? "true" : "false") << ','
            << to_string(row.plane_status) << ',';
        if (row.mub_constructed)
            out << *row.mub_constructed;
        out << ',';
        if (row.mub_searched)
            out << *row.mub_searched;
        out << ',' << to_string(row.consistency) << '\n';
    }
    return out.str();
}

} // namespace mubplane
