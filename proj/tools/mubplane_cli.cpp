#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mubplane/json_io.hpp"

namespace {

using namespace mubplane;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

struct GlobalOptions {
    std::uint64_t seed = 0;
    double tol = kCertificationTol;
    std::string format = "json";
    std::string out;
};

void emit(const GlobalOptions& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text << '\n';
        return;
    }
    std::ofstream f(g.out);
    if (!f)
        throw UsageError("cannot open output file: " + g.out);
    f << text << '\n';
}

void emit_json(const GlobalOptions& g, const json& j) {
    if (g.format == "csv")
        throw UsageError("csv output is only available for the survey command");
    emit(g, j.dump(2));
}

json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw UsageError("cannot open input file: " + path);
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed JSON: ") + e.what());
    }
    return j;
}

FieldSpec field_for_order(std::uint64_t q) {
    const auto pp = classify_order(q);
    if (!pp)
        throw NotPrimePowerError("order " + std::to_string(q) + " is not a prime power");
    return build_field(pp->prime, pp->exponent);
}

struct SearchKnobs {
    SearchConfig config;
    int threads = 1;
    std::string trace_path;

    void attach(CLI::App* cmd, bool with_target) {
        cmd->add_option("--restarts", config.restarts, "independent seeded restarts");
        cmd->add_option("--max-iterations", config.max_iterations,
                        "iteration cap per restart");
        cmd->add_option("--initial-step", config.initial_step,
                        "first trial step of the line search");
        cmd->add_option("--step-decay", config.step_decay,
                        "per-iteration multiplier on the trial step, in (0,1]");
        cmd->add_option("--convergence", config.convergence_threshold,
                        "cost below which a run counts as converged");
        cmd->add_option("--stall", config.stall_threshold,
                        "relative cost drop per stall window below which a run stops");
        cmd->add_option("--threads", threads, "restarts run in parallel on this many threads");
        if (with_target)
            cmd->add_option("--trace", trace_path,
                            "write per-iteration cost CSV (iteration,restart,cost)");
    }
};

void write_trace(const std::string& path, const std::vector<TraceRow>& rows) {
    std::ofstream f(path);
    if (!f)
        throw UsageError("cannot open trace file: " + path);
    f << "iteration,restart,cost\n";
    for (const auto& r : rows)
        f << r.iteration << ',' << r.restart << ',' << r.cost << '\n';
}

int run(int argc, char** argv) {
    CLI::App app{"finite planes, Galois fields, and mutually unbiased bases"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--seed", g.seed, "seed for every randomized run");
    app.add_option("--tol", g.tol, "certification tolerance");
    app.add_option("--format", g.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", g.out, "write output to this file instead of stdout");

    // field build
    auto* field = app.add_subcommand("field", "finite field tables");
    auto* field_build = field->add_subcommand("build", "construct GF(p^n)");
    std::uint64_t field_p = 2;
    unsigned field_n = 1;
    field_build->add_option("-p,--characteristic", field_p, "prime characteristic")
        ->required();
    field_build->add_option("-n,--degree", field_n, "extension degree")->required();

    // plane subcommands
    auto* plane = app.add_subcommand("plane", "projective and affine planes");
    auto* plane_build = plane->add_subcommand("build", "construct PG(2,q) or a cyclic plane");
    std::uint64_t plane_q = 2;
    std::string plane_ds_path;
    std::uint64_t plane_cap = kDefaultPlaneOrderCap;
    auto* plane_q_opt = plane_build->add_option("-q,--order", plane_q, "prime-power order");
    auto* plane_ds_opt = plane_build->add_option("--difference-set", plane_ds_path,
                                                 "difference-set JSON file to expand");
    plane_q_opt->excludes(plane_ds_opt);
    plane_build->add_option("--cap", plane_cap, "largest allowed order");

    auto* plane_verify = plane->add_subcommand("verify", "check the plane axioms");
    std::string verify_path;
    bool verify_affine = false;
    plane_verify->add_option("-i,--input", verify_path, "incidence JSON file")->required();
    plane_verify->add_flag("--affine", verify_affine, "check the affine axioms instead");

    auto* plane_dualize = plane->add_subcommand("dualize", "swap points and lines");
    std::string dualize_path;
    plane_dualize->add_option("-i,--input", dualize_path, "incidence JSON file")->required();

    auto* plane_affinize = plane->add_subcommand("affinize", "delete a line and its points");
    std::string affinize_path;
    int affinize_line = 0;
    plane_affinize->add_option("-i,--input", affinize_path, "incidence JSON file")->required();
    plane_affinize->add_option("--line", affinize_line, "line at infinity")->required();

    auto* plane_singer = plane->add_subcommand("singer", "Singer difference set for GF(q)");
    std::uint64_t singer_q = 2;
    plane_singer->add_option("-q,--order", singer_q, "prime-power order")->required();

    // mub subcommands
    auto* mub = app.add_subcommand("mub", "mutually unbiased bases");
    auto* mub_build = mub->add_subcommand("build", "complete set for a prime-power dimension");
    std::uint64_t mub_d = 2;
    mub_build->add_option("-d,--dimension", mub_d, "prime-power dimension")->required();

    auto* mub_verify = mub->add_subcommand("verify", "certify a set from JSON");
    std::string mub_path;
    mub_verify->add_option("-i,--input", mub_path, "mub set JSON file")->required();

    // search subcommands
    auto* search = app.add_subcommand("search", "numerical search for unbiased bases");
    auto* search_run = search->add_subcommand("run", "optimize m bases in dimension d");
    SearchKnobs run_knobs;
    int search_d = 6;
    int search_m = 3;
    search_run->add_option("-d,--dimension", search_d, "Hilbert space dimension")->required();
    search_run->add_option("-m,--bases", search_m, "total bases including the fixed first")
        ->required();
    run_knobs.attach(search_run, true);

    auto* search_max = search->add_subcommand("max", "largest m that converges");
    SearchKnobs max_knobs;
    int max_d = 6;
    search_max->add_option("-d,--dimension", max_d, "Hilbert space dimension")->required();
    max_knobs.attach(search_max, false);

    // survey
    auto* survey_cmd = app.add_subcommand("survey", "per-dimension consistency table");
    SearchKnobs survey_knobs;
    int survey_from = 2;
    int survey_to = 9;
    bool survey_search = false;
    int survey_cap = 7;
    survey_cmd->add_option("--from", survey_from, "first dimension")->required();
    survey_cmd->add_option("--to", survey_to, "last dimension")->required();
    survey_cmd->add_flag("--search", survey_search, "run the numerical search on open rows");
    survey_cmd->add_option("--search-cap", survey_cap, "largest dimension the search may try");
    survey_knobs.attach(survey_cmd, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e); // prints help or the parse message
        return rc == 0 ? kExitOk : kExitUsage;
    }

    if (field_build->parsed()) {
        emit_json(g, to_json(build_field(field_p, field_n)));
        return kExitOk;
    }
    if (plane_build->parsed()) {
        if (!plane_ds_path.empty()) {
            const DifferenceSet ds = difference_set_from_json(load_json(plane_ds_path));
            emit_json(g, to_json(plane_from_difference_set(ds)));
        } else if (plane_q_opt->count() > 0) {
            emit_json(g, to_json(build_pg2(field_for_order(plane_q), plane_cap)));
        } else {
            throw UsageError("plane build needs -q or --difference-set");
        }
        return kExitOk;
    }
    if (plane_verify->parsed()) {
        const IncidenceStructure s = incidence_from_json(load_json(verify_path));
        if (verify_affine) {
            const AffineCertificate cert = verify_affine_plane(s);
            emit_json(g, to_json(cert));
            return cert.pass ? kExitOk : kExitVerificationFailure;
        }
        const PlaneCertificate cert = verify_projective_plane(s);
        emit_json(g, to_json(cert));
        return cert.pass ? kExitOk : kExitVerificationFailure;
    }
    if (plane_dualize->parsed()) {
        emit_json(g, to_json(dualize(incidence_from_json(load_json(dualize_path)))));
        return kExitOk;
    }
    if (plane_affinize->parsed()) {
        const IncidenceStructure s = incidence_from_json(load_json(affinize_path));
        emit_json(g, to_json(affinize(s, affinize_line)));
        return kExitOk;
    }
    if (plane_singer->parsed()) {
        emit_json(g, to_json(singer_difference_set(field_for_order(singer_q))));
        return kExitOk;
    }
    if (mub_build->parsed()) {
        emit_json(g, to_json(construct_mub_set(mub_d)));
        return kExitOk;
    }
    if (mub_verify->parsed()) {
        const MubSet s = mub_set_from_json(load_json(mub_path));
        const UnbiasednessReport report = check_mub_set(s, g.tol);
        emit_json(g, to_json(report));
        return report.pass ? kExitOk : kExitVerificationFailure;
    }
    if (search_run->parsed()) {
        SearchConfig config = run_knobs.config;
        config.dimension = search_d;
        config.target_count = search_m;
        config.seed = g.seed;
        std::vector<TraceRow> trace;
        SearchResult result = optimize(config, run_knobs.threads,
                                       run_knobs.trace_path.empty() ? nullptr : &trace);
        if (!run_knobs.trace_path.empty())
            write_trace(run_knobs.trace_path, trace);
        emit_json(g, to_json(result));
        return kExitOk;
    }
    if (search_max->parsed()) {
        SearchConfig config = max_knobs.config;
        config.seed = g.seed;
        std::vector<SearchResult> runs;
        const int found = search_max_mubs(max_d, config, max_knobs.threads, &runs);
        json out{{"d", max_d}, {"max_mubs", found}};
        json per_m = json::array();
        for (std::size_t i = 0; i < runs.size(); ++i)
            per_m.push_back(json{{"m", static_cast<int>(i) + 2},
                                 {"best_cost", runs[i].best_cost},
                                 {"converged", runs[i].converged}});
        out["runs"] = std::move(per_m);
        emit_json(g, out);
        return kExitOk;
    }
    if (survey_cmd->parsed()) {
        SurveySettings settings;
        settings.seed = g.seed;
        settings.search_cap = survey_cap;
        settings.search = survey_knobs.config;
        settings.certification_tol = g.tol;
        settings.threads = survey_knobs.threads;
        const SurveyTable table = survey(survey_from, survey_to, survey_search, settings);
        if (g.format == "csv") {
            std::string csv = to_csv(table);
            if (!csv.empty() && csv.back() == '\n')
                csv.pop_back();
            emit(g, csv);
        } else {
            emit(g, to_json(table).dump(2));
        }
        return kExitOk;
    }
    throw UsageError("no subcommand given");
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const BoundViolation& e) {
        std::cerr << "bound violation: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
