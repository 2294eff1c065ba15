// Timing harness for the kernels that exist in both serial and OpenMP
// form. Each row runs both variants on the same input, checks that the
// results agree, and reports the speedup.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include <omp.h>

#include "mubplane/incidence.hpp"
#include "mubplane/kernels.hpp"
#include "mubplane/search.hpp"

using namespace mubplane;
namespace k = mubplane::kernels;

namespace {

double wall_ms(const std::function<void()>& fn, int repeats) {
    const auto start = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r)
        fn();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count() /
           static_cast<double>(repeats);
}

void report(const std::string& name, double serial_ms, double omp_ms, bool equal) {
    std::printf("%-34s %10.2f %10.2f %8.2fx   %s\n", name.c_str(), serial_ms, omp_ms,
                serial_ms / omp_ms, equal ? "yes" : "NO");
}

} // namespace

int main(int argc, char** argv) {
    std::uint64_t q = 31;
    if (argc > 1)
        q = std::strtoull(argv[1], nullptr, 10);

    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-34s %10s %10s %9s   %s\n", "kernel", "serial_ms", "omp_ms", "speedup",
                "equal");

    // Plane axiom pair scan on PG(2, q).
    {
        const auto pp = classify_order(q);
        if (!pp) {
            std::fprintf(stderr, "q must be a prime power\n");
            return 2;
        }
        const IncidenceStructure plane =
            build_pg2(build_field(pp->prime, pp->exponent), q);
        const auto rows = k::BitMatrix::pack(plane.incidence.data(), plane.point_count,
                                             plane.line_count, false);
        k::PairViolation vs, vp;
        const double ts = wall_ms([&] { vs = k::scan_pair_meets_serial(rows, 1); }, 3);
        const double tp = wall_ms([&] { vp = k::scan_pair_meets_omp(rows, 1); }, 3);
        report("plane-pair-scan q=" + std::to_string(q), ts, tp,
               vs.encoded == vp.encoded);
    }

    // Unbiasedness deviation scan over random unitary bases.
    {
        const int d = 48;
        const int m = 24;
        BasisParameters params(d, m);
        std::uint64_t state = 12345;
        for (double& t : params.theta) {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            t = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
        }
        const auto bases = params.realize();
        const double target = 1.0 / std::sqrt(static_cast<double>(d));
        std::vector<k::PairDeviation> ds, dp;
        const double ts = wall_ms([&] { ds = k::scan_set_pairs_serial(bases, target); }, 3);
        const double tp = wall_ms([&] { dp = k::scan_set_pairs_omp(bases, target); }, 3);
        bool equal = ds.size() == dp.size();
        for (std::size_t i = 0; equal && i < ds.size(); ++i)
            equal = (ds[i].deviation == dp[i].deviation);
        report("mub-pair-scan d=48 m=24", ts, tp, equal);

        double cs = 0, cp = 0;
        const double tcs = wall_ms([&] { cs = k::mub_cost_kernel_serial(bases); }, 3);
        const double tcp = wall_ms([&] { cp = k::mub_cost_kernel_omp(bases); }, 3);
        report("mub-cost d=48 m=24", tcs, tcp, cs == cp);
    }

    // Difference-set canonicalization (min over unit multipliers).
    {
        const auto pp = classify_order(q);
        const DifferenceSet singer =
            singer_difference_set(build_field(pp->prime, pp->exponent));
        std::vector<int> rs, rp;
        const double ts = wall_ms(
            [&] { rs = k::difference_set_canonical_serial(singer.modulus, singer.residues); },
            3);
        const double tp = wall_ms(
            [&] { rp = k::difference_set_canonical_omp(singer.modulus, singer.residues); },
            3);
        report("difference-set-canonical q=" + std::to_string(q), ts, tp, rs == rp);
    }

    // Optimizer restarts, one thread against all.
    {
        SearchConfig config;
        config.dimension = 5;
        config.target_count = 4;
        config.restarts = 2 * omp_get_max_threads();
        config.max_iterations = 120;
        config.seed = 7;
        SearchResult r1, rn;
        const double ts = wall_ms([&] { r1 = optimize(config, 1); }, 1);
        const double tp = wall_ms([&] { rn = optimize(config, omp_get_max_threads()); }, 1);
        report("optimize-restarts d=5 m=4", ts, tp,
               r1.per_restart_costs == rn.per_restart_costs);
    }

    return 0;
}
