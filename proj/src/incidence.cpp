#include "mubplane/incidence.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "mubplane/kernels.hpp"

namespace mubplane {

using kernels::BitMatrix;

IncidenceStructure IncidenceStructure::zeros(int points, int lines) {
    IncidenceStructure s;
    s.point_count = points;
    s.line_count = lines;
    s.incidence.assign(static_cast<std::size_t>(points) * lines, 0);
    return s;
}

bool IncidenceStructure::incident(int point, int line) const {
    return incidence[static_cast<std::size_t>(point) * line_count + line] != 0;
}

void IncidenceStructure::set(int point, int line, bool value) {
    incidence[static_cast<std::size_t>(point) * line_count + line] = value ? 1 : 0;
}

const AxiomResult* PlaneCertificate::first_failure() const {
    for (const auto& a : axioms_checked)
        if (!a.pass)
            return &a;
    return nullptr;
}

const AxiomResult* AffineCertificate::first_failure() const {
    for (const auto& a : axioms_checked)
        if (!a.pass)
            return &a;
    return nullptr;
}

namespace {

// Element index tables for GF(q); incidence construction runs on these
// rather than on FieldElement temporaries.
struct FieldTables {
    std::uint32_t q = 0;
    std::vector<std::uint32_t> add;
    std::vector<std::uint32_t> mul;

    explicit FieldTables(const FieldSpec& spec) {
        q = static_cast<std::uint32_t>(spec.order());
        add.resize(static_cast<std::size_t>(q) * q);
        mul.resize(static_cast<std::size_t>(q) * q);
        std::vector<FieldElement> elems;
        elems.reserve(q);
        for (std::uint32_t i = 0; i < q; ++i)
            elems.push_back(element_from_index(spec, i));
        for (std::uint32_t a = 0; a < q; ++a)
            for (std::uint32_t b = 0; b < q; ++b) {
                add[static_cast<std::size_t>(a) * q + b] =
                    static_cast<std::uint32_t>(element_index(elems[a] + elems[b]));
                mul[static_cast<std::size_t>(a) * q + b] =
                    static_cast<std::uint32_t>(element_index(elems[a] * elems[b]));
            }
    }

    std::uint32_t plus(std::uint32_t a, std::uint32_t b) const {
        return add[static_cast<std::size_t>(a) * q + b];
    }
    std::uint32_t times(std::uint32_t a, std::uint32_t b) const {
        return mul[static_cast<std::size_t>(a) * q + b];
    }
};

using Triple = std::array<std::uint32_t, 3>;

// Canonical projective representatives (first nonzero coordinate 1) in
// lexicographic order.
std::vector<Triple> canonical_triples(std::uint32_t q) {
    std::vector<Triple> reps;
    reps.reserve(static_cast<std::size_t>(q) * q + q + 1);
    reps.push_back({0, 0, 1});
    for (std::uint32_t z = 0; z < q; ++z)
        reps.push_back({0, 1, z});
    for (std::uint32_t y = 0; y < q; ++y)
        for (std::uint32_t z = 0; z < q; ++z)
            reps.push_back({1, y, z});
    std::sort(reps.begin(), reps.end());
    return reps;
}

AxiomResult pass_axiom(std::string id) {
    return AxiomResult{std::move(id), true, "", -1, -1};
}

AxiomResult fail_axiom(std::string id, std::string witness, int a = -1, int b = -1) {
    return AxiomResult{std::move(id), false, std::move(witness), a, b};
}

// First identical row pair, or (-1, -1).
std::pair<int, int> duplicate_rows(const BitMatrix& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i + 1; j < m.rows(); ++j)
            if (m.rows_equal(i, j))
                return {i, j};
    return {-1, -1};
}

bool check_distinct(std::vector<AxiomResult>& out, const BitMatrix& m,
                    const char* id, const char* noun) {
    auto [i, j] = duplicate_rows(m);
    if (i >= 0) {
        out.push_back(fail_axiom(id,
                                 std::string(noun) + "s " + std::to_string(i) + " and " +
                                     std::to_string(j) + " are identical",
                                 i, j));
        return false;
    }
    out.push_back(pass_axiom(id));
    return true;
}

bool check_unique_meet(std::vector<AxiomResult>& out, const BitMatrix& m,
                       const char* id, const char* noun, const char* dual_noun) {
    const auto v = kernels::scan_pair_meets_omp(m, 1);
    if (!v.ok()) {
        out.push_back(fail_axiom(
            id,
            std::string(noun) + "s " + std::to_string(v.i) + " and " +
                std::to_string(v.j) + " lie on " + std::to_string(v.count) +
                " common " + dual_noun + "s (expected 1)",
            v.i, v.j));
        return false;
    }
    out.push_back(pass_axiom(id));
    return true;
}

} // namespace

IncidenceStructure build_pg2(const FieldSpec& spec, std::uint64_t order_cap) {
    const std::uint64_t q64 = spec.order();
    if (q64 > order_cap)
        throw CapacityError("build_pg2: order exceeds the configured cap");
    const FieldTables ft(spec);
    const std::uint32_t q = ft.q;
    const auto reps = canonical_triples(q);
    const int v = static_cast<int>(reps.size());

    IncidenceStructure s = IncidenceStructure::zeros(v, v);
    s.point_labels.reserve(v);
    s.line_labels.reserve(v);
    for (const Triple& t : reps) {
        const std::string body = std::to_string(t[0]) + ":" + std::to_string(t[1]) +
                                 ":" + std::to_string(t[2]);
        s.point_labels.push_back("(" + body + ")");
        s.line_labels.push_back("[" + body + "]");
    }
    for (int pt = 0; pt < v; ++pt) {
        const Triple& x = reps[static_cast<std::size_t>(pt)];
        for (int ln = 0; ln < v; ++ln) {
            const Triple& a = reps[static_cast<std::size_t>(ln)];
            std::uint32_t dot = ft.times(a[0], x[0]);
            dot = ft.plus(dot, ft.times(a[1], x[1]));
            dot = ft.plus(dot, ft.times(a[2], x[2]));
            if (dot == 0)
                s.set(pt, ln, true);
        }
    }
    return s;
}

PlaneCertificate verify_projective_plane(const IncidenceStructure& s) {
    PlaneCertificate cert;
    auto& out = cert.axioms_checked;
    const int P = s.point_count;
    const int L = s.line_count;
    const BitMatrix point_rows = BitMatrix::pack(s.incidence.data(), P, L, false);
    const BitMatrix line_rows = BitMatrix::pack(s.incidence.data(), P, L, true);

    if (!check_distinct(out, point_rows, "distinct-points", "point"))
        return cert;
    if (!check_distinct(out, line_rows, "distinct-lines", "line"))
        return cert;
    if (!check_unique_meet(out, point_rows, "two-points-one-line", "point", "line"))
        return cert;
    if (!check_unique_meet(out, line_rows, "two-lines-one-point", "line", "point"))
        return cert;

    // Quadrangle. Given the two unique-meet axioms, four points with no
    // three collinear exist exactly when two distinct lines carry at least
    // two points each besides their common one, i.e. two lines of size >= 3.
    {
        int rich_first = -1, rich_second = -1;
        for (int l = 0; l < L; ++l) {
            if (line_rows.row_popcount(l) >= 3) {
                if (rich_first < 0)
                    rich_first = l;
                else {
                    rich_second = l;
                    break;
                }
            }
        }
        if (rich_second < 0) {
            out.push_back(fail_axiom("quadrangle",
                                     "no four points with no three collinear: fewer than "
                                     "two lines carry three or more points"));
            return cert;
        }
        out.push_back(pass_axiom("quadrangle"));
    }

    // Counting consequences: uniform line size d+1, uniform point degree
    // d+1, and d^2+d+1 points and lines.
    {
        const int k = line_rows.row_popcount(0);
        const int d = k - 1;
        const long long expected = static_cast<long long>(d) * d + d + 1;
        for (int l = 0; l < L; ++l)
            if (line_rows.row_popcount(l) != k) {
                out.push_back(fail_axiom("uniform-counts",
                                         "line " + std::to_string(l) + " has " +
                                             std::to_string(line_rows.row_popcount(l)) +
                                             " points, expected " + std::to_string(k),
                                         -1, l));
                return cert;
            }
        for (int p = 0; p < P; ++p)
            if (point_rows.row_popcount(p) != k) {
                out.push_back(fail_axiom("uniform-counts",
                                         "point " + std::to_string(p) + " lies on " +
                                             std::to_string(point_rows.row_popcount(p)) +
                                             " lines, expected " + std::to_string(k),
                                         p, -1));
                return cert;
            }
        if (P != expected || L != expected) {
            out.push_back(fail_axiom("uniform-counts",
                                     "expected " + std::to_string(expected) +
                                         " points and lines for order " + std::to_string(d)));
            return cert;
        }
        out.push_back(pass_axiom("uniform-counts"));
        cert.order = d;
        cert.points_per_line = k;
        cert.lines_per_point = k;
    }
    cert.pass = true;
    return cert;
}

AffineCertificate verify_affine_plane(const IncidenceStructure& s) {
    AffineCertificate cert;
    auto& out = cert.axioms_checked;
    const int P = s.point_count;
    const int L = s.line_count;
    const BitMatrix point_rows = BitMatrix::pack(s.incidence.data(), P, L, false);
    const BitMatrix line_rows = BitMatrix::pack(s.incidence.data(), P, L, true);

    if (!check_distinct(out, point_rows, "distinct-points", "point"))
        return cert;
    if (!check_distinct(out, line_rows, "distinct-lines", "line"))
        return cert;
    if (!check_unique_meet(out, point_rows, "two-points-one-line", "point", "line"))
        return cert;

    {
        const auto v = kernels::scan_playfair_omp(point_rows, line_rows);
        if (!v.ok()) {
            out.push_back(fail_axiom("playfair-parallel",
                                     "through point " + std::to_string(v.point) +
                                         " there are " + std::to_string(v.parallels) +
                                         " lines disjoint from line " +
                                         std::to_string(v.line) + " (expected 1)",
                                     v.point, v.line));
            return cert;
        }
        out.push_back(pass_axiom("playfair-parallel"));
    }

    // Triangle: a line with two points plus a point off it (unique-meet
    // already holds, so those three points cannot be collinear).
    {
        bool found = false;
        for (int l = 0; l < L && !found; ++l)
            if (line_rows.row_popcount(l) >= 2 && line_rows.row_popcount(l) < P)
                found = true;
        if (!found) {
            out.push_back(fail_axiom("triangle", "no three non-collinear points exist"));
            return cert;
        }
        out.push_back(pass_axiom("triangle"));
    }

    int d = 0;
    {
        d = line_rows.row_popcount(0);
        for (int l = 0; l < L; ++l)
            if (line_rows.row_popcount(l) != d) {
                out.push_back(fail_axiom("uniform-counts",
                                         "line " + std::to_string(l) + " has " +
                                             std::to_string(line_rows.row_popcount(l)) +
                                             " points, expected " + std::to_string(d),
                                         -1, l));
                return cert;
            }
        for (int p = 0; p < P; ++p)
            if (point_rows.row_popcount(p) != d + 1) {
                out.push_back(fail_axiom("uniform-counts",
                                         "point " + std::to_string(p) + " lies on " +
                                             std::to_string(point_rows.row_popcount(p)) +
                                             " lines, expected " + std::to_string(d + 1),
                                         p, -1));
                return cert;
            }
        if (P != d * d || L != d * d + d) {
            out.push_back(fail_axiom("uniform-counts",
                                     "expected " + std::to_string(d * d) + " points and " +
                                         std::to_string(d * d + d) + " lines for order " +
                                         std::to_string(d)));
            return cert;
        }
        out.push_back(pass_axiom("uniform-counts"));
    }

    // Parallelism (equal or disjoint) must partition the lines into d+1
    // classes of d lines; checking the partition against every pair also
    // checks that the relation is an equivalence.
    {
        std::vector<int> class_of(static_cast<std::size_t>(L), -1);
        int classes = 0;
        for (int l = 0; l < L; ++l) {
            if (class_of[static_cast<std::size_t>(l)] >= 0)
                continue;
            cert.parallel_classes.emplace_back();
            for (int m = 0; m < L; ++m)
                if (m == l || line_rows.and_popcount(l, m) == 0) {
                    if (class_of[static_cast<std::size_t>(m)] >= 0) {
                        out.push_back(fail_axiom("parallel-classes",
                                                 "lines " + std::to_string(l) + " and " +
                                                     std::to_string(m) +
                                                     " break the parallel partition",
                                                 l, m));
                        cert.parallel_classes.clear();
                        return cert;
                    }
                    class_of[static_cast<std::size_t>(m)] = classes;
                    cert.parallel_classes.back().push_back(m);
                }
            ++classes;
        }
        for (int a = 0; a < L; ++a)
            for (int b = a + 1; b < L; ++b) {
                const bool parallel = (line_rows.and_popcount(a, b) == 0);
                const bool same_class = (class_of[static_cast<std::size_t>(a)] ==
                                         class_of[static_cast<std::size_t>(b)]);
                if (parallel != same_class) {
                    out.push_back(fail_axiom("parallel-classes",
                                             "parallelism is not transitive at lines " +
                                                 std::to_string(a) + ", " + std::to_string(b),
                                             a, b));
                    cert.parallel_classes.clear();
                    return cert;
                }
            }
        if (classes != d + 1) {
            out.push_back(fail_axiom("parallel-classes",
                                     "found " + std::to_string(classes) +
                                         " parallel classes, expected " +
                                         std::to_string(d + 1)));
            cert.parallel_classes.clear();
            return cert;
        }
        for (const auto& cls : cert.parallel_classes)
            if (static_cast<int>(cls.size()) != d) {
                out.push_back(fail_axiom("parallel-classes",
                                         "a parallel class has " +
                                             std::to_string(cls.size()) +
                                             " lines, expected " + std::to_string(d)));
                return cert;
            }
        out.push_back(pass_axiom("parallel-classes"));
    }

    cert.pass = true;
    cert.order = d;
    cert.points_per_line = d;
    cert.lines_per_point = d + 1;
    return cert;
}

IncidenceStructure dualize(const IncidenceStructure& s) {
    IncidenceStructure t = IncidenceStructure::zeros(s.line_count, s.point_count);
    for (int p = 0; p < s.point_count; ++p)
        for (int l = 0; l < s.line_count; ++l)
            if (s.incident(p, l))
                t.set(l, p, true);
    t.point_labels = s.line_labels;
    t.line_labels = s.point_labels;
    return t;
}

IncidenceStructure affinize(const IncidenceStructure& s, int line_at_infinity) {
    if (line_at_infinity < 0 || line_at_infinity >= s.line_count)
        throw DomainError("affinize: line id out of range");
    if (!verify_projective_plane(s).pass)
        throw PreconditionError("affinize requires a verified projective plane");

    std::vector<int> kept_points;
    for (int p = 0; p < s.point_count; ++p)
        if (!s.incident(p, line_at_infinity))
            kept_points.push_back(p);
    std::vector<int> kept_lines;
    for (int l = 0; l < s.line_count; ++l)
        if (l != line_at_infinity)
            kept_lines.push_back(l);

    IncidenceStructure a = IncidenceStructure::zeros(static_cast<int>(kept_points.size()),
                                                     static_cast<int>(kept_lines.size()));
    for (std::size_t i = 0; i < kept_points.size(); ++i)
        for (std::size_t j = 0; j < kept_lines.size(); ++j)
            if (s.incident(kept_points[i], kept_lines[j]))
                a.set(static_cast<int>(i), static_cast<int>(j), true);
    if (!s.point_labels.empty()) {
        for (int p : kept_points)
            a.point_labels.push_back(s.point_labels[static_cast<std::size_t>(p)]);
    }
    if (!s.line_labels.empty()) {
        for (int l : kept_lines)
            a.line_labels.push_back(s.line_labels[static_cast<std::size_t>(l)]);
    }
    return a;
}

bool is_perfect_difference_set(const DifferenceSet& ds) {
    const int v = ds.modulus;
    const int k = static_cast<int>(ds.residues.size());
    if (v < 1)
        return false;
    if (static_cast<long long>(v) != static_cast<long long>(k) * k - k + 1)
        return false;
    for (int r : ds.residues)
        if (r < 0 || r >= v)
            return false;
    if (!std::is_sorted(ds.residues.begin(), ds.residues.end()))
        return false;
    if (std::adjacent_find(ds.residues.begin(), ds.residues.end()) != ds.residues.end())
        return false;

    std::vector<int> tally(static_cast<std::size_t>(v), 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i == j)
                continue;
            int diff = (ds.residues[static_cast<std::size_t>(i)] -
                        ds.residues[static_cast<std::size_t>(j)]) % v;
            if (diff < 0)
                diff += v;
            ++tally[static_cast<std::size_t>(diff)];
        }
    for (int r = 1; r < v; ++r)
        if (tally[static_cast<std::size_t>(r)] != 1)
            return false;
    return true;
}

DifferenceSet canonicalize_difference_set(const DifferenceSet& ds) {
    if (ds.modulus < 1)
        throw DomainError("difference set modulus must be positive");
    for (int r : ds.residues)
        if (r < 0 || r >= ds.modulus)
            throw DomainError("difference set residue out of range");
    return DifferenceSet{ds.modulus,
                         kernels::difference_set_canonical_omp(ds.modulus, ds.residues)};
}

DifferenceSet singer_difference_set(const FieldSpec& spec, std::uint64_t order_cap) {
    const std::uint64_t q = spec.order();
    const FieldSpec cubic = build_field(spec.p, spec.n * 3, order_cap);
    const std::uint64_t v = q * q + q + 1;

    const FieldElement g = primitive_element(cubic);
    std::vector<int> indices;
    FieldElement e = field_one(cubic);
    for (std::uint64_t i = 0; i < v; ++i) {
        const FieldElement tr = e + pow(e, q) + pow(e, q * q);
        if (tr.is_zero())
            indices.push_back(static_cast<int>(i));
        e = e * g;
    }
    if (indices.size() != q + 1)
        throw std::logic_error("singer_difference_set: trace-zero count is off");

    DifferenceSet raw{static_cast<int>(v), std::move(indices)};
    if (!is_perfect_difference_set(raw))
        throw std::logic_error("singer_difference_set: difference property failed");
    return canonicalize_difference_set(raw);
}

IncidenceStructure plane_from_difference_set(const DifferenceSet& ds) {
    if (!is_perfect_difference_set(ds))
        throw PreconditionError("plane_from_difference_set requires a perfect difference set");
    const int v = ds.modulus;
    std::vector<std::uint8_t> member(static_cast<std::size_t>(v), 0);
    for (int r : ds.residues)
        member[static_cast<std::size_t>(r)] = 1;

    IncidenceStructure s = IncidenceStructure::zeros(v, v);
    for (int p = 0; p < v; ++p) {
        s.point_labels.push_back(std::to_string(p));
        for (int t = 0; t < v; ++t) {
            int shifted = (p - t) % v;
            if (shifted < 0)
                shifted += v;
            if (member[static_cast<std::size_t>(shifted)])
                s.set(p, t, true);
        }
    }
    for (int t = 0; t < v; ++t)
        s.line_labels.push_back("D+" + std::to_string(t));
    return s;
}

} // namespace mubplane
