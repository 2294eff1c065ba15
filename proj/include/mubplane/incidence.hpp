#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mubplane/exact_algebra.hpp"

namespace mubplane {

inline constexpr std::uint64_t kDefaultPlaneOrderCap = 64;

// Points, lines, and a point x line incidence table.
struct IncidenceStructure {
    int point_count = 0;
    int line_count = 0;
    std::vector<std::uint8_t> incidence; // row-major, point * line_count + line
    std::vector<std::string> point_labels; // optional, empty or point_count entries
    std::vector<std::string> line_labels;  // optional, empty or line_count entries

    static IncidenceStructure zeros(int points, int lines);
    bool incident(int point, int line) const;
    void set(int point, int line, bool value);

    bool operator==(const IncidenceStructure&) const = default;
};

struct AxiomResult {
    std::string axiom;
    bool pass = true;
    std::string witness; // empty on pass
    int a = -1;          // offending ids where applicable
    int b = -1;
};

struct PlaneCertificate {
    bool pass = false;
    int order = -1;
    int points_per_line = -1;
    int lines_per_point = -1;
    std::vector<AxiomResult> axioms_checked;

    const AxiomResult* first_failure() const;
};

struct AffineCertificate {
    bool pass = false;
    int order = -1;
    int points_per_line = -1;
    int lines_per_point = -1;
    std::vector<std::vector<int>> parallel_classes; // line ids, populated on pass
    std::vector<AxiomResult> axioms_checked;

    const AxiomResult* first_failure() const;
};

// PG(2, q) from homogeneous coordinates over GF(q): points are the
// projectivized nonzero triples (first nonzero coordinate 1), lines the same
// triples read as dual coordinates, incidence the vanishing dot product.
// Points and lines are ordered lexicographically on their representatives.
IncidenceStructure build_pg2(const FieldSpec& spec,
                             std::uint64_t order_cap = kDefaultPlaneOrderCap);

// Exhaustive check of the projective plane axioms. Failures are reported in
// the certificate (first violated axiom carries a witness), never thrown.
PlaneCertificate verify_projective_plane(const IncidenceStructure& s);

// Exhaustive check of the affine plane axioms, including the Playfair
// parallel axiom and the parallel-class partition.
AffineCertificate verify_affine_plane(const IncidenceStructure& s);

// Point/line swap; the incidence table is transposed and labels follow.
IncidenceStructure dualize(const IncidenceStructure& s);

// Deletes the chosen line and every point on it. The input must verify as a
// projective plane (PreconditionError otherwise; DomainError for a bad id).
IncidenceStructure affinize(const IncidenceStructure& s, int line_at_infinity);

// A (v, k, 1) perfect difference set: every nonzero residue mod v occurs
// exactly once as a difference of two members.
struct DifferenceSet {
    int modulus = 0;
    std::vector<int> residues; // sorted, within [0, modulus)

    bool operator==(const DifferenceSet&) const = default;
};

bool is_perfect_difference_set(const DifferenceSet& ds);

// Lexicographically least image containing 0 under translates and unit
// multipliers mod v.
DifferenceSet canonicalize_difference_set(const DifferenceSet& ds);

// Singer construction: indices i in [0, q^2+q+1) with the relative trace of
// g^i from GF(q^3) down to GF(q) equal to zero, for a primitive g; returned
// in canonical form.
DifferenceSet singer_difference_set(const FieldSpec& spec,
                                    std::uint64_t order_cap = kDefaultFieldOrderCap);

// Cyclic plane: points are residues mod v, lines the translates of the set.
// Throws PreconditionError if the difference-set invariant fails.
IncidenceStructure plane_from_difference_set(const DifferenceSet& ds);

} // namespace mubplane
