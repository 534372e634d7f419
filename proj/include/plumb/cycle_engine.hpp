#pragma once

#include <vector>

#include "plumb/lattice.hpp"

namespace plumb {

struct LauferStep {
    int vertex;
    Int pairing_value;  // (z, E_vertex) > 0 at the time of the step
};

struct LauferTrace {
    CycleVec result;  // the minimal (fundamental) cycle
    std::vector<LauferStep> steps;
};

// Increment algorithm from z = E: while some (z, E_v) > 0, add E_v for the
// smallest such v in vertex order.  Terminates on negative definite lattices;
// the result is the smallest anti-nef cycle >= E and does not depend on the
// violator choice.
LauferTrace laufer_minimal_cycle(const IntersectionData& I);

// Search region: all effective nonzero cycles, optionally boxed 0 < l <= box.
// Box coordinates equal to zero freeze that coordinate.
struct MinChiRegion {
    enum class Kind { unbounded, box };
    Kind kind = Kind::unbounded;
    CycleVec box;

    static MinChiRegion all() { return {}; }
    static MinChiRegion below(CycleVec b) { return {Kind::box, std::move(b)}; }
};

// Finite-box certificate: every cycle l in the region with chi(l) <= c0 has
// l_v <= bound_v, where c0 = chi(witness) and the bound comes from the level
// ellipsoid {chi <= c0} around center = Z_K/2 with radius^2-scale R.
// Minimizers satisfy chi <= c0, so the search over the box is exhaustive.
struct SearchCertificate {
    Int witness_chi;     // c0
    CycleVec witness;    // region point attaining c0
    RatCycleVec center;  // Z_K / 2
    Rat radius;          // R = c0 - chi(center) >= 0
    CycleVec bound;      // per-coordinate cap, clipped to the box if any
};

SearchCertificate certified_box(const IntersectionData& I, const MinChiRegion& region);

// Number of lattice points in the certified box including zero.
Int certified_volume(const SearchCertificate& cert);

// min_minimizer / max_minimizer fold rule: the coordinatewise meet (resp.
// join) of all minimizers when that fold is itself a minimizer, otherwise the
// minimizer smallest (resp. largest) by total coefficient sum then by
// coefficient tuple in vertex order; if the two picks end up incomparable the
// minimal one is set equal to the maximal one.  The rule is a function of the
// minimizer set only, so any enumeration order gives the same answer.
struct MinChiResult {
    Int minimum;
    CycleVec min_minimizer;
    CycleVec max_minimizer;
    Int minimizer_count;
    SearchCertificate certificate;
};

struct MinChiOptions {
    unsigned threads = 1;
    bool reverse_branch_order = false;  // test hook for order independence
};

// Exact branch-and-bound over the certified box: LDL^T of the positive
// definite form -I turns chi into a sum of one-dimensional convex terms, and
// partial sums give lower bounds.  Nodes are pruned only when the bound
// strictly exceeds the incumbent, so every minimizer is visited.
MinChiResult min_chi(const IntersectionData& I, const MinChiRegion& region,
                     const MinChiOptions& opt = {});

// Plain odometer enumeration of the same certified box with incremental chi
// updates; no pruning.  Throws DomainError when the box holds more than `cap`
// points.  Serves as the independent cross-check for min_chi.
inline constexpr unsigned long long kOracleDefaultCap = 100000000ULL;
MinChiResult min_chi_oracle(const IntersectionData& I, const MinChiRegion& region,
                            unsigned long long cap = kOracleDefaultCap);

struct MinimizerLattice {
    CycleVec min_minimizer;
    CycleVec max_minimizer;
    Int count;
};

MinimizerLattice chi_minimizer_lattice(const IntersectionData& I, const MinChiRegion& region,
                                       const MinChiOptions& opt = {});

}  // namespace plumb
