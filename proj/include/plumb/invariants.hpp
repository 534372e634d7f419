#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plumb/cycle_engine.hpp"

namespace plumb {

enum class SingularityClass { rational, elliptic, general };

std::string to_string(SingularityClass c);

struct ClassificationReport {
    Int min_chi_unbounded;
    Int p_a;               // 1 - min chi, arithmetic genus of the topological type
    SingularityClass verdict;
    Int reduction_bound;   // 2 - min chi
    bool qhs_link;
    Int discriminant_order;
    CycleVec z_min;        // Artin minimal cycle
    Int chi_z_min;
};

// Classification with the two rationality certificates cross-checked:
// min chi = 1 iff chi(Z_min) = 1.
ClassificationReport classify(const IntersectionData& I, const MinChiOptions& opt = {});

Int reduction_number_bound(const IntersectionData& I, const MinChiOptions& opt = {});

// 1 - min{chi(l) : 0 < l <= Z}.  Monotone non-decreasing in Z.
struct StabilityBound {
    Int bound;
    MinChiResult search;
};
StabilityBound stability_bound(const IntersectionData& I, const CycleVec& Z,
                               const MinChiOptions& opt = {});

// Generic-structure h^1 bound of O_Z: sum over connected components C of |Z|
// of 1 - min{chi(l) : 0 < l <= Z restricted to C}, computed inside C.  The
// chi of the ambient graph and of the component agree on cycles supported in
// C, so the per-component searches are exact.  Rational components add 0.
struct GenericH1 {
    Int value;
    std::vector<Int> per_component;
    Subconfiguration support;
};
GenericH1 generic_h1(const PlumbingGraph& g, const CycleVec& Z, const MinChiOptions& opt = {});

// Z >> 0 proxy: generic_h1 at k * Z_min with k doubling until the value
// repeats three times in a row.
Int generic_h1_stable(const PlumbingGraph& g, const MinChiOptions& opt = {});

// Generic-structure value of e_Z(l'): generic_h1(Z) minus generic_h1 of Z with
// the coefficients on `off` zeroed (off = I(l'), the dual support of l').
Int generic_e_Z(const PlumbingGraph& g, const CycleVec& Z, const std::vector<int>& off,
                const MinChiOptions& opt = {});

struct QhsReport {
    bool qhs = false;
    std::string reason;  // empty when qhs
};
// Rational homology sphere link: the graph is a tree and every genus is zero.
QhsReport qhs_link(const PlumbingGraph& g);

struct SpectrumWitness {
    Int p_a;
    std::vector<BlowupRecord> moves;  // vertex blow-ups applied to the input
    std::vector<std::string> kept;    // connected full subgraph realizing p_a
};

struct GenusSpectrum {
    std::vector<Int> values;  // ascending, no duplicates
    std::vector<SpectrumWitness> witnesses;
};

// p_a values of connected full subgraphs reachable with at most max_blowups
// generic vertex blow-ups.  The total number of vertex subsets inspected is
// capped; exceeding the cap is a domain error.
GenusSpectrum subgraph_genus_spectrum(const PlumbingGraph& g, unsigned max_blowups = 0,
                                      unsigned long long subset_cap = 1ULL << 15,
                                      const MinChiOptions& opt = {});

struct RealizeStage {
    std::vector<std::string> kept;
    Int p_a;
};

struct RealizeResult {
    bool found = false;
    std::string failure;              // set when !found
    std::vector<BlowupRecord> moves;  // ambient blow-ups in application order
    std::vector<std::string> kept;    // final kept set in the final ambient graph
    std::vector<RealizeStage> stages; // every stage's kept set and verified p_a
    std::optional<PlumbingGraph> final_graph;
};

// Greedy descent from p_a(g) to q on a rational homology sphere link: while
// p_a > q, take a vertex u whose coefficient m in the lattice-minimal
// unbounded chi-minimizer is >= 2 (smallest such m, then smallest vertex),
// apply m-1 generic vertex blow-ups at u and drop the last new vertex.  Each
// stage's p_a is recomputed, never presumed.  For q = 0 a terminal
// single-vertex fallback guarantees success.  Budget counts blow-up moves.
RealizeResult realize_q(const PlumbingGraph& g, const Int& q, unsigned budget = 16,
                        const MinChiOptions& opt = {});

}  // namespace plumb
