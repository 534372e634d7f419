#pragma once

#include <vector>

#include "plumb/graph.hpp"
#include "plumb/numeric.hpp"

namespace plumb {

// LDL^T pivots of a symmetric integer matrix, no row exchanges.  The matrix is
// negative definite iff all pivots are negative; a zero or positive pivot at
// step k names the violating leading principal minor (1-based).  Zero-pivot
// breakdown cannot happen on a negative definite matrix, so it also reports k.
struct PivotCheck {
    bool negative_definite = false;
    size_t bad_index = 0;      // 0 when negative definite
    std::vector<Rat> pivots;   // pivots computed up to the stopping point
};

PivotCheck ldl_pivots(const std::vector<std::vector<Int>>& M);

// Exact linear algebra attached to a graph's intersection matrix: LDL^T
// factors, inverse, dual basis, canonical cycle, and the chi form.
class IntersectionData {
  public:
    explicit IntersectionData(const PlumbingGraph& g);

    const PlumbingGraph& graph() const { return *graph_; }
    size_t size() const { return n_; }
    const std::vector<std::vector<Int>>& matrix() const { return mat_; }
    const std::vector<std::vector<Rat>>& inverse() const { return inv_; }
    const Int& det() const { return det_; }           // sign (-1)^n
    Int discriminant_order() const;                    // |det|
    const std::vector<Rat>& pivots() const { return pivots_; }

    // E*_v = -(I^{-1} e_v); satisfies (E*_v, E_w) = -delta_vw, coordinates > 0.
    RatCycleVec dual_basis_cycle(int v) const;

    Int pairing(const CycleVec& a, const CycleVec& b) const;
    Rat pairing(const RatCycleVec& a, const RatCycleVec& b) const;
    Int pairing_with_vertex(const CycleVec& a, int v) const;   // (a, E_v)
    Rat pairing_with_vertex(const RatCycleVec& a, int v) const;

    // Adjunction right-hand sides b_v = e_v + 2 - 2 g_v.
    const CycleVec& adjunction_rhs() const { return b_; }

    // Z_K with (Z_K, E_v) = b_v for all v; rational in general.
    const RatCycleVec& canonical_cycle() const { return zk_; }
    bool canonical_integral() const;

    // chi(x) = -(x, x - Z_K)/2.  Integer-valued on integral cycles.
    Rat chi(const RatCycleVec& x) const;
    Int chi(const CycleVec& l) const;

    bool in_dual_lattice(const RatCycleVec& x) const;  // all (x, E_v) integral
    // Anti-nef part of the dual lattice: x in L' with (x, E_v) <= 0 for all v.
    bool is_in_lipman_cone(const RatCycleVec& x) const;

    struct EstarSupport {
        std::vector<int> support;    // vertices with nonzero dual coefficient
        RatCycleVec dual_coeffs;     // a_v with l' = sum a_v E*_v
        bool in_dual_lattice = false;
    };
    EstarSupport estar_support(const RatCycleVec& lp) const;

    CycleVec floor_cycle(const RatCycleVec& x) const;  // coordinatewise floor

    // dim ECa^{l'}(Z) = (l', Z) for -l' in the Lipman cone; l' = 0 denotes the
    // one-point space of the empty divisor (dimension 0); otherwise empty.
    struct EcaDim {
        bool empty = false;
        Rat dim;
    };
    EcaDim eca_dimension(const RatCycleVec& lp, const CycleVec& Z) const;

    RatCycleVec solve(const RatCycleVec& rhs) const;  // I x = rhs, exact

  private:
    const PlumbingGraph* graph_;
    size_t n_;
    std::vector<std::vector<Int>> mat_;
    std::vector<std::vector<Rat>> lower_;  // unit lower triangular L
    std::vector<Rat> pivots_;              // D, all negative
    std::vector<std::vector<Rat>> inv_;
    Int det_;
    CycleVec b_;
    RatCycleVec zk_;
};

}  // namespace plumb
