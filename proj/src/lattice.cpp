#include "plumb/lattice.hpp"

#include <stdexcept>

namespace plumb {

PivotCheck ldl_pivots(const std::vector<std::vector<Int>>& M) {
    const size_t n = M.size();
    std::vector<std::vector<Rat>> w(n, std::vector<Rat>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) w[i][j] = Rat(M[i][j]);

    PivotCheck pc;
    for (size_t k = 0; k < n; ++k) {
        const Rat d = w[k][k];
        pc.pivots.push_back(d);
        if (d >= 0) {
            pc.bad_index = k + 1;
            return pc;
        }
        for (size_t i = k + 1; i < n; ++i) {
            if (w[i][k] == 0) continue;
            const Rat f = w[i][k] / d;
            for (size_t j = k + 1; j < n; ++j)
                if (w[k][j] != 0) w[i][j] -= f * w[k][j];
        }
    }
    pc.negative_definite = true;
    return pc;
}

IntersectionData::IntersectionData(const PlumbingGraph& g)
    : graph_(&g), n_(g.size()), mat_(g.intersection_matrix()) {
    // LDL^T without pivoting.  The graph invariant guarantees all pivots are
    // negative; the check stays as a guard against construction bugs.
    std::vector<std::vector<Rat>> w(n_, std::vector<Rat>(n_));
    for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j) w[i][j] = Rat(mat_[i][j]);
    lower_.assign(n_, std::vector<Rat>(n_, Rat(0)));
    pivots_.resize(n_);
    for (size_t k = 0; k < n_; ++k) {
        pivots_[k] = w[k][k];
        if (pivots_[k] >= 0) throw DomainError("intersection matrix is not negative definite");
        lower_[k][k] = 1;
        for (size_t i = k + 1; i < n_; ++i) lower_[i][k] = w[i][k] / pivots_[k];
        for (size_t i = k + 1; i < n_; ++i) {
            if (lower_[i][k] == 0) continue;
            for (size_t j = k + 1; j < n_; ++j)
                if (w[k][j] != 0) w[i][j] -= lower_[i][k] * w[k][j];
        }
    }

    Rat dprod(1);
    for (const Rat& d : pivots_) dprod *= d;
    if (dprod.get_den() != 1) throw std::logic_error("determinant not integral");
    det_ = dprod.get_num();

    inv_.assign(n_, std::vector<Rat>(n_, Rat(0)));
    for (size_t v = 0; v < n_; ++v) {
        RatCycleVec e(n_, Rat(0));
        e[v] = 1;
        RatCycleVec col = solve(e);
        for (size_t i = 0; i < n_; ++i) inv_[i][v] = col[i];
    }

    b_.resize(n_);
    for (size_t v = 0; v < n_; ++v) {
        const VertexData& vd = g.vertex(static_cast<int>(v));
        b_[v] = vd.euler + 2 - 2 * Int(vd.genus);
    }
    RatCycleVec rb(n_);
    for (size_t v = 0; v < n_; ++v) rb[v] = Rat(b_[v]);
    zk_ = solve(rb);
}

RatCycleVec IntersectionData::solve(const RatCycleVec& rhs) const {
    if (rhs.size() != n_) throw DomainError("right-hand side has wrong length");
    RatCycleVec y(rhs);
    for (size_t i = 0; i < n_; ++i)
        for (size_t k = 0; k < i; ++k)
            if (lower_[i][k] != 0) y[i] -= lower_[i][k] * y[k];
    for (size_t i = 0; i < n_; ++i) y[i] /= pivots_[i];
    for (size_t ii = n_; ii-- > 0;)
        for (size_t k = ii + 1; k < n_; ++k)
            if (lower_[k][ii] != 0) y[ii] -= lower_[k][ii] * y[k];
    return y;
}

Int IntersectionData::discriminant_order() const { return abs(det_); }

RatCycleVec IntersectionData::dual_basis_cycle(int v) const {
    RatCycleVec out(n_);
    for (size_t i = 0; i < n_; ++i) out[i] = -inv_[i][v];
    return out;
}

Int IntersectionData::pairing(const CycleVec& a, const CycleVec& b) const {
    if (a.size() != n_ || b.size() != n_) throw DomainError("cycle has wrong length");
    Int s(0);
    for (size_t i = 0; i < n_; ++i) {
        if (a[i] == 0) continue;
        Int row(0);
        for (size_t j = 0; j < n_; ++j)
            if (mat_[i][j] != 0 && b[j] != 0) row += mat_[i][j] * b[j];
        s += a[i] * row;
    }
    return s;
}

Rat IntersectionData::pairing(const RatCycleVec& a, const RatCycleVec& b) const {
    if (a.size() != n_ || b.size() != n_) throw DomainError("cycle has wrong length");
    Rat s(0);
    for (size_t i = 0; i < n_; ++i) {
        if (a[i] == 0) continue;
        Rat row(0);
        for (size_t j = 0; j < n_; ++j)
            if (mat_[i][j] != 0 && b[j] != 0) row += Rat(mat_[i][j]) * b[j];
        s += a[i] * row;
    }
    return s;
}

Int IntersectionData::pairing_with_vertex(const CycleVec& a, int v) const {
    if (a.size() != n_) throw DomainError("cycle has wrong length");
    Int s(0);
    for (size_t j = 0; j < n_; ++j)
        if (mat_[v][j] != 0 && a[j] != 0) s += mat_[v][j] * a[j];
    return s;
}

Rat IntersectionData::pairing_with_vertex(const RatCycleVec& a, int v) const {
    if (a.size() != n_) throw DomainError("cycle has wrong length");
    Rat s(0);
    for (size_t j = 0; j < n_; ++j)
        if (mat_[v][j] != 0 && a[j] != 0) s += Rat(mat_[v][j]) * a[j];
    return s;
}

bool IntersectionData::canonical_integral() const {
    for (const Rat& c : zk_)
        if (c.get_den() != 1) return false;
    return true;
}

Rat IntersectionData::chi(const RatCycleVec& x) const {
    RatCycleVec shifted(n_);
    for (size_t i = 0; i < n_; ++i) shifted[i] = x[i] - zk_[i];
    return -pairing(x, shifted) / 2;
}

Int IntersectionData::chi(const CycleVec& l) const {
    Int s = -pairing(l, l);
    for (size_t v = 0; v < n_; ++v)
        if (l[v] != 0) s += l[v] * b_[v];
    if (mpz_odd_p(s.get_mpz_t())) throw std::logic_error("chi parity violated");
    Int out;
    mpz_divexact_ui(out.get_mpz_t(), s.get_mpz_t(), 2);
    return out;
}

bool IntersectionData::in_dual_lattice(const RatCycleVec& x) const {
    for (size_t v = 0; v < n_; ++v)
        if (pairing_with_vertex(x, static_cast<int>(v)).get_den() != 1) return false;
    return true;
}

bool IntersectionData::is_in_lipman_cone(const RatCycleVec& x) const {
    for (size_t v = 0; v < n_; ++v) {
        Rat p = pairing_with_vertex(x, static_cast<int>(v));
        if (p > 0 || p.get_den() != 1) return false;
    }
    return true;
}

IntersectionData::EstarSupport IntersectionData::estar_support(const RatCycleVec& lp) const {
    EstarSupport out;
    out.dual_coeffs.resize(n_);
    out.in_dual_lattice = true;
    for (size_t v = 0; v < n_; ++v) {
        out.dual_coeffs[v] = -pairing_with_vertex(lp, static_cast<int>(v));
        if (out.dual_coeffs[v].get_den() != 1) out.in_dual_lattice = false;
        if (out.dual_coeffs[v] != 0) out.support.push_back(static_cast<int>(v));
    }
    return out;
}

CycleVec IntersectionData::floor_cycle(const RatCycleVec& x) const {
    CycleVec out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = rat_floor(x[i]);
    return out;
}

IntersectionData::EcaDim IntersectionData::eca_dimension(const RatCycleVec& lp,
                                                         const CycleVec& Z) const {
    if (is_zero(lp)) return {false, Rat(0)};  // empty divisor, a single point
    RatCycleVec neg(n_);
    for (size_t i = 0; i < n_; ++i) neg[i] = -lp[i];
    if (!is_in_lipman_cone(neg)) return {true, Rat(0)};
    return {false, pairing(lp, to_rat(Z))};
}

}  // namespace plumb
