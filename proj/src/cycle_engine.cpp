#include "plumb/cycle_engine.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace plumb {

LauferTrace laufer_minimal_cycle(const IntersectionData& I) {
    const size_t n = I.size();
    const auto& M = I.matrix();
    CycleVec z(n, Int(1));
    std::vector<Int> p(n);
    for (size_t v = 0; v < n; ++v) p[v] = I.pairing_with_vertex(z, static_cast<int>(v));

    LauferTrace tr;
    for (;;) {
        int bad = -1;
        for (size_t v = 0; v < n; ++v)
            if (p[v] > 0) {
                bad = static_cast<int>(v);
                break;
            }
        if (bad < 0) break;
        tr.steps.push_back({bad, p[bad]});
        z[bad] += 1;
        for (size_t w = 0; w < n; ++w)
            if (M[w][bad] != 0) p[w] += M[w][bad];
    }
    tr.result = std::move(z);
    return tr;
}

namespace {

Int cycle_sum(const CycleVec& l) {
    Int s(0);
    for (const auto& c : l) s += c;
    return s;
}

// Ordering by (coefficient sum, coefficient tuple in vertex order).
int cmp_sumlex(const CycleVec& a, const CycleVec& b) {
    const Int sa = cycle_sum(a), sb = cycle_sum(b);
    if (sa != sb) return sa < sb ? -1 : 1;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

bool leq(const CycleVec& a, const CycleVec& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

// Running fold over candidate minimizers.  Both the pruned search and the
// oracle feed every point whose chi matches the running minimum through
// offer(), so the final folds depend only on the minimizer set.
struct Accum {
    bool any = false;
    Int best;
    Int count{0};
    CycleVec meet, join, lex_min, lex_max;

    void offer(const CycleVec& l, const Int& val) {
        if (!any || val < best) {
            any = true;
            best = val;
            count = 1;
            meet = join = lex_min = lex_max = l;
            return;
        }
        if (val > best) return;
        count += 1;
        for (size_t i = 0; i < l.size(); ++i) {
            if (l[i] < meet[i]) meet[i] = l[i];
            if (l[i] > join[i]) join[i] = l[i];
        }
        if (cmp_sumlex(l, lex_min) < 0) lex_min = l;
        if (cmp_sumlex(l, lex_max) > 0) lex_max = l;
    }

    void merge(const Accum& o) {
        if (!o.any) return;
        if (!any || o.best < best) {
            *this = o;
            return;
        }
        if (o.best > best) return;
        count += o.count;
        for (size_t i = 0; i < meet.size(); ++i) {
            if (o.meet[i] < meet[i]) meet[i] = o.meet[i];
            if (o.join[i] > join[i]) join[i] = o.join[i];
        }
        if (cmp_sumlex(o.lex_min, lex_min) < 0) lex_min = o.lex_min;
        if (cmp_sumlex(o.lex_max, lex_max) > 0) lex_max = o.lex_max;
    }
};

MinChiResult finalize(const IntersectionData& I, Accum&& acc, SearchCertificate&& cert) {
    if (!acc.any) throw std::logic_error("search produced no candidates");
    MinChiResult r;
    r.minimum = acc.best;
    r.max_minimizer = I.chi(acc.join) == acc.best ? std::move(acc.join) : std::move(acc.lex_max);
    const bool meet_ok = !is_zero(acc.meet) && I.chi(acc.meet) == acc.best;
    r.min_minimizer = meet_ok ? std::move(acc.meet) : std::move(acc.lex_min);
    if (!leq(r.min_minimizer, r.max_minimizer)) r.min_minimizer = r.max_minimizer;
    r.minimizer_count = std::move(acc.count);
    r.certificate = std::move(cert);
    return r;
}

// LDL^T of a positive definite integer matrix (here -I permuted).
void ldl_positive(const std::vector<std::vector<Int>>& A, std::vector<std::vector<Rat>>& L,
                  std::vector<Rat>& d) {
    const size_t n = A.size();
    std::vector<std::vector<Rat>> w(n, std::vector<Rat>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) w[i][j] = Rat(A[i][j]);
    L.assign(n, std::vector<Rat>(n, Rat(0)));
    d.resize(n);
    for (size_t k = 0; k < n; ++k) {
        d[k] = w[k][k];
        if (d[k] <= 0) throw std::logic_error("search form is not positive definite");
        L[k][k] = 1;
        for (size_t i = k + 1; i < n; ++i) L[i][k] = w[i][k] / d[k];
        for (size_t i = k + 1; i < n; ++i) {
            if (L[i][k] == 0) continue;
            for (size_t j = k + 1; j < n; ++j)
                if (w[k][j] != 0) w[i][j] -= L[i][k] * w[k][j];
        }
    }
}

// chi(l) = sum_p d_p s_p^2 / 2 + chi(center) with s_p = y_p + sum_{q>p} L_qp y_q
// and y = l - center.  Assigning positions n-1 .. 0, the terms of assigned
// positions are complete and the rest are non-negative, giving the bound.
struct SearchCtx {
    size_t n = 0;
    std::vector<int> perm;  // position -> vertex
    std::vector<std::vector<Rat>> L;
    std::vector<Rat> d;
    RatCycleVec center;  // by position
    CycleVec cap;        // by position
    Rat chi_offset;      // chi(Z_K/2)
};

struct Worker {
    const SearchCtx& cx;
    Accum acc;
    Int incumbent;
    std::vector<Rat> t;    // t[p] = sum over assigned q > p of L[q][p] * y_q
    std::vector<Int> cur;  // by position
    size_t nonzero = 0;

    Worker(const SearchCtx& cx_, Int incumbent0)
        : cx(cx_), incumbent(std::move(incumbent0)), t(cx_.n, Rat(0)), cur(cx_.n, Int(0)) {}

    CycleVec vertex_order() const {
        CycleVec l(cx.n);
        for (size_t p = 0; p < cx.n; ++p) l[cx.perm[p]] = cur[p];
        return l;
    }

    enum class Step { stop, skip, went };

    // Try value lv at position p on top of the accumulated cost of the
    // positions above p.  stop: this and all larger lv are pruned.
    Step try_child(size_t p, const Int& lv, const Rat& cost) {
        Rat s = Rat(lv) - cx.center[p] + t[p];
        Rat child = cost + cx.d[p] * s * s / 2;
        if (child + cx.chi_offset > incumbent) return s >= 0 ? Step::stop : Step::skip;
        const bool nz = lv > 0;
        cur[p] = lv;
        if (nz) ++nonzero;
        if (p == 0) {
            if (nonzero > 0) {
                Rat chiv = child + cx.chi_offset;
                if (chiv.get_den() != 1) throw std::logic_error("chi not integral at leaf");
                Int val = chiv.get_num();
                if (val < incumbent) incumbent = val;
                acc.offer(vertex_order(), val);
            }
        } else {
            const Rat y = Rat(lv) - cx.center[p];
            if (y != 0)
                for (size_t q = 0; q < p; ++q)
                    if (cx.L[p][q] != 0) t[q] += cx.L[p][q] * y;
            dfs(p - 1, child);
            if (y != 0)
                for (size_t q = 0; q < p; ++q)
                    if (cx.L[p][q] != 0) t[q] -= cx.L[p][q] * y;
        }
        if (nz) --nonzero;
        cur[p] = 0;
        return Step::went;
    }

    void dfs(size_t p, const Rat& cost) {
        for (Int lv(0); lv <= cx.cap[p]; ++lv)
            if (try_child(p, lv, cost) == Step::stop) break;
    }

    void root_scan(const Int& start, const Int& stride) {
        const size_t p = cx.n - 1;
        for (Int lv(start); lv <= cx.cap[p]; lv += stride)
            if (try_child(p, lv, Rat(0)) == Step::stop) break;
    }
};

Accum run_search(const SearchCtx& cx, const Int& c0, unsigned threads) {
    const size_t root = cx.n - 1;
    if (threads <= 1) {
        Worker w(cx, c0);
        w.root_scan(Int(0), Int(1));
        return std::move(w.acc);
    }
    std::vector<Accum> parts(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned k = 0; k < threads; ++k)
        pool.emplace_back([&cx, &c0, &parts, k, threads] {
            Worker w(cx, c0);
            w.root_scan(Int(k), Int(threads));
            parts[k] = std::move(w.acc);
        });
    for (auto& th : pool) th.join();
    Accum acc;
    for (auto& part : parts) acc.merge(part);
    return acc;
}

}  // namespace

SearchCertificate certified_box(const IntersectionData& I, const MinChiRegion& region) {
    const size_t n = I.size();
    const bool boxed = region.kind == MinChiRegion::Kind::box;
    if (boxed) {
        if (region.box.size() != n) throw DomainError("box cycle has wrong length");
        bool nonzero = false;
        for (const auto& c : region.box) {
            if (c < 0) throw DomainError("box coefficients must be non-negative");
            if (c > 0) nonzero = true;
        }
        if (!nonzero) throw DomainError("empty search region");
    }

    // Any region point gives a sound incumbent c0; a smaller one gives a
    // tighter box.  Candidates: feasible basis vectors and the clipped
    // minimal cycle.
    SearchCertificate cert;
    bool have = false;
    auto consider = [&](const CycleVec& cand) {
        if (is_zero(cand)) return;
        Int v = I.chi(cand);
        if (!have || v < cert.witness_chi) {
            have = true;
            cert.witness_chi = v;
            cert.witness = cand;
        }
    };
    for (size_t v = 0; v < n; ++v) {
        if (boxed && region.box[v] < 1) continue;
        CycleVec e(n, Int(0));
        e[v] = 1;
        consider(e);
    }
    CycleVec zmin = laufer_minimal_cycle(I).result;
    if (boxed)
        for (size_t i = 0; i < n; ++i)
            if (zmin[i] > region.box[i]) zmin[i] = region.box[i];
    consider(zmin);

    const RatCycleVec& zk = I.canonical_cycle();
    cert.center.resize(n);
    for (size_t i = 0; i < n; ++i) cert.center[i] = zk[i] / 2;
    cert.radius = Rat(cert.witness_chi) - I.chi(cert.center);

    cert.bound.resize(n);
    for (size_t v = 0; v < n; ++v) {
        const Rat diag = -I.inverse()[v][v];  // (-I)^{-1}_vv > 0
        const Rat ub = sqrt_upper(2 * cert.radius * diag);
        Int bv = rat_ceil(cert.center[v] + ub);
        if (bv < 0) bv = 0;
        if (boxed && bv > region.box[v]) bv = region.box[v];
        cert.bound[v] = bv;
    }
    return cert;
}

Int certified_volume(const SearchCertificate& cert) {
    Int vol(1);
    for (const auto& b : cert.bound) vol *= b + 1;
    return vol;
}

MinChiResult min_chi(const IntersectionData& I, const MinChiRegion& region,
                     const MinChiOptions& opt) {
    SearchCertificate cert = certified_box(I, region);
    const size_t n = I.size();
    const auto& M = I.matrix();

    SearchCtx cx;
    cx.n = n;

    // Stiffest vertex (most negative euler) is branched first, i.e. sits at
    // the last elimination position.
    std::vector<int> stiff(n);
    std::iota(stiff.begin(), stiff.end(), 0);
    std::stable_sort(stiff.begin(), stiff.end(),
                     [&](int a, int b) { return M[a][a] < M[b][b]; });
    if (opt.reverse_branch_order) std::reverse(stiff.begin(), stiff.end());
    cx.perm.resize(n);
    for (size_t p = 0; p < n; ++p) cx.perm[p] = stiff[n - 1 - p];

    std::vector<std::vector<Int>> A(n, std::vector<Int>(n));
    for (size_t p = 0; p < n; ++p)
        for (size_t q = 0; q < n; ++q) A[p][q] = -M[cx.perm[p]][cx.perm[q]];
    ldl_positive(A, cx.L, cx.d);

    cx.center.resize(n);
    cx.cap.resize(n);
    for (size_t p = 0; p < n; ++p) {
        cx.center[p] = cert.center[cx.perm[p]];
        cx.cap[p] = cert.bound[cx.perm[p]];
    }
    cx.chi_offset = I.chi(cert.center);

    const unsigned threads = opt.threads == 0 ? 1 : opt.threads;
    Accum acc = run_search(cx, cert.witness_chi, threads);
    return finalize(I, std::move(acc), std::move(cert));
}

namespace {

template <class T>
struct Conv;

template <>
struct Conv<long long> {
    static long long from_int(const Int& x) { return static_cast<long long>(x.get_si()); }
    static Int to_int(long long x) { return Int(static_cast<long>(x)); }
};

template <>
struct Conv<Int> {
    static Int from_int(const Int& x) { return x; }
    static const Int& to_int(const Int& x) { return x; }
};

// Odometer over the certified box.  Coordinates other than the innermost are
// classic odometer state with incremental pairing/chi updates; the innermost
// coordinate is swept with second differences of the quadratic t -> chi(l + t E).
template <class T>
void enumerate_box(const IntersectionData& I, const CycleVec& bound, Accum& acc) {
    using C = Conv<T>;
    const size_t n = I.size();

    std::vector<int> slot(n);  // slot 0 = innermost = largest cap
    std::iota(slot.begin(), slot.end(), 0);
    std::stable_sort(slot.begin(), slot.end(), [&](int a, int b) { return bound[a] > bound[b]; });

    std::vector<std::vector<T>> M(n, std::vector<T>(n));
    std::vector<T> B(n), bv(n), chiE(n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) M[i][j] = C::from_int(I.matrix()[i][j]);
        B[i] = C::from_int(bound[i]);
        bv[i] = C::from_int(I.adjunction_rhs()[i]);
        chiE[i] = (bv[i] - M[i][i]) / 2;  // chi(E_i), exact division
    }

    const int v0 = slot[0];
    std::vector<T> l(n, T(0));     // current point, coordinate v0 excluded
    std::vector<T> pr(n, T(0));    // pr[v] = (l, E_v)
    T chi_base = T(0);             // chi(l)
    size_t restnz = 0;             // nonzero coordinates outside v0

    bool have = false;
    T best_t = T(0);
    auto consider = [&](const T& chiv, const T& inner) {
        CycleVec point(n);
        for (size_t v = 0; v < n; ++v) point[v] = C::to_int(l[v]);
        point[v0] = C::to_int(inner);
        acc.offer(point, C::to_int(chiv));
        best_t = C::from_int(acc.best);
        have = true;
    };

    for (;;) {
        // Sweep the innermost coordinate.
        T chi_t = chi_base;
        T delta = chiE[v0] - pr[v0];
        const T dd = -M[v0][v0];
        for (T tt = T(0); tt <= B[v0]; ++tt) {
            if ((restnz > 0 || tt > 0) && (!have || chi_t <= best_t)) consider(chi_t, tt);
            chi_t += delta;
            delta += dd;
        }

        // Advance the odometer on the remaining coordinates.
        size_t k = 1;
        while (k < n && l[slot[k]] == B[slot[k]]) ++k;
        if (k >= n) break;
        for (size_t j = 1; j < k; ++j) {
            const int vj = slot[j];
            const T x = l[vj];
            if (x == 0) continue;
            const T chix = (x * bv[vj] - x * x * M[vj][vj]) / 2;  // chi(x E_vj)
            chi_base += -chix + x * (pr[vj] - x * M[vj][vj]);
            for (size_t v = 0; v < n; ++v)
                if (M[v][vj] != 0) pr[v] -= x * M[v][vj];
            l[vj] = T(0);
            --restnz;
        }
        const int vk = slot[k];
        chi_base += chiE[vk] - pr[vk];
        for (size_t v = 0; v < n; ++v)
            if (M[v][vk] != 0) pr[v] += M[v][vk];
        if (l[vk] == 0) ++restnz;
        l[vk] += 1;
    }
}

// The int64 fast path is safe when every intermediate stays far below 2^63:
// chi values of box points, pairing values, and the x*pairing products are
// all dominated by (maxB+1) * S with S below.
bool int64_safe(const IntersectionData& I, const CycleVec& bound) {
    const size_t n = I.size();
    Int S(0), maxB(0);
    for (size_t v = 0; v < n; ++v) {
        Int row(0);
        for (size_t j = 0; j < n; ++j) row += abs(I.matrix()[v][j]) * (bound[j] + 1);
        S += (bound[v] + 1) * (row + abs(I.adjunction_rhs()[v]) + 2);
        if (bound[v] > maxB) maxB = bound[v];
    }
    const Int lim = Int(1) << 60;
    return (maxB + 1) * S < lim;
}

}  // namespace

MinChiResult min_chi_oracle(const IntersectionData& I, const MinChiRegion& region,
                            unsigned long long cap) {
    SearchCertificate cert = certified_box(I, region);
    const Int vol = certified_volume(cert);
    if (vol > Int(static_cast<unsigned long>(cap)))
        throw DomainError("enumeration cap exceeded: certified box holds " + vol.get_str() +
                          " points, cap is " + std::to_string(cap));
    Accum acc;
    if (int64_safe(I, cert.bound))
        enumerate_box<long long>(I, cert.bound, acc);
    else
        enumerate_box<Int>(I, cert.bound, acc);
    return finalize(I, std::move(acc), std::move(cert));
}

MinimizerLattice chi_minimizer_lattice(const IntersectionData& I, const MinChiRegion& region,
                                       const MinChiOptions& opt) {
    MinChiResult r = min_chi(I, region, opt);
    return {std::move(r.min_minimizer), std::move(r.max_minimizer), std::move(r.minimizer_count)};
}

}  // namespace plumb
