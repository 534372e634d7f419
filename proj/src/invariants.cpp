#include "plumb/invariants.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace plumb {

std::string to_string(SingularityClass c) {
    switch (c) {
        case SingularityClass::rational: return "rational";
        case SingularityClass::elliptic: return "elliptic";
        case SingularityClass::general: return "general";
    }
    return "general";
}

ClassificationReport classify(const IntersectionData& I, const MinChiOptions& opt) {
    MinChiResult mc = min_chi(I, MinChiRegion::all(), opt);
    LauferTrace lt = laufer_minimal_cycle(I);

    ClassificationReport r;
    r.min_chi_unbounded = mc.minimum;
    r.p_a = 1 - mc.minimum;
    r.verdict = mc.minimum == 1   ? SingularityClass::rational
                : mc.minimum == 0 ? SingularityClass::elliptic
                                  : SingularityClass::general;
    r.reduction_bound = 2 - mc.minimum;
    r.qhs_link = qhs_link(I.graph()).qhs;
    r.discriminant_order = I.discriminant_order();
    r.chi_z_min = I.chi(lt.result);
    r.z_min = std::move(lt.result);

    // Two independent rationality certificates must agree.
    if ((r.min_chi_unbounded == 1) != (r.chi_z_min == 1))
        throw std::logic_error("rationality certificates disagree");
    return r;
}

Int reduction_number_bound(const IntersectionData& I, const MinChiOptions& opt) {
    return 2 - min_chi(I, MinChiRegion::all(), opt).minimum;
}

StabilityBound stability_bound(const IntersectionData& I, const CycleVec& Z,
                               const MinChiOptions& opt) {
    MinChiResult mc = min_chi(I, MinChiRegion::below(Z), opt);
    StabilityBound out{1 - mc.minimum, std::move(mc)};
    return out;
}

GenericH1 generic_h1(const PlumbingGraph& g, const CycleVec& Z, const MinChiOptions& opt) {
    if (Z.size() != g.size()) throw DomainError("cycle has wrong length");
    std::vector<std::string> support;
    for (size_t v = 0; v < g.size(); ++v) {
        if (Z[v] < 0) throw DomainError("cycle must be effective");
        if (Z[v] > 0) support.push_back(g.vertex(static_cast<int>(v)).id);
    }
    if (support.empty()) throw DomainError("cycle must be nonzero");

    GenericH1 out;
    out.support = full_subgraph(g, support);
    out.value = 0;
    for (size_t c = 0; c < out.support.components.size(); ++c) {
        const PlumbingGraph& comp = out.support.components[c];
        CycleVec box(comp.size());
        for (size_t i = 0; i < comp.size(); ++i) box[i] = Z[out.support.component_vertices[c][i]];
        IntersectionData ic(comp);
        Int val = 1 - min_chi(ic, MinChiRegion::below(box), opt).minimum;
        out.value += val;
        out.per_component.push_back(std::move(val));
    }
    return out;
}

Int generic_h1_stable(const PlumbingGraph& g, const MinChiOptions& opt) {
    IntersectionData I(g);
    CycleVec zmin = laufer_minimal_cycle(I).result;
    Int prev;
    int agree = 0;
    Int k(1);
    for (int round = 0; round < 64; ++round) {
        CycleVec Z(zmin.size());
        for (size_t i = 0; i < zmin.size(); ++i) Z[i] = k * zmin[i];
        Int val = generic_h1(g, Z, opt).value;
        if (round > 0 && val == prev) {
            if (++agree >= 2) return val;
        } else {
            agree = 0;
        }
        prev = val;
        k *= 2;
    }
    throw std::logic_error("generic h1 did not stabilize");
}

Int generic_e_Z(const PlumbingGraph& g, const CycleVec& Z, const std::vector<int>& off,
                const MinChiOptions& opt) {
    Int h_full = generic_h1(g, Z, opt).value;
    CycleVec rest(Z);
    for (int v : off) {
        if (v < 0 || static_cast<size_t>(v) >= Z.size()) throw DomainError("vertex index out of range");
        rest[v] = 0;
    }
    Int h_rest = is_zero(rest) ? Int(0) : generic_h1(g, rest, opt).value;
    return h_full - h_rest;
}

QhsReport qhs_link(const PlumbingGraph& g) {
    for (const auto& v : g.vertices())
        if (v.genus != 0)
            return {false, "vertex '" + v.id + "' has genus " + std::to_string(v.genus)};
    if (g.edges().size() != g.size() - 1)
        return {false, "graph has an independent cycle (" + std::to_string(g.edges().size()) +
                           " edges on " + std::to_string(g.size()) + " vertices)"};
    return {true, ""};
}

namespace {

Int subgraph_pa(const PlumbingGraph& sub, const MinChiOptions& opt) {
    IntersectionData I(sub);
    return 1 - min_chi(I, MinChiRegion::all(), opt).minimum;
}

}  // namespace

GenusSpectrum subgraph_genus_spectrum(const PlumbingGraph& g, unsigned max_blowups,
                                      unsigned long long subset_cap, const MinChiOptions& opt) {
    struct Reached {
        PlumbingGraph graph;
        std::vector<BlowupRecord> moves;
    };
    std::vector<Reached> frontier{{g, {}}};
    std::vector<Reached> all{{g, {}}};
    for (unsigned level = 0; level < max_blowups; ++level) {
        std::vector<Reached> next;
        for (const auto& r : frontier)
            for (const auto& v : r.graph.vertices()) {
                BlowupResult b = blow_up_vertex(r.graph, v.id);
                auto moves = r.moves;
                moves.push_back(b.record);
                next.push_back({std::move(b.graph), std::move(moves)});
            }
        all.insert(all.end(), next.begin(), next.end());
        frontier = std::move(next);
    }

    unsigned long long work = 0;
    for (const auto& r : all) {
        if (r.graph.size() >= 63) throw DomainError("graph too large for subgraph enumeration");
        work += (1ULL << r.graph.size()) - 1;
        if (work > subset_cap)
            throw DomainError("subgraph enumeration cap exceeded (" + std::to_string(subset_cap) +
                              " subsets)");
    }

    std::map<Int, SpectrumWitness> found;
    for (const auto& r : all) {
        const size_t n = r.graph.size();
        std::vector<unsigned long long> adj(n, 0);
        for (const auto& [u, w] : r.graph.edges()) {
            adj[u] |= 1ULL << w;
            adj[w] |= 1ULL << u;
        }
        for (unsigned long long mask = 1; mask < (1ULL << n); ++mask) {
            // Flood fill from the lowest set bit; connected iff it covers mask.
            unsigned long long seen = mask & (~mask + 1);
            for (;;) {
                unsigned long long grow = seen;
                unsigned long long m = seen;
                while (m) {
                    unsigned long long bit = m & (~m + 1);
                    grow |= adj[__builtin_ctzll(bit)] & mask;
                    m ^= bit;
                }
                if (grow == seen) break;
                seen = grow;
            }
            if (seen != mask) continue;

            std::vector<std::string> kept;
            for (size_t v = 0; v < n; ++v)
                if (mask & (1ULL << v)) kept.push_back(r.graph.vertex(static_cast<int>(v)).id);
            Subconfiguration sub = full_subgraph(r.graph, kept);
            Int pa = subgraph_pa(sub.components[0], opt);
            if (!found.count(pa)) found.emplace(pa, SpectrumWitness{pa, r.moves, kept});
        }
    }

    GenusSpectrum out;
    for (auto& [val, wit] : found) {
        out.values.push_back(val);
        out.witnesses.push_back(std::move(wit));
    }
    return out;
}

RealizeResult realize_q(const PlumbingGraph& g, const Int& q, unsigned budget,
                        const MinChiOptions& opt) {
    QhsReport qr = qhs_link(g);
    if (!qr.qhs) throw DomainError("not a rational homology sphere link: " + qr.reason);
    if (q < 0) throw DomainError("q must be non-negative");
    {
        IntersectionData I(g);
        Int pa_full = 1 - min_chi(I, MinChiRegion::all(), opt).minimum;
        if (q > pa_full)
            throw DomainError("q out of range: p_a is " + pa_full.get_str());
    }

    RealizeResult res;
    PlumbingGraph ambient = g;
    std::vector<std::string> kept;
    for (const auto& v : g.vertices()) kept.push_back(v.id);
    unsigned moves_used = 0;

    for (;;) {
        Subconfiguration sub = full_subgraph(ambient, kept);
        if (sub.components.size() != 1) throw std::logic_error("kept set disconnected");
        const PlumbingGraph& cur = sub.components[0];
        IntersectionData I(cur);
        MinChiResult mc = min_chi(I, MinChiRegion::all(), opt);
        Int pa = 1 - mc.minimum;
        res.stages.push_back({kept, pa});

        if (pa == q) {
            res.found = true;
            break;
        }
        if (moves_used >= budget) {
            if (q == 0) {
                // A single genus-zero vertex is rational; restricting to it is
                // always available on a tree with all genera zero.
                kept = {cur.vertex(0).id};
                res.stages.push_back({kept, Int(0)});
                res.found = true;
                break;
            }
            res.failure = "budget exhausted after " + std::to_string(moves_used) + " moves";
            break;
        }

        // Vertex with the smallest minimizer coefficient >= 2.
        int at = -1;
        for (size_t v = 0; v < cur.size(); ++v)
            if (mc.min_minimizer[v] >= 2 &&
                (at < 0 || mc.min_minimizer[v] < mc.min_minimizer[at]))
                at = static_cast<int>(v);
        if (at < 0) {
            if (q == 0) {
                kept = {cur.vertex(0).id};
                res.stages.push_back({kept, Int(0)});
                res.found = true;
                break;
            }
            res.failure = "no vertex with minimizer coefficient >= 2";
            break;
        }

        const std::string uid = cur.vertex(at).id;
        const Int m = mc.min_minimizer[at];
        std::string last_new;
        for (Int k(1); k < m; ++k) {
            BlowupResult b = blow_up_vertex(ambient, uid);
            res.moves.push_back(b.record);
            if (!last_new.empty()) kept.push_back(last_new);
            last_new = b.record.new_vertex;
            ambient = std::move(b.graph);
        }
        // The last new vertex stays out of the kept set.
        ++moves_used;
    }

    res.kept = kept;
    res.final_graph = std::move(ambient);
    return res;
}

}  // namespace plumb
