#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "plumb/graph.hpp"

namespace plumb::testing {

inline ParsedFile parse(const std::string& text) { return parse_graph_file(text); }

inline CycleVec vec(std::initializer_list<long> xs) {
    CycleVec out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

inline RatCycleVec rvec(std::initializer_list<const char*> xs) {
    RatCycleVec out;
    for (const char* x : xs) {
        Rat r(x);
        r.canonicalize();
        out.push_back(r);
    }
    return out;
}

// Chain graph with the given euler numbers, ids x0, x1, ...
inline PlumbingGraph chain(std::initializer_list<long> eulers) {
    std::vector<VertexData> vs;
    std::vector<std::pair<int, int>> es;
    int i = 0;
    for (long e : eulers) {
        vs.push_back({"x" + std::to_string(i), Int(e), 0});
        if (i > 0) es.emplace_back(i - 1, i);
        ++i;
    }
    return PlumbingGraph::validated("chain", std::move(vs), std::move(es));
}

// Random effective cycle with coordinates in [0, hi].
inline CycleVec random_cycle(SplitMix64& rng, size_t n, unsigned long hi) {
    CycleVec out(n);
    for (size_t v = 0; v < n; ++v) out[v] = Int(static_cast<unsigned long>(rng.below(hi + 1)));
    return out;
}

}  // namespace plumb::testing
