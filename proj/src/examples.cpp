#include "plumb/examples.hpp"

#include <cctype>

namespace plumb {

PlumbingGraph example_dpp() {
    const long chain[] = {-2, -1, -7, -3, -3, -7, -1, -2};
    std::vector<VertexData> vs;
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < 8; ++i) {
        vs.push_back({"c" + std::to_string(i), Int(chain[i]), 0});
        if (i > 0) es.emplace_back(i - 1, i);
    }
    vs.push_back({"d1", Int(-3), 0});
    es.emplace_back(1, 8);
    vs.push_back({"d6", Int(-3), 0});
    es.emplace_back(6, 9);
    return PlumbingGraph::validated("dpp", std::move(vs), std::move(es));
}

PlumbingGraph example_star(unsigned branches, const Int& weight) {
    if (branches < 2) throw DomainError("star needs at least 2 branches");
    if (weight < 1) throw DomainError("star weight must be positive");
    std::vector<VertexData> vs;
    std::vector<std::pair<int, int>> es;
    vs.push_back({"e0", -weight, 0});
    for (unsigned i = 0; i < branches; ++i) {
        const std::string s = std::to_string(i);
        const int u = static_cast<int>(vs.size());
        vs.push_back({"u" + s, -weight, 0});
        vs.push_back({"v" + s, Int(-1), 0});
        vs.push_back({"w" + s + "a", -weight, 0});
        vs.push_back({"w" + s + "b", -weight, 0});
        es.emplace_back(0, u);
        es.emplace_back(u, u + 1);
        es.emplace_back(u + 1, u + 2);
        es.emplace_back(u + 1, u + 3);
    }
    std::string nm = "star_n" + std::to_string(branches) + "_N" + weight.get_str();
    return PlumbingGraph::validated(std::move(nm), std::move(vs), std::move(es));
}

PlumbingGraph example_ade(const std::string& name) {
    if (name.size() < 2) throw DomainError("unknown example '" + name + "'");
    const char family = static_cast<char>(std::tolower(static_cast<unsigned char>(name[0])));
    unsigned long k = 0;
    for (size_t i = 1; i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i])))
            throw DomainError("unknown example '" + name + "'");
        k = k * 10 + static_cast<unsigned long>(name[i] - '0');
        if (k > 512) throw DomainError("example '" + name + "' too large");
    }

    std::vector<VertexData> vs;
    std::vector<std::pair<int, int>> es;
    auto add = [&](const std::string& id) {
        vs.push_back({id, Int(-2), 0});
        return static_cast<int>(vs.size()) - 1;
    };

    if (family == 'a' && k >= 1) {
        for (unsigned long i = 1; i <= k; ++i) {
            int v = add("a" + std::to_string(i));
            if (v > 0) es.emplace_back(v - 1, v);
        }
    } else if (family == 'd' && k >= 4) {
        for (unsigned long i = 1; i <= k - 2; ++i) {
            int v = add("a" + std::to_string(i));
            if (v > 0) es.emplace_back(v - 1, v);
        }
        es.emplace_back(static_cast<int>(k) - 3, add("f1"));
        es.emplace_back(static_cast<int>(k) - 3, add("f2"));
    } else if (family == 'e' && k >= 6 && k <= 8) {
        // T(2,3,k-3): arms of 1, 2 and k-4 vertices around a center.
        int c = add("c");
        int p1 = add("p1");
        es.emplace_back(c, p1);
        int q1 = add("q1");
        int q2 = add("q2");
        es.emplace_back(c, q1);
        es.emplace_back(q1, q2);
        int prev = c;
        for (unsigned long i = 1; i <= k - 4; ++i) {
            int r = add("r" + std::to_string(i));
            es.emplace_back(prev, r);
            prev = r;
        }
    } else {
        throw DomainError("unknown example '" + name + "'");
    }

    std::string nm = std::string(1, family) + std::to_string(k);
    return PlumbingGraph::validated(std::move(nm), std::move(vs), std::move(es));
}

}  // namespace plumb
