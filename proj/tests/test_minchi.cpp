#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "plumb/cycle_engine.hpp"
#include "plumb/examples.hpp"

using namespace plumb;
using namespace plumb::testing;

namespace {

bool anti_nef(const IntersectionData& I, const CycleVec& z) {
    for (size_t v = 0; v < z.size(); ++v)
        if (I.pairing_with_vertex(z, static_cast<int>(v)) > 0) return false;
    return true;
}

// Laufer's loop with the opposite violator policy; the fixed point is the
// same, which is the order-independence statement under test.
CycleVec laufer_largest_index(const IntersectionData& I) {
    const size_t n = I.size();
    CycleVec z(n, Int(1));
    for (;;) {
        int pick = -1;
        for (size_t v = 0; v < n; ++v)
            if (I.pairing_with_vertex(z, static_cast<int>(v)) > 0) pick = static_cast<int>(v);
        if (pick < 0) return z;
        z[pick] += 1;
    }
}

bool result_equal(const MinChiResult& a, const MinChiResult& b) {
    return a.minimum == b.minimum && a.minimizer_count == b.minimizer_count &&
           a.min_minimizer == b.min_minimizer && a.max_minimizer == b.max_minimizer;
}

}  // namespace

TEST_CASE("Laufer on the dpp fixture") {
    IntersectionData I(example_dpp());
    LauferTrace t = laufer_minimal_cycle(I);
    CHECK(t.result == vec({3, 6, 1, 1, 1, 1, 6, 3, 2, 2}));
    CHECK(t.steps.size() == 16);
    CHECK(I.chi(t.result) == -1);
    CHECK(anti_nef(I, t.result));
    for (const auto& s : t.steps) CHECK(s.pairing_value > 0);
    // Replaying the trace from E reproduces the result.
    CycleVec z(I.size(), Int(1));
    for (const auto& s : t.steps) z[s.vertex] += 1;
    CHECK(z == t.result);
}

TEST_CASE("Laufer is independent of the violator choice") {
    for (unsigned long long seed = 1; seed <= 50; ++seed) {
        PlumbingGraph g = random_negdef_graph(seed, 1 + seed % 6);
        IntersectionData I(g);
        CHECK(laufer_minimal_cycle(I).result == laufer_largest_index(I));
    }
    IntersectionData I(example_dpp());
    CHECK(laufer_minimal_cycle(I).result == laufer_largest_index(I));
}

TEST_CASE("star family minimal cycles and canonical floors") {
    for (unsigned n : {2u, 3u}) {
        PlumbingGraph g = example_star(n, Int(20));
        IntersectionData I(g);
        CycleVec zmin = laufer_minimal_cycle(I).result;
        CycleVec fl = I.floor_cycle(I.canonical_cycle());
        for (size_t v = 0; v < g.size(); ++v) {
            bool minus_one = g.vertex(static_cast<int>(v)).euler == -1;
            CHECK(zmin[v] == (minus_one ? 3 : 1));
            CHECK(fl[v] == (minus_one ? 2 : 1));
        }
        CHECK(I.chi(zmin) == 1 - Int(n));
        MinChiResult mc = min_chi(I, MinChiRegion::all());
        CHECK(mc.minimum == 1 - Int(n));
        CHECK(result_equal(mc, min_chi_oracle(I, MinChiRegion::all())));
    }
}

TEST_CASE("trivial minima") {
    ParsedFile f = parse("graph g\nv a euler=-2\n");
    MinChiResult mc = min_chi(IntersectionData(f.graph), MinChiRegion::all());
    CHECK(mc.minimum == 1);
    CHECK(mc.min_minimizer == vec({1}));
    CHECK(mc.minimizer_count == 1);

    ParsedFile e = parse("graph g\nv a euler=-1 genus=1\n");
    MinChiResult ec = min_chi(IntersectionData(e.graph), MinChiRegion::all());
    CHECK(ec.minimum == 0);
    CHECK(ec.min_minimizer == vec({1}));
    CHECK(ec.max_minimizer == vec({1}));
    CHECK(ec.minimizer_count == 1);
}

TEST_CASE("dpp minimizer lattice structure") {
    IntersectionData I(example_dpp());
    MinChiResult mc = min_chi(I, MinChiRegion::all());
    CHECK(mc.minimum == -1);
    CHECK(mc.minimizer_count == 256);
    CHECK(mc.min_minimizer == vec({1, 2, 1, 1, 1, 1, 2, 1, 1, 1}));
    CHECK(mc.max_minimizer == vec({6, 12, 2, 1, 1, 2, 12, 6, 4, 4}));
    CHECK(I.chi(mc.min_minimizer) == -1);
    CHECK(I.chi(mc.max_minimizer) == -1);
    CHECK(mc.certificate.bound == vec({10, 19, 4, 3, 3, 4, 19, 10, 7, 7}));
    CHECK(certified_volume(mc.certificate) == Int("1239040000"));
    MinimizerLattice ml = chi_minimizer_lattice(I, MinChiRegion::all());
    CHECK(ml.min_minimizer == mc.min_minimizer);
    CHECK(ml.max_minimizer == mc.max_minimizer);
    CHECK(ml.count == 256);
}

TEST_CASE("search equals oracle on a seeded corpus") {
    for (unsigned long long seed = 1; seed <= 60; ++seed) {
        PlumbingGraph g = random_negdef_graph(seed, 1 + seed % 6);
        IntersectionData I(g);
        MinChiResult mc = min_chi(I, MinChiRegion::all());
        MinChiResult orc = min_chi_oracle(I, MinChiRegion::all());
        CHECK(result_equal(mc, orc));
        CHECK(I.chi(mc.min_minimizer) == mc.minimum);
        CHECK(I.chi(mc.max_minimizer) == mc.minimum);
    }
}

TEST_CASE("box regions restrict the search") {
    IntersectionData I(example_dpp());
    CycleVec zmin = laufer_minimal_cycle(I).result;
    MinChiResult boxed = min_chi(I, MinChiRegion::below(zmin));
    CHECK(boxed.minimum == -1);
    CHECK(result_equal(boxed, min_chi_oracle(I, MinChiRegion::below(zmin))));
    for (size_t v = 0; v < zmin.size(); ++v) CHECK(boxed.max_minimizer[v] <= zmin[v]);

    // A frozen coordinate (box entry 0) stays at zero.
    CycleVec frozen = zmin;
    frozen[0] = 0;
    MinChiResult fr = min_chi(I, MinChiRegion::below(frozen));
    CHECK(fr.min_minimizer[0] == 0);
    CHECK(fr.max_minimizer[0] == 0);
    CHECK(result_equal(fr, min_chi_oracle(I, MinChiRegion::below(frozen))));

    CHECK_THROWS_AS(min_chi(I, MinChiRegion::below(CycleVec(10, Int(0)))), DomainError);
    CHECK_THROWS_AS(min_chi(I, MinChiRegion::below(vec({1, 1}))), DomainError);
    CycleVec neg(10, Int(1));
    neg[3] = -1;
    CHECK_THROWS_AS(min_chi(I, MinChiRegion::below(neg)), DomainError);
}

TEST_CASE("threads and branch order do not change the result") {
    IntersectionData I(example_dpp());
    MinChiResult base = min_chi(I, MinChiRegion::all());
    MinChiResult four = min_chi(I, MinChiRegion::all(), {4, false});
    MinChiResult rev = min_chi(I, MinChiRegion::all(), {1, true});
    MinChiResult both = min_chi(I, MinChiRegion::all(), {3, true});
    CHECK(result_equal(base, four));
    CHECK(result_equal(base, rev));
    CHECK(result_equal(base, both));
    for (unsigned long long seed = 1; seed <= 20; ++seed) {
        IntersectionData J(random_negdef_graph(seed, 1 + seed % 6));
        CHECK(result_equal(min_chi(J, MinChiRegion::all()),
                           min_chi(J, MinChiRegion::all(), {2, true})));
    }
}

TEST_CASE("certificate box is sound: enlarging it finds nothing new") {
    for (unsigned long long seed = 1; seed <= 40; ++seed) {
        PlumbingGraph g = random_negdef_graph(seed, 1 + seed % 5);
        IntersectionData I(g);
        MinChiResult mc = min_chi(I, MinChiRegion::all());
        CHECK(mc.certificate.radius >= 0);
        CHECK(I.chi(mc.certificate.witness) == mc.certificate.witness_chi);
        CHECK(mc.minimum <= mc.certificate.witness_chi);
        for (size_t v = 0; v < g.size(); ++v)
            CHECK(mc.max_minimizer[v] <= mc.certificate.bound[v]);
        CycleVec grown = mc.certificate.bound;
        for (auto& b : grown) b += 2;
        MinChiResult wide = min_chi(I, MinChiRegion::below(grown));
        CHECK(result_equal(mc, wide));
    }
}

TEST_CASE("oracle refuses oversized boxes") {
    IntersectionData I(example_dpp());
    CHECK(kOracleDefaultCap == 100000000ULL);
    CHECK_THROWS_WITH_AS(min_chi_oracle(I, MinChiRegion::all()),
                         "enumeration cap exceeded: certified box holds 1239040000 points, "
                         "cap is 100000000",
                         DomainError);
    // Raising the cap makes the same call legal (used by the acceptance gate).
    MinChiResult orc = min_chi_oracle(I, MinChiRegion::all(), 1300000000ULL);
    CHECK(orc.minimum == -1);
    CHECK(orc.minimizer_count == 256);
}

TEST_CASE("huge weights use the exact big-integer enumeration path") {
    ParsedFile f = parse(
        "graph big\n"
        "v a euler=-3000000000000000000\n"
        "v b euler=-2\n"
        "e a b\n");
    IntersectionData I(f.graph);
    // The certified box radius grows with |euler|, so the unbounded oracle
    // would blow the enumeration cap; compare on an explicit box instead.
    MinChiRegion box = MinChiRegion::below(vec({3, 3}));
    MinChiResult mc = min_chi(I, box);
    MinChiResult orc = min_chi_oracle(I, box);
    CHECK(result_equal(mc, orc));
    CHECK(mc.minimum == 1);  // rational: huge weights only sharpen definiteness
}

TEST_CASE("chi is submodular under meet and join") {
    SplitMix64 rng{23};
    for (unsigned long long seed = 1; seed <= 30; ++seed) {
        PlumbingGraph g = random_negdef_graph(seed, 1 + seed % 6);
        IntersectionData I(g);
        for (int k = 0; k < 10; ++k) {
            CycleVec a = random_cycle(rng, g.size(), 8), b = random_cycle(rng, g.size(), 8);
            CycleVec meet(g.size()), join(g.size());
            for (size_t v = 0; v < g.size(); ++v) {
                meet[v] = std::min(a[v], b[v]);
                join[v] = std::max(a[v], b[v]);
            }
            CHECK(I.chi(meet) + I.chi(join) <= I.chi(a) + I.chi(b));
        }
    }
}
