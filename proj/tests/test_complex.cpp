#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "knothom/complex.hpp"

#include <random>
#include <set>

using namespace knothom;

namespace {

BraidWord random_braid(std::mt19937& rng, int max_crossings, int max_strands) {
    std::uniform_int_distribution<int> dc(1, max_crossings), db(2, max_strands), ds(0, 1);
    BraidWord w;
    w.strands = db(rng);
    int c = dc(rng);
    std::uniform_int_distribution<int> di(1, w.strands - 1);
    for (int i = 0; i < c; ++i) w.letters.emplace_back(di(rng), ds(rng) ? 1 : -1);
    return w;
}

std::multiset<std::string> entry_set(const TriComplex& c, const TriDeg& deg) {
    std::multiset<std::string> out;
    if (const PolyMat* m = c.component(deg))
        for (const auto& [ts, p] : *m) out.insert(p.to_string());
    return out;
}

}  // namespace

TEST_CASE("positive crossing complex matches the defining square") {
    // Variables 0,1,2 = x_i, x_j, x_k.
    TriComplex c = crossing_complex(+1, 3, 0, 1, 2);
    REQUIRE(c.num_gens() == 4);
    CHECK(c.gen(0) == TriDeg{0, -2, 0});
    CHECK(c.gen(1) == TriDeg{0, 0, 0});
    CHECK(c.gen(2) == TriDeg{2, -2, -2});
    CHECK(c.gen(3) == TriDeg{0, 0, -2});

    MultiPoly xi = MultiPoly::variable(3, 0), xj = MultiPoly::variable(3, 1),
              xk = MultiPoly::variable(3, 2);
    MultiPoly u = xk - xi, v = xk - xj;
    const PolyMat* dp = c.component(dplus_degree());
    REQUIRE(dp != nullptr);
    REQUIRE(dp->size() == 2);
    CHECK(dp->at({1, 0}) == u);
    CHECK(dp->at({3, 2}) == -(u * v));

    // d_v entries are (x_j - x_k) and 1 up to the fixed sign convention.
    const PolyMat* dv = c.component(dv_degree());
    REQUIRE(dv != nullptr);
    REQUIRE(dv->size() == 2);
    MultiPoly e1 = dv->at({0, 2}), e2 = dv->at({1, 3});
    CHECK((e1 == v || e1 == -v));
    CHECK((e2 == MultiPoly::constant(3, 1) || e2 == MultiPoly::constant(3, -1)));
    CHECK(verify_closed(c).ok);
    CHECK(verify_homogeneous(c).ok);
}

TEST_CASE("negative crossing complex") {
    TriComplex c = crossing_complex(-1, 3, 0, 1, 2);
    REQUIRE(c.num_gens() == 4);
    CHECK(c.gen(0) == TriDeg{0, -2, 2});
    CHECK(c.gen(1) == TriDeg{-2, 0, 2});
    CHECK(c.gen(2) == TriDeg{0, -2, 0});
    CHECK(c.gen(3) == TriDeg{0, 0, 0});
    CHECK(verify_closed(c).ok);
}

TEST_CASE("open crossing with potential is a matrix factorization") {
    for (int sign : {+1, -1}) {
        for (int deg : {1, 2, 3, 4}) {
            Potential p = Potential::monomial(deg);
            TriComplex c = crossing_complex(sign, 3, 0, 1, 2, &p);
            PotentialData pd = potential_data(p, 3, 0, 1, 2);
            IdentityReport rep = verify_open(c, pd.W);
            INFO(rep.detail);
            CHECK(rep.ok);
            CHECK(verify_homogeneous(c).ok);
        }
    }
}

TEST_CASE("tensor: unit object and Leibniz identities") {
    TriComplex a = crossing_complex(+1, 3, 0, 1, 2);
    TriComplex u = TriComplex::unit(3);
    TriComplex au = tensor(a, u);
    CHECK(au.num_gens() == a.num_gens());
    for (int i = 0; i < a.num_gens(); ++i) CHECK(au.gen(i) == a.gen(i));
    CHECK(au.components().size() == a.components().size());

    // Two open crossings on disjoint variables: 16 generators, all identities.
    TriComplex c1 = crossing_complex(+1, 6, 0, 1, 2);
    TriComplex c2 = crossing_complex(-1, 6, 3, 4, 5);
    TriComplex t = tensor(c1, c2);
    CHECK(t.num_gens() == 16);
    CHECK(verify_closed(t).ok);
}

TEST_CASE("tensor adds potentials") {
    Potential p = Potential::monomial(3);
    TriComplex c1 = crossing_complex(+1, 6, 0, 1, 2, &p);
    TriComplex c2 = crossing_complex(+1, 6, 3, 4, 5, &p);
    MultiPoly W = potential_data(p, 6, 0, 1, 2).W + potential_data(p, 6, 3, 4, 5).W;
    IdentityReport rep = verify_open(tensor(c1, c2), W);
    INFO(rep.detail);
    CHECK(rep.ok);
}

TEST_CASE("assemble the unknot") {
    Assembled a = assemble(close_braid(parse_braid("", 1)));
    CHECK(a.C.num_gens() == 1);
    CHECK(a.C.nvars() == 1);
    CHECK(a.C.gen(0) == TriDeg{0, 0, 0});
    CHECK(a.C.components().empty());
    CHECK(a.deficiency == 0);
}

TEST_CASE("assemble closed diagrams: counts and identities") {
    Assembled r2 = assemble(close_braid(parse_braid("1 -1")));
    CHECK(r2.C.num_gens() == 16);
    CHECK(r2.C.nvars() == 3);
    CHECK(r2.deficiency == 0);
    CHECK(verify_closed(r2.C).ok);

    // 6 edges with relation lattice of rank 2: four independent variables.
    Assembled tre = assemble(close_braid(parse_braid("1 1 1")));
    CHECK(tre.C.num_gens() == 64);
    CHECK(tre.C.nvars() == 4);
    CHECK(verify_closed(tre.C).ok);
    CHECK(verify_homogeneous(tre.C).ok);
}

TEST_CASE("identity 2-braid keeps one Koszul closure factor") {
    Assembled id2 = assemble(close_braid(parse_braid("", 2)));
    CHECK(id2.C.num_gens() == 2);
    CHECK(id2.deficiency == 1);
    CHECK(id2.C.nvars() == 2);
    CHECK(id2.C.gen(0) == TriDeg{0, -2, 0});
    CHECK(id2.C.gen(1) == TriDeg{0, 0, 0});
    CHECK(id2.C.components().empty());  // the identification is already zero
}

TEST_CASE("assembled closed complexes with potential satisfy all identities") {
    std::mt19937 rng(31);
    Potential p = Potential::monomial(3);
    for (int rep = 0; rep < 12; ++rep) {
        BraidWord w = random_braid(rng, 3, 3);
        Assembled a = assemble(close_braid(w), &p);
        IdentityReport r = verify_closed(a.C);
        INFO(r.detail);
        CHECK(r.ok);
        CHECK(verify_homogeneous(a.C).ok);
        CHECK(a.C.num_gens() == (1 << (2 * w.letters.size())) << a.deficiency);
    }
}

TEST_CASE("degenerate potential x gives zero d_minus") {
    Potential p = Potential::monomial(1);
    Assembled a = assemble(close_braid(parse_braid("1 1 1")), &p);
    CHECK(a.C.component(dminus_degree(1)) == nullptr);
    CHECK(verify_closed(a.C).ok);
}

TEST_CASE("reduction at the marked edge") {
    Assembled tre = assemble(close_braid(parse_braid("1 1 1")));
    reduce_at_mark(tre);
    CHECK(tre.C.nvars() == 3);
    CHECK(tre.reduced);
    CHECK(verify_closed(tre.C).ok);
    CHECK_THROWS(reduce_at_mark(tre));

    Assembled unknot = assemble(close_braid(parse_braid("", 1)));
    reduce_at_mark(unknot);
    CHECK(unknot.C.nvars() == 0);
    CHECK(unknot.C.num_gens() == 1);
}

TEST_CASE("reduction after assembling with potential keeps identities") {
    Potential p = Potential::monomial(3);
    Assembled a = assemble(close_braid(parse_braid("1 -1")), &p);
    reduce_at_mark(a);
    CHECK(verify_closed(a.C).ok);
    CHECK(a.C.nvars() == 2);
}

TEST_CASE("overall grading shifts") {
    CHECK(overall_shift(0, 1, true) == TriDeg{0, 0, 0});
    CHECK(overall_shift(3, 2, true) == TriDeg{-2, 4, 2});
    CHECK(overall_shift(0, 3, true) == TriDeg{2, 2, -2});
    CHECK(overall_shift(0, 1, false) == TriDeg{1, 0, 0});
}

TEST_CASE("complex dump format") {
    TriComplex c = crossing_complex(+1, 3, 0, 1, 2);
    std::string d = c.dump();
    CHECK(d.find("generators (4)") != std::string::npos);
    CHECK(d.find("->") != std::string::npos);
}
