#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "knothom/simplify.hpp"

#include <random>

using namespace knothom;

namespace {

MultiPoly rnd_homog(std::mt19937& rng, int nvars, int deg) {
    std::uniform_int_distribution<int> dc(-3, 3);
    MultiPoly p(nvars);
    // A couple of degree-`deg` terms.
    for (int t = 0; t < 2; ++t) {
        Monomial m(nvars);
        int left = deg;
        for (int v = 0; v + 1 < nvars; ++v) {
            std::uniform_int_distribution<int> de(0, left);
            m.e[v] = de(rng);
            left -= m.e[v];
        }
        m.e[nvars - 1] = left;
        p.add_term(m, dc(rng));
    }
    if (p.is_zero()) p = MultiPoly::constant(nvars, 1).is_zero() ? p : MultiPoly::variable(nvars, 0);
    return p;
}

/// Anticommuting square: f, g horizontal, h, e vertical with g*h = -e*f
/// arranged via g = alpha*gamma, e = -beta*gamma, f = alpha, h = beta.
TriComplex random_square(std::mt19937& rng, int nvars, bool plant_unit) {
    std::uniform_int_distribution<int> dd(0, 1);
    MultiPoly alpha = plant_unit ? MultiPoly::constant(nvars, dd(rng) ? 1 : -1)
                                 : rnd_homog(rng, nvars, 1 + dd(rng));
    MultiPoly beta = rnd_homog(rng, nvars, 1);
    MultiPoly gamma = rnd_homog(rng, nvars, 1);
    int da = alpha.is_zero() ? 0 : alpha.degree();
    int db = beta.is_zero() ? 0 : beta.degree();
    int dg = gamma.is_zero() ? 0 : gamma.degree();
    TriComplex c(nvars);
    int bl = c.add_gen({0, -2, -2});
    int tl = c.add_gen({-2 * db, -2, 0});
    int br = c.add_gen({2 - 2 * da, 0, -2});
    int tr = c.add_gen({2 - 2 * da - 2 * dg, 0, 0});
    c.add_entry(br, bl, alpha);                 // f
    c.add_entry(tr, tl, alpha * gamma);         // g
    c.add_entry(tl, bl, beta);                  // h
    c.add_entry(tr, br, -(beta * gamma));       // e
    return c;
}

}  // namespace

TEST_CASE("contractible pair collapses to nothing") {
    TriComplex c(1);
    int a = c.add_gen({0, 0, 0});
    int b = c.add_gen({2, 2, 0});
    c.add_entry(b, a, MultiPoly::constant(1, 1));
    TriComplex r = gaussian_eliminate(c, dplus_degree());
    CHECK(r.num_gens() == 0);
}

TEST_CASE("elimination preserves D^2 = 0 and strips units") {
    std::mt19937 rng(101);
    for (int rep = 0; rep < 20; ++rep) {
        TriComplex c = random_square(rng, 2, true);
        for (int extra = 0; extra < 2; ++extra)
            c = tensor(c, random_square(rng, 2, rep % 2 == 0));
        REQUIRE(verify_closed(c).ok);
        EliminationTrace trace;
        TriComplex r = gaussian_eliminate(c, dplus_degree(), &trace);
        CHECK(verify_closed(r).ok);
        CHECK(r.num_gens() == c.num_gens() - 2 * (int)trace.steps.size());
        if (const PolyMat* m = r.component(dplus_degree()))
            for (const auto& [ts, p] : *m) CHECK(!p.is_unit_constant());
    }
}

TEST_CASE("full simplification terminates and keeps identities") {
    std::mt19937 rng(103);
    for (int rep = 0; rep < 10; ++rep) {
        TriComplex c = random_square(rng, 2, true);
        c = tensor(c, random_square(rng, 2, true));
        TriComplex r = simplify_complex(c);
        CHECK(verify_closed(r).ok);
        CHECK(r.num_gens() <= c.num_gens());
    }
}

TEST_CASE("trace records unit entries") {
    TriComplex c(1);
    int a = c.add_gen({0, 0, 0});
    int b = c.add_gen({2, 2, 0});
    c.add_entry(b, a, MultiPoly::constant(1, -1));
    EliminationTrace t;
    gaussian_eliminate(c, dplus_degree(), &t);
    REQUIRE(t.steps.size() == 1);
    CHECK(t.steps[0].source == a);
    CHECK(t.steps[0].target == b);
    CHECK(t.steps[0].entry == -1);
}

TEST_CASE("isolated d_v pairs are eliminated, connected ones kept") {
    // Pair connected only through d_v: eligible.
    TriComplex c(1);
    int s = c.add_gen({0, 0, 0});
    int t = c.add_gen({0, 0, 2});
    c.add_entry(t, s, MultiPoly::constant(1, 1));
    CHECK(gaussian_eliminate(c, dv_degree()).num_gens() == 0);

    // Same pair with a d_plus arrow out of the source: kept.
    TriComplex c2(1);
    int s2 = c2.add_gen({0, 0, 0});
    int t2 = c2.add_gen({0, 0, 2});
    int u2 = c2.add_gen({2, 2, 0});
    c2.add_entry(t2, s2, MultiPoly::constant(1, 1));
    c2.add_entry(u2, s2, MultiPoly::variable(1, 0));
    CHECK(gaussian_eliminate(c2, dv_degree()).num_gens() == 3);
}
