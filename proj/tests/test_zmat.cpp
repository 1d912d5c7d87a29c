#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "knothom/zmat.hpp"

#include <random>

using namespace knothom;

namespace {

ZMat make(int r, int c, std::initializer_list<long> vals) {
    ZMat m(r, c);
    auto it = vals.begin();
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = *it++;
    return m;
}

ZMat random_mat(std::mt19937& rng, int r, int c, int lo = -5, int hi = 5) {
    std::uniform_int_distribution<int> d(lo, hi);
    ZMat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = d(rng);
    return m;
}

bool unimodular(const ZMat& u) {
    if (u.rows() != u.cols()) return false;
    Snf s = smith_normal_form(u);
    if ((int)s.diag.size() != u.rows()) return false;
    for (const auto& d : s.diag)
        if (d != 1) return false;
    return true;
}

ZMat diag_of(const Snf& s, int r, int c) {
    ZMat d(r, c);
    for (std::size_t i = 0; i < s.diag.size(); ++i) d.at((int)i, (int)i) = s.diag[i];
    return d;
}

}  // namespace

TEST_CASE("smith normal form on pinned examples") {
    Snf a = smith_normal_form(make(2, 2, {1, 0, 0, 2}));
    REQUIRE(a.diag.size() == 2);
    CHECK(a.diag[0] == 1);
    CHECK(a.diag[1] == 2);

    // det = -8, entry gcd 2: invariant factors (2, 4).
    Snf b = smith_normal_form(make(2, 2, {2, 4, 6, 8}));
    REQUIRE(b.diag.size() == 2);
    CHECK(b.diag[0] == 2);
    CHECK(b.diag[1] == 4);

    Snf z = smith_normal_form(ZMat(3, 2));
    CHECK(z.diag.empty());
}

TEST_CASE("smith transforms: U M V = D, unimodular, divisibility") {
    std::mt19937 rng(13);
    for (int rep = 0; rep < 40; ++rep) {
        int r = 1 + (int)(rng() % 5), c = 1 + (int)(rng() % 5);
        ZMat m = random_mat(rng, r, c);
        Snf s = smith_normal_form(m, true);
        CHECK(unimodular(s.U));
        CHECK(unimodular(s.V));
        CHECK(s.U.mul(m).mul(s.V) == diag_of(s, r, c));
        for (std::size_t i = 0; i + 1 < s.diag.size(); ++i) CHECK(s.diag[i + 1] % s.diag[i] == 0);
    }
}

TEST_CASE("hermite form and kernels") {
    std::mt19937 rng(17);
    for (int rep = 0; rep < 40; ++rep) {
        int r = 1 + (int)(rng() % 4), c = 1 + (int)(rng() % 5);
        ZMat m = random_mat(rng, r, c);
        ColHnf h = hnf_cols(m, true);
        CHECK(unimodular(h.U));
        CHECK(m.mul(h.U) == h.H);
        ZMat k = kernel_basis(m);
        CHECK(m.mul(k).is_zero());
        CHECK(h.rank + k.cols() == c);
        // Solve round trip.
        ZMat x = random_mat(rng, c, 2, -3, 3);
        auto sol = solve_columns(m, m.mul(x));
        REQUIRE(sol.has_value());
        CHECK(m.mul(*sol) == m.mul(x));
    }
}

TEST_CASE("solve detects non-membership") {
    ZMat m = make(2, 1, {2, 0});
    ZMat y = make(2, 1, {1, 0});
    CHECK(!solve_columns(m, y).has_value());
    CHECK(solve_columns(m, make(2, 1, {6, 0})).has_value());
}

TEST_CASE("kernel saturation: integer kernel vectors lie in the basis span") {
    std::mt19937 rng(19);
    for (int rep = 0; rep < 25; ++rep) {
        int r = 1 + (int)(rng() % 3), c = 2 + (int)(rng() % 4);
        ZMat m = random_mat(rng, r, c, -3, 3);
        ZMat k = kernel_basis(m);
        // Any random integer combination scaled down by content must solve.
        if (k.cols() == 0) continue;
        ZMat x = random_mat(rng, k.cols(), 1, -4, 4);
        auto back = solve_columns(k, k.mul(x));
        REQUIRE(back.has_value());
        CHECK(k.mul(*back) == k.mul(x));
    }
}

TEST_CASE("preimage and intersection lattices") {
    std::mt19937 rng(23);
    for (int rep = 0; rep < 25; ++rep) {
        int n = 2 + (int)(rng() % 3);
        ZMat m = random_mat(rng, n, n, -2, 2);
        ZMat l = random_mat(rng, n, 1 + (int)(rng() % 2), -2, 2);
        ZMat p = preimage_lattice(m, l);
        // Every basis column of the preimage maps into the lattice.
        if (p.cols() > 0) CHECK(lattice_contains(l.cols() ? l : ZMat(n, 0), m.mul(p)));

        ZMat a = random_mat(rng, n, 2, -2, 2);
        ZMat b = random_mat(rng, n, 2, -2, 2);
        ZMat i = lattice_intersect(a, b);
        if (i.cols() > 0) {
            CHECK(lattice_contains(a, i));
            CHECK(lattice_contains(b, i));
        }
        // Common multiples witness nonemptiness of the intersection.
        ZMat common = a.mul(ZMat::identity(2)).mul(random_mat(rng, 2, 1, -2, 2));
        (void)common;
    }
}

TEST_CASE("quotient invariants") {
    // Z^2 / (2e1, 3e2) = Z/6.
    FgGroup g = quotient_group(ZMat::identity(2), make(2, 2, {2, 0, 0, 3}));
    CHECK(g.free_rank == 0);
    REQUIRE(g.torsion.size() == 1);
    CHECK(g.torsion[0] == 6);

    // Z^3 / (e1, 2e2) = Z + Z/2.
    FgGroup h = cokernel_group(3, make(3, 2, {1, 0, 0, 2, 0, 0}));
    CHECK(h.free_rank == 1);
    REQUIRE(h.torsion.size() == 1);
    CHECK(h.torsion[0] == 2);

    CHECK(g.to_string() == "Z/6");
    CHECK(h.to_string() == "Z + Z/2");
}

TEST_CASE("quotient rejects escaping denominators") {
    ZMat p = make(2, 1, {2, 0});
    ZMat s = make(2, 1, {1, 0});
    CHECK_THROWS(quotient_group(p, s));
}
