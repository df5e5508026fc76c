#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dualk/k_report.hpp"
#include "support/generators.hpp"

using namespace dualk;

namespace {

DuBoisTable table(int p, int q, std::size_t b)
{
    DuBoisTable t;
    t.entries[{p, q}] = b;
    return t;
}

PicardInput picard3(std::vector<FgAbGroup> ns, IntMatrix map)
{
    PicardInput pi;
    pi.n = 3;
    pi.levels = {{0, ns[0], 0}, {1, ns[1], 0}};
    pi.ns_maps = {Hom(ns[0], ns[1], std::move(map))};
    return pi;
}

KhReport triangle_report()
{
    const FgAbGroup z3 = FgAbGroup::free(3);
    return kh_report(gen::simplex_skeleton(3, 3, 2), picard3({z3, z3}, IntMatrix{{1, -1, 0}, {1, 0, -1}, {0, 1, -1}}),
                     FieldMode::algebraically_closed);
}

KhReport zero_report()
{
    return kh_report(gen::simplex_skeleton(3, 3, 3), picard3({FgAbGroup{}, FgAbGroup{}}, IntMatrix(0, 0)),
                     FieldMode::algebraically_closed);
}

} // namespace

TEST_CASE("nk descriptors by substitution")
{
    const NkDescriptor three = nk_descriptor(table(0, 2, 3), 3);
    CHECK(three.v_dim == 3);
    CHECK(three.shape == "3-dim V ⊗ tQ[t]");

    const NkDescriptor zero = nk_descriptor(table(0, 2, 0), 3);
    CHECK(zero.is_zero());
    CHECK(zero.shape == "0");

    CHECK(nk_descriptor(table(0, 3, 1), 4).v_dim == 1);
}

TEST_CASE("missing and non-isolated entries are refused")
{
    try {
        nk_descriptor(table(1, 1, 2), 3);
        FAIL("expected MissingEntry");
    } catch (const MissingEntry& e) {
        CHECK(e.p() == 0);
        CHECK(e.q() == 2);
    }
    DuBoisTable curve = table(0, 2, 1);
    curve.isolated = false;
    CHECK_THROWS_AS(nk_descriptor(curve, 3), NonIsolatedSingularity);
    CHECK_THROWS_AS(k_report(zero_report(), std::vector<DuBoisTable>{}), MissingEntry);
}

TEST_CASE("triangle cycle K_{-2}")
{
    const KReport r = k_report(triangle_report(), table(0, 2, 2));
    CHECK(r.v_dim == 2);
    CHECK_FALSE(r.k_equals_kh);
    CHECK(r.n3_corollary);
    CHECK(r.surjectivity_note);
    CHECK(r.k_shape == "0 → k^2 → K_{-2}(X) → Z^2 → 0");
}

TEST_CASE("vanishing b^{0,n-1} gives K = KH")
{
    const KReport r = k_report(triangle_report(), table(0, 2, 0));
    CHECK(r.k_equals_kh);
    CHECK(r.k_shape == "K_{-2}(X) ≅ Z^2");
}

TEST_CASE("zero KH leaves only the vector space")
{
    const KReport r = k_report(zero_report(), table(0, 2, 5));
    CHECK(r.v_dim == 5);
    CHECK(r.k_shape == "K_{-2}(X) ≅ k^5");
}

TEST_CASE("several isolated points add up")
{
    DuBoisTable a = table(0, 2, 1);
    DuBoisTable b = table(0, 2, 3);
    b.point = "x1";
    const KReport r = k_report(triangle_report(), {a, b});
    CHECK(r.v_dim == 4);
    CHECK(r.nk.size() == 2);
    CHECK_FALSE(r.n3_corollary);
}

TEST_CASE("k_report is a pure function of its inputs")
{
    const KReport a = k_report(triangle_report(), table(0, 2, 2));
    const KReport b = k_report(triangle_report(), table(0, 2, 2));
    CHECK(a.k_shape == b.k_shape);
    CHECK(a.nk_shape == b.nk_shape);
    CHECK(a.v_dim == b.v_dim);
}
