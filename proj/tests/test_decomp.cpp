#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qga/decomp.hpp"

using namespace qga;

namespace {

NestedGVZData single_layer(Int p, const AbelianPType& ab, const AbelianPType& q,
                           const AbelianPType& q_prev, Int delta) {
    NestedGVZData d;
    d.p = p;
    d.abelianization = ab;
    d.layers.push_back({delta, q, q_prev});
    return d;
}

}  // namespace

TEST_CASE("abelian decompositions") {
    CHECK(decompose_abelian(make_type(3, {})).render() == "Q");
    CHECK(decompose_abelian(make_type(3, {2, 2})).render() == "Q + 4 Q(z3) + 12 Q(z9)");
    CHECK(decompose_abelian(make_type(5, {2})).render() == "Q + Q(z5) + Q(z25)");
}

TEST_CASE("VZ formula") {
    // extraspecial 27, exponent 3
    WeddDecomp d = decompose_vz(3, make_type(3, {1, 1}), make_type(3, {1}), make_type(3, {}), 3);
    CHECK(d.render() == "Q + 4 Q(z3) + M3(Q(z3))");
    CHECK(d.group_order() == 27);

    // Heisenberg analog at p = 5
    WeddDecomp h = decompose_vz(5, make_type(5, {1, 1}), make_type(5, {1}), make_type(5, {}), 5);
    CHECK(h.render() == "Q + 6 Q(z5) + M5(Q(z5))");

    // degenerate: center == center mod derived, sqrt 1 -> abelian part only
    AbelianPType ab = make_type(3, {1, 2});
    WeddDecomp deg = decompose_vz(3, ab, make_type(3, {1, 1}), make_type(3, {1, 1}), 1);
    CHECK(decomp_equal(deg, decompose_abelian(ab)));

    CHECK_THROWS_AS(decompose_vz(2, make_type(2, {1, 1}), make_type(2, {1}), make_type(2, {}), 2),
                    Error);
}

TEST_CASE("nested GVZ formula: worked order-729 example") {
    // G_{(2,2,2;2,2)}: layers delta=1: q=[1,1,1], q'=[1,1]; delta=2: q=[2], q'=[1]
    NestedGVZData d;
    d.p = 3;
    d.abelianization = make_type(3, {2, 2});
    d.layers.push_back({1, make_type(3, {1, 1, 1}), make_type(3, {1, 1})});
    d.layers.push_back({2, make_type(3, {2}), make_type(3, {1})});
    CHECK(d.group_order() == 729);
    WeddDecomp w = decompose_nested_gvz(d);
    CHECK(w.render() == "Q + 4 Q(z3) + 12 Q(z9) + 9 M3(Q(z3)) + M9(Q(z9))");
}

TEST_CASE("nested GVZ formula: Nenciu n=2 p=5 data") {
    NestedGVZData d;
    d.p = 5;
    d.abelianization = make_type(5, {1, 1, 1});
    d.layers.push_back({1, make_type(5, {1, 1}), make_type(5, {1})});
    d.layers.push_back({2, make_type(5, {1}), make_type(5, {})});
    WeddDecomp w = decompose_nested_gvz(d);
    CHECK(w.render() == "Q + 31 Q(z5) + 5 M5(Q(z5)) + M25(Q(z5))");
    CHECK(w.group_order() == 3125);
}

TEST_CASE("single layer equals the VZ formula") {
    // VZ data: center = q, center/G' = q_prev, sqrt = p^delta
    for (Int p : {3, 5}) {
        AbelianPType ab = make_type(p, {1, 1});
        AbelianPType q = make_type(p, {1});
        AbelianPType qp = make_type(p, {});
        WeddDecomp vz = decompose_vz(p, ab, q, qp, p);
        WeddDecomp nested = decompose_nested_gvz(single_layer(p, ab, q, qp, 1));
        CHECK(decomp_equal(vz, nested));
    }
    {
        // larger single-layer instance
        AbelianPType ab = make_type(3, {1, 1, 2});
        AbelianPType q = make_type(3, {1, 2});
        AbelianPType qp = make_type(3, {1, 1});
        WeddDecomp vz = decompose_vz(3, ab, q, qp, 3);
        WeddDecomp nested = decompose_nested_gvz(single_layer(3, ab, q, qp, 1));
        CHECK(decomp_equal(vz, nested));
    }
}

TEST_CASE("degenerate layers contribute nothing") {
    AbelianPType ab = make_type(3, {1, 1});
    AbelianPType q = make_type(3, {1, 1});
    NestedGVZData d = single_layer(3, ab, q, q, 1);
    WeddDecomp w = decompose_nested_gvz(d);
    CHECK(decomp_equal(w, decompose_abelian(ab)));
}

TEST_CASE("decomp equality and canonical ordering") {
    WeddDecomp a(27), b(27);
    a.add(1, 1, 1);
    a.add(4, 1, 3);
    a.add(1, 3, 3);
    b.add(1, 3, 3);
    b.add(2, 1, 3);
    b.add(2, 1, 3);  // merged
    b.add(1, 1, 1);
    CHECK(decomp_equal(a, b));
    CHECK(a.render() == b.render());

    WeddDecomp c(27);
    c.add(1, 1, 1);
    c.add(4, 1, 3);
    c.add(1, 3, 9);
    CHECK(!decomp_equal(a, c));
}

TEST_CASE("json round trip") {
    WeddDecomp d(729);
    d.add(1, 1, 1);
    d.add(4, 1, 3);
    d.add(12, 1, 9);
    d.add(9, 3, 3);
    d.add(1, 9, 9);
    WeddDecomp back = WeddDecomp::from_json(d.to_json());
    CHECK(decomp_equal(d, back));
    CHECK(back.group_order() == 729);
}

TEST_CASE("errors: negative multiplicity and bad prime") {
    NestedGVZData d;
    d.p = 3;
    d.abelianization = make_type(3, {1, 1});
    // q has FEWER cyclic subgroups of order 3 than q_prev: a_d < a'_d
    d.layers.push_back({1, make_type(3, {2}), make_type(3, {1, 1})});
    // invariant: |q_prev| divides |q| holds (9 | 9), exp divides (3 | 9)
    CHECK_THROWS_AS(decompose_nested_gvz(d), Error);

    NestedGVZData even;
    even.p = 2;
    even.abelianization = make_type(2, {1});
    CHECK_THROWS_AS(decompose_nested_gvz(even), Error);
}

TEST_CASE("dimension conservation on random synthetic data") {
    std::mt19937 rng(2024);
    auto rand_type = [&](Int p, Int max_rank, Int max_exp) {
        std::vector<Int> exps;
        Int rank = static_cast<Int>(rng() % static_cast<unsigned>(max_rank + 1));
        for (Int i = 0; i < rank; ++i) exps.push_back(1 + static_cast<Int>(rng() % static_cast<unsigned>(max_exp)));
        return make_type(p, exps);
    };
    Int accepted = 0, rejected = 0, inconsistent = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        Int p = (rng() % 2) ? 3 : 5;
        NestedGVZData d;
        d.p = p;
        d.abelianization = rand_type(p, 3, 3);
        Int nlayers = 1 + static_cast<Int>(rng() % 2);
        Int delta = 0;
        for (Int i = 0; i < nlayers; ++i) {
            delta += 1 + static_cast<Int>(rng() % 2);
            d.layers.push_back({delta, rand_type(p, 3, 3), rand_type(p, 2, 3)});
        }
        bool valid = true;
        try {
            d.validate();
        } catch (const Error&) {
            valid = false;
            ++rejected;
        }
        if (!valid) continue;
        try {
            WeddDecomp w = decompose_nested_gvz(d);
            CHECK(w.dimension() == w.group_order());
            CHECK(w.group_order() == d.group_order());
            ++accepted;
        } catch (const Error& e) {
            // the only legal rejection after validation is NegativeMultiplicity
            CHECK(e.code() == Errc::NegativeMultiplicity);
            ++inconsistent;
        }
    }
    // the generator must exercise all three outcomes
    CHECK(accepted > 0);
    CHECK(rejected > 0);
    CHECK(inconsistent > 0);
}
