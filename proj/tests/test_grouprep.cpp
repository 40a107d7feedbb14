#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qga/grouprep.hpp"
#include "qga/realize.hpp"

using namespace qga;

TEST_CASE("two-generator realization: defining relations and basic orders") {
    TwoGenParams t{3, 2, 2, 2, 2, 2};
    Group g = make_two_gen(t);
    CHECK(g.size() == 729);
    Int a = g.generators()[0], b = g.generators()[1];
    Int c = g.commutator(a, b);

    CHECK(g.order_of(a) == 9);
    CHECK(g.order_of(c) == 9);
    // defining relations of the presentation
    CHECK(g.pow(c, ipow(3, t.gamma)) == g.identity());
    CHECK(g.commutator(c, a) == g.identity());
    CHECK(g.commutator(c, b) == g.identity());
    CHECK(g.pow(a, ipow(3, t.alpha)) == g.pow(c, ipow(3, t.rho)));
    CHECK(g.pow(b, ipow(3, t.beta)) == g.pow(c, ipow(3, t.sigma)));

    CHECK(associativity_check(g, 100000));
}

TEST_CASE("two-generator relations hold across the p-good corpus") {
    for (Int n = 3; n <= 6; ++n)
        for (const TwoGenParams& t : p_good_tuples(3, n)) {
            Group g = make_two_gen(t);
            Int a = g.generators()[0], b = g.generators()[1];
            Int c = g.commutator(a, b);
            CHECK(g.pow(c, ipow(3, t.gamma)) == g.identity());
            CHECK(g.commutator(c, a) == g.identity());
            CHECK(g.commutator(c, b) == g.identity());
            CHECK(g.pow(a, ipow(3, t.alpha)) == g.pow(c, ipow(3, t.rho)));
            CHECK(g.pow(b, ipow(3, t.beta)) == g.pow(c, ipow(3, t.sigma)));
            CHECK(associativity_check(g, 20000));
        }
}

TEST_CASE("derived subgroup of G_{(2,2,2;0,2)} has order 9") {
    Group g = make_two_gen({3, 2, 2, 2, 0, 2});
    CHECK(g.size() == 729);
    Subgroup d = derived_subgroup(g);
    CHECK(d.order() == 9);
    Int a = g.generators()[0], b = g.generators()[1];
    CHECK(d.contains(g.commutator(a, b)));
}

TEST_CASE("metacyclic realization matches the paper's structure") {
    for (Int n : {1, 2}) {
        Group g = make_metacyclic(n, 3);
        CHECK(g.size() == ipow(3, 2 * n + 1));
        Int x = g.generators()[0], y = g.generators()[1];
        // y^-1 x y = x^{1+p}
        CHECK(g.conj(x, y) == g.pow(x, 1 + 3));
        Subgroup d = derived_subgroup(g);
        CHECK(d.order() == ipow(3, n));
        CHECK(d == subgroup_generated(g, {g.pow(x, 3)}));
        Subgroup z = center(g);
        CHECK(z.order() == 3);
        CHECK(z == subgroup_generated(g, {g.pow(x, ipow(3, n))}));
        CHECK(g.exponent() == ipow(3, n + 1));
        CHECK(associativity_check(g, 100000));
    }
    // conjugacy class count of the order-27 member
    Group g1 = make_metacyclic(1, 3);
    CHECK(conjugacy_classes(g1).count() == 11);
}

TEST_CASE("class partition sanity on assorted groups") {
    std::vector<Group> groups;
    groups.push_back(make_two_gen({3, 1, 1, 1, 1, 1}));
    groups.push_back(make_metacyclic(1, 3));
    groups.push_back(make_abelian(make_type(3, {1, 2})));
    groups.push_back(realize_maximal_class_81().group);
    for (const Group& g : groups) {
        ConjugacyClasses cc = conjugacy_classes(g);
        Int total = 0;
        for (Int s : cc.sizes) {
            total += s;
            CHECK(g.size() % s == 0);
        }
        CHECK(total == g.size());
        // center == union of singleton classes
        Subgroup z = center(g);
        Int singletons = 0;
        for (Int k = 0; k < cc.count(); ++k)
            if (cc.sizes[static_cast<size_t>(k)] == 1) {
                ++singletons;
                CHECK(z.contains(cc.reps[static_cast<size_t>(k)]));
            }
        CHECK(singletons == z.order());
    }
}

TEST_CASE("polycyclic Nenciu realization") {
    {
        Group g = make_polycyclic(nenciu_presentation(1, 3));
        CHECK(g.size() == 27);
        CHECK(g.exponent() == 3);
        CHECK(nilpotency_class(g) == 2);
    }
    {
        Group g = make_polycyclic(nenciu_presentation(2, 5));
        CHECK(g.size() == 3125);
        CHECK(g.exponent() == 5);
        CHECK(nilpotency_class(g) == 3);
        for (Int gen : g.generators()) CHECK(g.order_of(gen) == 5);
    }
    CHECK_THROWS_AS(nenciu_presentation(3, 2), Error);
}

TEST_CASE("polycyclic spec json round trip and abelian degenerate") {
    PolycyclicSpec spec;
    spec.names = {"u", "v"};
    spec.orders = {3, 9};
    Group g = make_polycyclic(spec);
    CHECK(g.size() == 27);
    CHECK(abelian_type(g, whole_group(g)) == make_type(3, {1, 2}));

    PolycyclicSpec back = PolycyclicSpec::from_json(spec.to_json());
    CHECK(back.names == spec.names);
    CHECK(back.orders == spec.orders);

    // commutator key given as [earlier, later] inverts syntactically
    PolycyclicSpec heis = PolycyclicSpec::from_json(R"({
        "generators": ["a", "b", "c"],
        "orders": [3, 3, 3],
        "commutators": {"[a,b]": [0, 0, 2]}
    })");
    auto it = heis.comm_tails.find({1, 0});
    REQUIRE(it != heis.comm_tails.end());
    CHECK(it->second == std::vector<Int>{0, 0, 1});
    Group h = make_polycyclic(heis);
    CHECK(h.size() == 27);
    CHECK(nilpotency_class(h) == 2);
}

TEST_CASE("inconsistent polycyclic presentation is rejected") {
    // commutator tail pointing at an earlier generator violates triangularity
    PolycyclicSpec bad;
    bad.names = {"a", "b"};
    bad.orders = {3, 3};
    bad.comm_tails[{1, 0}] = {1, 0};
    CHECK_THROWS_AS(make_polycyclic(bad), Error);
}

TEST_CASE("maximal-class control group of order 81") {
    RealizedGroup r = realize_maximal_class_81();
    CHECK(r.group.size() == 81);
    CHECK(nilpotency_class(r.group) == 3);
    CHECK(derived_subgroup(r.group).order() == 9);
    CHECK(center(r.group).order() == 3);
}

TEST_CASE("abelian type census and quotient types") {
    Group g = make_abelian(make_type(3, {1, 1, 2}));
    CHECK(abelian_type(g, whole_group(g)) == make_type(3, {1, 1, 2}));

    // quotient of C3 x C3 x C9 by the first factor
    Subgroup n = subgroup_generated(g, {g.generators()[0]});
    CHECK(quotient_type(g, whole_group(g), n) == make_type(3, {1, 2}));

    // non-abelian rejection
    Group es = make_two_gen({3, 1, 1, 1, 1, 1});
    CHECK_THROWS_AS(abelian_type(es, whole_group(es)), Error);
}

TEST_CASE("quotient types on the Lewis group match the paper") {
    // Z_1/[Z_1,G] = C_p x C_{p^{n-1}} for Lewis n=2
    Group g = make_metacyclic(2, 3);
    Int x = g.generators()[0], y = g.generators()[1];
    Subgroup z1 = subgroup_generated(g, {g.pow(x, 3), g.pow(y, 3)});
    Subgroup k1 = subgroup_generated(g, {g.pow(x, 9)});
    CHECK(quotient_type(g, z1, k1) == make_type(3, {1, 1}));
    Subgroup gprime = derived_subgroup(g);
    CHECK(quotient_type(g, z1, gprime) == make_type(3, {1}));
}

TEST_CASE("quotient group multiplication is consistent") {
    Group g = make_two_gen({3, 2, 2, 2, 2, 2});
    Subgroup d = derived_subgroup(g);
    QuotientGroup q = quotient_group(g, whole_group(g), d);
    CHECK(q.group.size() == 81);
    CHECK(associativity_check(q.group, 20000));
    CHECK(abelian_type(q.group, whole_group(q.group)) == make_type(3, {2, 2}));
    // projection is a homomorphism
    for (Int x : {Int(5), Int(100), Int(700)})
        for (Int y : {Int(3), Int(77), Int(500)})
            CHECK(q.coset_of[static_cast<size_t>(g.mult(x, y))] ==
                  q.group.mult(q.coset_of[static_cast<size_t>(x)], q.coset_of[static_cast<size_t>(y)]));
}

TEST_CASE("normality checks") {
    Group g = make_two_gen({3, 1, 1, 1, 1, 1});
    Int a = g.generators()[0], b = g.generators()[1];
    Subgroup za = subgroup_generated(g, {a});
    CHECK(!is_subgroup_normal(g, za));
    Subgroup z = center(g);
    CHECK(is_subgroup_normal(g, z));
    CHECK_THROWS_AS(quotient_group(g, whole_group(g), za), Error);
    (void)b;
}
