#include "doctest.h"

#include <algorithm>
#include <set>

#include "chu/errors.hpp"
#include "chu/group_spec.hpp"
#include "chu/rng.hpp"

using namespace chu;

namespace {

std::multiset<int> class_size_multiset(const GroupTable& g) {
    auto cd = conjugacy_classes(g);
    return {cd.sizes.begin(), cd.sizes.end()};
}

} // namespace

TEST_CASE("cyclic groups") {
    GroupTable g = build_group(cyclic_spec(6));
    CHECK(g.order == 6);
    CHECK(exponent(g) == 6);
    CHECK(is_abelian(g));
    auto cd = conjugacy_classes(g);
    CHECK(cd.count() == 6); // n singleton classes
    for (int s : cd.sizes) CHECK(s == 1);
    CHECK(element_order(g, 1) == 6); // generator
    CHECK(element_order(g, 0) == 1);
    CHECK(commutator_subgroup(g).is_trivial());
    CHECK(center(g).is_whole_group());
}

TEST_CASE("symmetric group S3") {
    GroupTable g = build_group(symmetric_spec(3));
    CHECK(g.order == 6);
    CHECK(class_size_multiset(g) == std::multiset<int>{1, 2, 3});
    CHECK(exponent(g) == 6);
    CHECK_FALSE(is_simple(g));
    CHECK(center(g).is_trivial());

    Subgroup derived = commutator_subgroup(g);
    CHECK(derived.order() == 3);
    CHECK(derived.is_normal);
    CHECK(exponent(derived) == 3);

    GroupTable q = quotient(g, derived);
    CHECK(q.order == 2);

    // any 3-cycle has order 3
    int three_cycles = 0;
    for (int x = 0; x < g.order; ++x)
        if (element_order(g, x) == 3) ++three_cycles;
    CHECK(three_cycles == 2);
}

TEST_CASE("S4 and its derived series") {
    GroupTable g = build_group(symmetric_spec(4));
    CHECK(g.order == 24);
    CHECK(class_size_multiset(g) == std::multiset<int>{1, 3, 6, 6, 8});
    Subgroup a4 = commutator_subgroup(g);
    CHECK(a4.order() == 12);
    GroupTable a4t = materialize(a4);
    CHECK(commutator_subgroup(a4t).order() == 4); // Klein four group
}

TEST_CASE("quaternion and dihedral groups of order 8") {
    GroupTable q8 = build_group(quaternion8_spec());
    CHECK(q8.order == 8);
    CHECK(center(q8).order() == 2);
    CHECK(exponent(q8) == 4);
    int involutions = 0;
    for (int x = 1; x < 8; ++x)
        if (element_order(q8, x) == 2) ++involutions;
    CHECK(involutions == 1); // -1 only

    GroupTable d4 = build_group(dihedral_spec(4));
    CHECK(d4.order == 8);
    CHECK(center(d4).order() == 2);
    involutions = 0;
    for (int x = 1; x < 8; ++x)
        if (element_order(d4, x) == 2) ++involutions;
    CHECK(involutions == 5);
    CHECK(commutator_subgroup(d4).order() == 2);
}

TEST_CASE("PSL(2,p) construction") {
    GroupTable g5 = build_group(psl2_spec(5));
    CHECK(g5.order == 60);
    CHECK(is_simple(g5));
    CHECK(is_perfect(g5));
    CHECK(exponent(g5) == 30); // element orders 1,2,3,5

    GroupTable g7 = build_group(psl2_spec(7));
    CHECK(g7.order == 168);
    CHECK(conjugacy_classes(g7).count() == 6);
    CHECK(is_simple(g7));

    for (int p : {5, 7, 11, 13}) {
        GroupTable g = build_group(psl2_spec(p));
        CHECK(g.order == p * (p * p - 1) / 2);
    }
    CHECK_THROWS_AS(build_group(psl2_spec(4)), InvalidSpec);
    CHECK_THROWS_AS(build_group(psl2_spec(9)), InvalidSpec);
    CHECK_THROWS_AS(build_group(psl2_spec(2)), InvalidSpec);
    CHECK_THROWS_AS(build_group(psl2_spec(37)), CapExceeded);
}

TEST_CASE("Heisenberg groups mod m") {
    GroupTable h3 = build_group(heisenberg_spec(3));
    CHECK(h3.order == 27);
    CHECK(exponent(h3) == 3);
    Subgroup z = center(h3);
    CHECK(z.order() == 3);
    Subgroup derived = commutator_subgroup(h3);
    CHECK(derived.members == z.members); // extraspecial: G' = Z(G)
    GroupTable q = quotient(h3, z);
    CHECK(q.order == 9);
    CHECK(is_abelian(q));

    GroupTable h2 = build_group(heisenberg_spec(2));
    CHECK(h2.order == 8);
    CHECK(exponent(h2) == 4); // isomorphic to D4
    CHECK_THROWS_AS(build_group(heisenberg_spec(1)), InvalidSpec);
}

TEST_CASE("semidirect product C3 : C2 with inversion matches S3") {
    GroupTable sd = build_group(semidirect_inversion_spec(cyclic_spec(3), cyclic_spec(2)));
    GroupTable s3 = build_group(symmetric_spec(3));
    CHECK(sd.order == 6);
    CHECK(class_size_multiset(sd) == class_size_multiset(s3));
    CHECK(exponent(sd) == exponent(s3));
    CHECK(commutator_subgroup(sd).order() == 3);
}

TEST_CASE("semidirect action validation") {
    // inversion by C3 is not a homomorphism into Aut(C5)
    GroupSpec bad = semidirect_inversion_spec(cyclic_spec(5), cyclic_spec(3));
    CHECK_THROWS_AS(build_group(bad), InvalidSpec);

    // explicit permutation that is not an automorphism
    GroupSpec s;
    s.kind = GroupSpec::Kind::Semidirect;
    s.children = {cyclic_spec(3), cyclic_spec(2)};
    s.action_perms = {{0, 1, 2}, {1, 0, 2}};
    CHECK_THROWS_AS(build_group(s), InvalidSpec);
}

TEST_CASE("direct products") {
    GroupTable g = build_group(direct_product_spec({symmetric_spec(3), cyclic_spec(2)}));
    CHECK(g.order == 12);
    CHECK(exponent(g) == 6);
    CHECK(commutator_subgroup(g).order() == 3);

    GroupTable v4 = build_group(direct_product_spec({cyclic_spec(2), cyclic_spec(2)}));
    CHECK(is_abelian(v4));
    CHECK(exponent(v4) == 2);
}

TEST_CASE("quotient by the trivial subgroup is the group itself") {
    GroupTable g = build_group(symmetric_spec(3));
    GroupTable q = quotient(g, trivial_subgroup(g));
    CHECK(q.order == g.order);
    CHECK(class_size_multiset(q) == class_size_multiset(g));
    CHECK(exponent(q) == exponent(g));
}

TEST_CASE("quotient rejects non-normal subgroups") {
    GroupTable g = build_group(symmetric_spec(3));
    // a 2-element subgroup generated by a transposition is not normal
    int transposition = -1;
    for (int x = 1; x < g.order; ++x)
        if (element_order(g, x) == 2) {
            transposition = x;
            break;
        }
    Subgroup h = generated_subgroup(g, {transposition});
    CHECK(h.order() == 2);
    CHECK_FALSE(h.is_normal);
    CHECK_THROWS_AS(quotient(g, h), NotNormal);
}

TEST_CASE("simplicity detection") {
    CHECK(is_simple(build_group(psl2_spec(5))));
    CHECK(is_simple(build_group(cyclic_spec(7)))); // prime order
    CHECK_FALSE(is_simple(build_group(cyclic_spec(6))));
    CHECK_FALSE(is_simple(build_group(symmetric_spec(3))));
    GroupTable trivial = build_group(cyclic_spec(1));
    CHECK_THROWS_AS(is_simple(trivial), TrivialGroup);
}

TEST_CASE("subgroup enumeration on D4 and S3") {
    GroupTable d4 = build_group(dihedral_spec(4));
    CHECK(all_subgroups(d4).size() == 10);
    GroupTable s3 = build_group(symmetric_spec(3));
    CHECK(all_subgroups(s3).size() == 6);
    CHECK(all_normal_subgroups(s3).size() == 3); // 1, A3, S3
    CHECK(min_index_abelian_subgroup(s3) == 2);
    CHECK(min_index_abelian_subgroup(build_group(heisenberg_spec(3))) == 3);
}

TEST_CASE("exponent divides the order; element orders divide the exponent") {
    Rng rng(99);
    std::vector<GroupSpec> specs = {symmetric_spec(4), dihedral_spec(6), quaternion8_spec(),
                                    heisenberg_spec(4), psl2_spec(7),
                                    direct_product_spec({cyclic_spec(4), dihedral_spec(3)})};
    for (const auto& s : specs) {
        GroupTable g = build_group(s);
        int e = exponent(g);
        CHECK(g.order % e == 0);
        for (int i = 0; i < 25; ++i) {
            int x = static_cast<int>(rng.next_below(g.order));
            CHECK(e % element_order(g, x) == 0);
        }
        // class sizes sum to |G|, identity class is a singleton
        auto cd = conjugacy_classes(g);
        int total = 0;
        for (int sz : cd.sizes) total += sz;
        CHECK(total == g.order);
        CHECK(cd.sizes[0] == 1);
        CHECK(cd.reps[0] == 0);
        // G/G' is abelian
        GroupTable ab = quotient(g, commutator_subgroup(g));
        CHECK(is_abelian(ab));
    }
}

TEST_CASE("from_table specs normalize the identity to index 0") {
    // C3 written with the identity at index 2
    nlohmann::json j = {{"from_table",
                         {{"order", 3},
                          {"mult", {{1, 2, 0}, {2, 0, 1}, {0, 1, 2}}},
                          {"labels", {"a", "b", "e"}}}}};
    GroupTable g = build_group(parse_group_spec(j));
    CHECK(g.order == 3);
    CHECK(g.labels[0] == "e");
    CHECK(exponent(g) == 3);
}

TEST_CASE("group spec JSON round trip") {
    std::vector<GroupSpec> specs = {
        cyclic_spec(12), symmetric_spec(4), dihedral_spec(5), quaternion8_spec(), psl2_spec(11),
        heisenberg_spec(3), direct_product_spec({cyclic_spec(2), psl2_spec(5)}),
        semidirect_inversion_spec(cyclic_spec(9), cyclic_spec(2))};
    for (const auto& s : specs) {
        GroupSpec back = parse_group_spec(group_spec_to_json(s));
        CHECK(back.canonical_key() == s.canonical_key());
    }
    CHECK_THROWS_AS(parse_group_spec(nlohmann::json{{"nonsense", 3}}), InvalidSpec);
}

TEST_CASE("order cap is enforced") {
    CHECK_THROWS_AS(build_group(cyclic_spec(100), 50), CapExceeded);
    CHECK_THROWS_AS(build_group(direct_product_spec({psl2_spec(11), psl2_spec(11)})),
                    CapExceeded);
}
