#include "doctest.h"

#include <algorithm>
#include <set>

#include "chu/char_table.hpp"
#include "chu/errors.hpp"
#include "chu/group_spec.hpp"
#include "oracle.hpp"

using namespace chu;

namespace {

std::multiset<int> degree_multiset(const CharacterTable& t) {
    return {t.degrees.begin(), t.degrees.end()};
}

void check_column_orthogonality(const CharacterTable& t) {
    const int k = t.count();
    const GroupTable& g = *t.group;
    for (int a = 0; a < k; ++a)
        for (int b = a; b < k; ++b) {
            Complex acc = 0;
            for (int r = 0; r < k; ++r) acc += t.values[r][a] * std::conj(t.values[r][b]);
            double want = a == b ? static_cast<double>(g.order) / t.classes.sizes[a] : 0.0;
            CHECK(std::abs(acc - Complex(want, 0)) < 1e-6 * std::max(1.0, want));
        }
}

void check_against_oracle(const GroupTable& g, const CharacterTable& t) {
    auto oc = oracle::regular_rep_characters(g);
    REQUIRE(oc.degrees.size() == static_cast<std::size_t>(t.count()));
    std::multiset<int> od(oc.degrees.begin(), oc.degrees.end());
    CHECK(od == degree_multiset(t));
    // every oracle row matches exactly one table row class-wise
    for (std::size_t r = 0; r < oc.values.size(); ++r) {
        int matches = 0;
        for (int s = 0; s < t.count(); ++s) {
            double diff = 0;
            for (int j = 0; j < t.count(); ++j)
                diff = std::max(diff, std::abs(oc.values[r][j] - t.values[s][j]));
            if (diff < 1e-4) ++matches;
        }
        CHECK(matches == 1);
    }
    CHECK(oracle_min_nontrivial_degree(oc) == min_nontrivial_degree(t));
    CHECK(oracle_mdus(oc, g) == mdus(t));
}

} // namespace

TEST_CASE("character table golden degrees") {
    auto degrees_of = [](const GroupSpec& s) {
        GroupTable g = build_group(s);
        return degree_multiset(character_table(g));
    };
    CHECK(degrees_of(symmetric_spec(3)) == std::multiset<int>{1, 1, 2});
    CHECK(degrees_of(symmetric_spec(4)) == std::multiset<int>{1, 1, 2, 3, 3});
    CHECK(degrees_of(psl2_spec(5)) == std::multiset<int>{1, 3, 3, 4, 5});
    CHECK(degrees_of(psl2_spec(7)) == std::multiset<int>{1, 3, 3, 6, 7, 8});
    CHECK(degrees_of(quaternion8_spec()) == std::multiset<int>{1, 1, 1, 1, 2});
    CHECK(degrees_of(dihedral_spec(4)) == std::multiset<int>{1, 1, 1, 1, 2});
    CHECK(degrees_of(heisenberg_spec(3)) ==
          std::multiset<int>{1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3});
}

TEST_CASE("cyclic(2) table is exact") {
    GroupTable g = build_group(cyclic_spec(2));
    CharacterTable t = character_table(g);
    REQUIRE(t.count() == 2);
    CHECK(t.values[0][0] == Complex(1, 0));
    CHECK(t.values[0][1] == Complex(1, 0));
    CHECK(t.values[1][0] == Complex(1, 0));
    CHECK(t.values[1][1] == Complex(-1, 0));
}

TEST_CASE("tables agree with the regular-representation oracle") {
    for (const auto& s : {symmetric_spec(3), symmetric_spec(4), quaternion8_spec(),
                          dihedral_spec(4), heisenberg_spec(3), cyclic_spec(6),
                          psl2_spec(5)}) {
        GroupTable g = build_group(s);
        check_against_oracle(g, character_table(g));
    }
}

TEST_CASE("column orthogonality holds on the goldens") {
    for (const auto& s : {symmetric_spec(4), psl2_spec(5), heisenberg_spec(3),
                          dihedral_spec(6)}) {
        GroupTable g = build_group(s);
        check_column_orthogonality(character_table(g));
    }
}

TEST_CASE("distinct rows are separated by a clear value gap") {
    // the 1e-4 equivalence tolerance sits far below the actual row gaps
    for (const auto& s : {symmetric_spec(3), symmetric_spec(4), quaternion8_spec(),
                          psl2_spec(5), psl2_spec(7), heisenberg_spec(3)}) {
        GroupTable g = build_group(s);
        CharacterTable t = character_table(g);
        for (int a = 0; a < t.count(); ++a)
            for (int b = a + 1; b < t.count(); ++b) {
                double gap = 0;
                for (int j = 0; j < t.count(); ++j)
                    gap = std::max(gap, std::abs(t.values[a][j] - t.values[b][j]));
                CHECK(gap >= 1e-2);
            }
    }
}

TEST_CASE("kernels of characters") {
    GroupTable g = build_group(symmetric_spec(3));
    CharacterTable t = character_table(g);
    // rows sorted by degree: 0 trivial or sign, 2 the degree-2 row
    int trivial_row = t.is_trivial_row(0) ? 0 : 1;
    int sign_row = 1 - trivial_row;
    CHECK(kernel_of_character(t, trivial_row).is_whole_group());
    CHECK(kernel_of_character(t, sign_row).order() == 3);
    CHECK(kernel_of_character(t, 2).is_trivial());
}

TEST_CASE("mdus golden values") {
    CHECK(mdus(build_group(cyclic_spec(5))) == 1);
    CHECK(mdus(build_group(cyclic_spec(12))) == 1);
    CHECK(mdus(build_group(symmetric_spec(3))) == 2);
    CHECK(mdus(build_group(quaternion8_spec())) == 2);
    CHECK(mdus(build_group(psl2_spec(5))) == 3);
    CHECK(mdus(build_group(cyclic_spec(1))) == 1); // trivial group
}

TEST_CASE("mdus of a direct product is the max over factors") {
    std::vector<GroupSpec> pool = {symmetric_spec(3), cyclic_spec(4), quaternion8_spec(),
                                   heisenberg_spec(2)};
    for (const auto& a : pool)
        for (const auto& b : pool) {
            GroupTable ga = build_group(a);
            GroupTable gb = build_group(b);
            GroupTable prod = build_group(direct_product_spec({a, b}));
            CHECK(mdus(prod) == std::max(mdus(ga), mdus(gb)));
        }
}

TEST_CASE("min_nontrivial_degree goldens") {
    CHECK(min_nontrivial_degree(character_table(build_group(psl2_spec(7)))) == 3);
    CHECK(min_nontrivial_degree(character_table(build_group(psl2_spec(11)))) == 5);
    CHECK(min_nontrivial_degree(character_table(build_group(symmetric_spec(3)))) == 1);
    GroupTable trivial = build_group(cyclic_spec(1));
    CharacterTable tt = character_table(trivial);
    CHECK_THROWS_AS(min_nontrivial_degree(tt), TrivialGroup);
}

TEST_CASE("simple non-abelian groups: min degree = mdus = min faithful degree") {
    for (int p : {5, 7, 11}) {
        GroupTable g = build_group(psl2_spec(p));
        CharacterTable t = character_table(g);
        t.group = &g;
        int mindeg = min_nontrivial_degree(t);
        CHECK(mdus(t) == mindeg);
        CHECK(*min_faithful_degree(t) == mindeg);
    }
}

TEST_CASE("min_faithful_degree") {
    CHECK(*min_faithful_degree(character_table(build_group(symmetric_spec(3)))) == 2);
    CHECK(*min_faithful_degree(character_table(build_group(cyclic_spec(6)))) == 1);
    auto v4 = character_table(build_group(direct_product_spec({cyclic_spec(2), cyclic_spec(2)})));
    CHECK_FALSE(min_faithful_degree(v4).has_value());
}

TEST_CASE("r_partition blocks") {
    GroupTable s3 = build_group(symmetric_spec(3));
    CharacterTable t3 = character_table(s3);
    RPartition p = r_partition(s3, t3, 1);
    REQUIRE(p.blocks.size() == 1);
    CHECK(p.blocks[0].size() == 2); // both linear rows restrict trivially to A3

    GroupTable h3 = build_group(heisenberg_spec(3));
    CharacterTable th = character_table(h3);
    RPartition ph = r_partition(h3, th, 1);
    REQUIRE(ph.blocks.size() == 1);
    CHECK(ph.blocks[0].size() == 9);
    RPartition ph3 = r_partition(h3, th, 3);
    CHECK(ph3.blocks.size() == 2); // the two degree-3 rows differ on the center

    GroupTable p5 = build_group(psl2_spec(5));
    CharacterTable t5 = character_table(p5);
    RPartition pp = r_partition(p5, t5, 3);
    REQUIRE(pp.blocks.size() == 2); // perfect group: R refines to singletons
    CHECK(pp.blocks[0].size() == 1);
    CHECK(pp.blocks[1].size() == 1);

    RPartition none = r_partition(s3, t3, 5);
    CHECK(none.no_such_degree);
    CHECK(none.blocks.empty());

    // blocks partition the degree-n rows: each row appears exactly once
    for (const auto* tp : {&t3, &th, &t5}) {
        for (int n = 1; n <= 3; ++n) {
            RPartition part = r_partition(*tp->group, *tp, n);
            std::set<int> seen;
            std::size_t total = 0;
            for (const auto& b : part.blocks) {
                total += b.size();
                for (int r : b) {
                    CHECK(tp->degrees[r] == n);
                    seen.insert(r);
                }
            }
            CHECK(seen.size() == total);
        }
    }
}

TEST_CASE("faithful quotient counts") {
    GroupTable s3 = build_group(symmetric_spec(3));
    CHECK(faithful_quotient_count(s3, 2).count == 3); // H in {1, A3, S3}
    CHECK(faithful_quotient_count(s3, 1).count == 2); // S3 has no faithful linear
    GroupTable c4 = build_group(cyclic_spec(4));
    CHECK(faithful_quotient_count(c4, 1).count == 3); // all quotients cyclic
    GroupTable big = build_group(psl2_spec(13));
    CHECK_THROWS_AS(faithful_quotient_count(big, 3, 1000), CapExceeded);
}

TEST_CASE("image exponent on the derived subgroup") {
    GroupTable h3 = build_group(heisenberg_spec(3));
    CharacterTable th = character_table(h3);
    for (int r = 0; r < th.count(); ++r) {
        int e = image_exponent_on_derived(th, r);
        if (th.degrees[r] == 1)
            CHECK(e == 1);
        else
            CHECK(e == 3); // center maps to scalar cube roots of unity
    }
    GroupTable s3 = build_group(symmetric_spec(3));
    CharacterTable t3 = character_table(s3);
    CHECK(image_exponent_on_derived(t3, 2) == 3);
}

TEST_CASE("class count cap and abelian cap") {
    CharTableOptions opt;
    opt.abelian_cap = 10;
    CHECK_THROWS_AS(character_table(build_group(cyclic_spec(40)), opt), CapExceeded);
    opt = {};
    opt.order_cap = 20;
    CHECK_THROWS_AS(character_table(build_group(symmetric_spec(4)), opt), CapExceeded);
}
