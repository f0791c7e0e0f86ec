#include "doctest.h"

#include "chu/errors.hpp"
#include "chu/json_io.hpp"
#include "chu/witness.hpp"

using namespace chu;

namespace {

FamilySpec psl2_blocks(std::vector<int> primes) {
    FamilySpec f;
    for (int p : primes) f.blocks.push_back({psl2_spec(p), Multiplicity::finite(1)});
    return f;
}

} // namespace

TEST_CASE("tail collapse on the four-prime family") {
    FamilySpec f = psl2_blocks({5, 7, 11, 13});
    CollapseWitness w3 = tail_collapse_index(f, 3);
    CHECK(w3.collapse_index == 2); // min degrees 3,3,5,7
    CHECK(w3.evidence.size() == 4);
    CHECK_FALSE(w3.evidence[0].trivial_on_un);
    CHECK_FALSE(w3.evidence[1].trivial_on_un);
    CHECK(w3.evidence[2].trivial_on_un);
    CHECK(w3.evidence[3].trivial_on_un);

    CollapseWitness w1 = tail_collapse_index(f, 1);
    CHECK(w1.collapse_index == 0); // perfect factors have no nontrivial linears

    CollapseWitness w5 = tail_collapse_index(f, 5);
    CHECK(w5.collapse_index == 3);

    // witness invariants: everything at positions >= m is trivial on U(n),
    // and position m-1 is not (when m > 0)
    for (const CollapseWitness* w : {&w3, &w1, &w5}) {
        for (const auto& e : w->evidence) {
            if (e.position >= w->collapse_index) CHECK(e.trivial_on_un);
        }
        if (w->collapse_index > 0)
            CHECK_FALSE(w->evidence[w->collapse_index - 1].trivial_on_un);
    }
}

TEST_CASE("collapse index is monotone in the degree") {
    FamilySpec f = psl2_blocks({5, 7, 11, 13});
    int prev = 0;
    for (int n = 1; n <= 7; ++n) {
        CollapseWitness w = tail_collapse_index(f, n);
        CHECK(w.collapse_index >= prev);
        prev = w.collapse_index;
    }
}

TEST_CASE("collapse requires a simple non-abelian family") {
    FamilySpec f;
    f.blocks.push_back({symmetric_spec(3), Multiplicity::finite(1)});
    CHECK_THROWS_AS(tail_collapse_index(f, 2), NotSimpleFamily);
}

TEST_CASE("collapse on a psl2 tail extends the materialization as needed") {
    FamilySpec f;
    f.tail.kind = TailSpec::Kind::Psl2OddPrimes;
    f.tail.materialize_count = 2;
    FamilyOptions opt;
    opt.prefix = 2;
    CollapseWitness w = tail_collapse_index(f, 3, opt);
    CHECK(w.collapse_index == 2); // PSL(2,11) is the first trivial factor
    CHECK(w.evidence.size() >= 3);
    CHECK_FALSE(w.tail_note.empty());
}

TEST_CASE("Bohr null sequence on four primes") {
    FamilySpec f = psl2_blocks({5, 7, 11, 13});
    BohrNullWitness w = bohr_null_sequence(f, 4, 3, 0);
    CHECK(w.elements.size() == 4);
    // degree <= 3 reps: trivial, two deg-3 on factor 0, two deg-3 on factor 1
    CHECK(w.reps.size() == 5);
    for (std::size_t r = 0; r < w.reps.size(); ++r) {
        const auto& rep = w.reps[r];
        CHECK(rep.eventual_identity <= 2);
        for (int m = 0; m < w.truncation; ++m) {
            if (m >= rep.eventual_identity) {
                CHECK(w.residuals[r][m] == 0.0); // exactly zero, not just small
            }
        }
        // nontrivial image of a simple group stays far from the identity
        for (int m : rep.support) CHECK(w.residuals[r][m] >= 0.1);
    }
}

TEST_CASE("Bohr witness determinism") {
    FamilySpec f = psl2_blocks({5, 7});
    BohrNullWitness a = bohr_null_sequence(f, 2, 4, 0);
    BohrNullWitness b = bohr_null_sequence(f, 2, 4, 0);
    CHECK(bohr_to_json(a).dump() == bohr_to_json(b).dump());
}

TEST_CASE("Bohr bound-too-small flag") {
    FamilySpec f = psl2_blocks({5, 7});
    CHECK_THROWS_AS(bohr_null_sequence(f, 2, 0, 0), BoundTooSmall);
    CHECK_THROWS_AS(bohr_null_sequence(f, 2, 2, 0), BoundTooSmall); // min degree is 3
}

TEST_CASE("single-factor truncation gives the base case") {
    FamilySpec f = psl2_blocks({5});
    BohrNullWitness w = bohr_null_sequence(f, 1, 4, 0);
    CHECK(w.truncation == 1);
    for (const auto& rep : w.reps) CHECK(rep.eventual_identity <= 1);
}
