#include "doctest.h"

// The OpenMP kernels and their serial references walk the same blocked
// schedule; outputs must be bit-identical, not merely close.

#include "chu/char_table.hpp"
#include "chu/family.hpp"
#include "chu/group_spec.hpp"
#include "chu/json_io.hpp"
#include "chu/rep.hpp"

using namespace chu;

TEST_CASE("table construction is mode independent") {
    for (const auto& s : {psl2_spec(11), symmetric_spec(5),
                          direct_product_spec({symmetric_spec(4), cyclic_spec(7)})}) {
        GroupTable ser = build_group(s, kDefaultOrderCap, ExecMode::Serial);
        GroupTable par = build_group(s, kDefaultOrderCap, ExecMode::Parallel);
        CHECK(ser.mult == par.mult);
        CHECK(ser.inv == par.inv);
    }
}

TEST_CASE("character tables are mode independent, bit for bit") {
    for (const auto& s : {psl2_spec(7), heisenberg_spec(3), symmetric_spec(4)}) {
        GroupTable g = build_group(s);
        CharTableOptions so, po;
        so.mode = ExecMode::Serial;
        po.mode = ExecMode::Parallel;
        CharacterTable ts = character_table(g, so);
        CharacterTable tp = character_table(g, po);
        CHECK(ts.degrees == tp.degrees);
        REQUIRE(ts.values.size() == tp.values.size());
        for (std::size_t r = 0; r < ts.values.size(); ++r)
            for (std::size_t j = 0; j < ts.values[r].size(); ++j) {
                CHECK(ts.values[r][j].real() == tp.values[r][j].real());
                CHECK(ts.values[r][j].imag() == tp.values[r][j].imag());
            }
    }
}

TEST_CASE("irrep construction is mode independent, bit for bit") {
    GroupTable g = build_group(psl2_spec(5));
    CharacterTable t = character_table(g);
    t.group = &g;
    for (int row : {1, 3, 4}) {
        UnitaryRep rs = irrep_matrices(g, t, row, 0, ExecMode::Serial);
        UnitaryRep rp = irrep_matrices(g, t, row, 0, ExecMode::Parallel);
        for (int x = 0; x < g.order; ++x) {
            CHECK(rs.at(x).rows() == rp.at(x).rows());
            for (int i = 0; i < rs.degree; ++i)
                for (int j = 0; j < rs.degree; ++j) {
                    CHECK(rs.at(x)(i, j).real() == rp.at(x)(i, j).real());
                    CHECK(rs.at(x)(i, j).imag() == rp.at(x)(i, j).imag());
                }
        }
    }
}

TEST_CASE("classification reports are mode independent") {
    FamilySpec f;
    f.tail.kind = TailSpec::Kind::Psl2OddPrimes;
    f.tail.materialize_count = 3;
    f.declared.exp_unbounded = true;
    f.declared.min_degree_unbounded = true;

    FamilyOptions ser, par;
    ser.prefix = par.prefix = 3;
    ser.mode = ExecMode::Serial;
    par.mode = ExecMode::Parallel;
    nlohmann::json a = classification_to_json(classify(f, ser));
    nlohmann::json b = classification_to_json(classify(f, par));
    CHECK(a.dump() == b.dump());
}
