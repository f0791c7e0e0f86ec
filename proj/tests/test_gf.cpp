#include "doctest.h"

#include <algorithm>

#include "chu/errors.hpp"
#include "chu/gf.hpp"
#include "chu/rng.hpp"

using namespace chu;

namespace {

// determinant by Gaussian elimination, for cross-checking the char poly
std::uint64_t gf_det(const GF& f, GFMatrix m) {
    std::uint64_t det = 1;
    for (int col = 0; col < m.cols; ++col) {
        int piv = -1;
        for (int r = col; r < m.rows; ++r)
            if (m.at(r, col) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != col) {
            for (int c = 0; c < m.cols; ++c) std::swap(m.at(piv, c), m.at(col, c));
            det = f.neg(det);
        }
        det = f.mul(det, m.at(col, col));
        std::uint64_t inv = f.inv(m.at(col, col));
        for (int r = col + 1; r < m.rows; ++r) {
            std::uint64_t t = f.mul(m.at(r, col), inv);
            if (!t) continue;
            for (int c = col; c < m.cols; ++c)
                m.at(r, c) = f.sub(m.at(r, c), f.mul(t, m.at(col, c)));
        }
    }
    return det;
}

std::uint64_t poly_eval(const GF& f, const GFPoly& p, std::uint64_t x) {
    std::uint64_t acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = f.add(f.mul(acc, x), *it);
    return acc;
}

} // namespace

TEST_CASE("characteristic polynomial matches det(xI - A) pointwise") {
    const GF f{101};
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(6));
        GFMatrix a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a.at(i, j) = rng.next_below(101);
        GFPoly cp = gf_charpoly(f, a);
        REQUIRE(static_cast<int>(cp.size()) == n + 1);
        CHECK(cp.back() == 1); // monic
        for (std::uint64_t x = 0; x < 101; x += 7) {
            GFMatrix shifted = a;
            for (int i = 0; i < n; ++i) shifted.at(i, i) = f.sub(f.reduce(x), a.at(i, i));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (i != j) shifted.at(i, j) = f.neg(a.at(i, j));
            CHECK(poly_eval(f, cp, x) == gf_det(f, shifted));
        }
    }
}

TEST_CASE("root extraction recovers planted roots") {
    const GF f{577};
    Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::uint64_t> roots;
        int count = 1 + static_cast<int>(rng.next_below(6));
        for (int i = 0; i < count; ++i) roots.push_back(rng.next_below(577));
        std::sort(roots.begin(), roots.end());
        roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
        GFPoly p = {1};
        for (std::uint64_t r : roots) p = gf_poly_mul(f, p, {f.neg(r), 1});
        // a repeated factor must not confuse the squarefree pass
        if (trial % 3 == 0 && !roots.empty()) p = gf_poly_mul(f, p, {f.neg(roots[0]), 1});
        auto got = gf_roots(f, p, trial);
        CHECK(got == roots);
    }
}

TEST_CASE("nullspace columns are actual kernel vectors") {
    const GF f{65537};
    Rng rng(11);
    GFMatrix a(6, 4);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 4; ++j) a.at(i, j) = rng.next_below(65537);
    // duplicate two columns to force rank 4 on 6 columns
    GFMatrix wide(6, 6);
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 4; ++j) wide.at(i, j) = a.at(i, j);
        wide.at(i, 4) = a.at(i, 0);
        wide.at(i, 5) = f.add(a.at(i, 1), a.at(i, 2));
    }
    GFMatrix ns = gf_nullspace(f, wide);
    CHECK(ns.cols == 2);
    GFMatrix image = gf_matmul(f, wide, ns);
    for (int i = 0; i < image.rows; ++i)
        for (int j = 0; j < image.cols; ++j) CHECK(image.at(i, j) == 0);
}

TEST_CASE("splitting prime search") {
    std::uint64_t q = find_splitting_prime(6, 4); // exp(S3), 2*sqrt(6) < 5
    CHECK(q == 7);
    CHECK(miller_rabin_prime(q));
    std::uint64_t q2 = find_splitting_prime(546, 66); // PSL(2,13)
    CHECK(q2 == 547);
    CHECK((q2 - 1) % 546 == 0);
    CHECK_THROWS_AS(find_splitting_prime(6, 1000000000000ULL, 10), NoSuitablePrime);
}

TEST_CASE("primitive roots have full order") {
    for (std::uint64_t q : {7ULL, 547ULL, 3673ULL}) {
        GF f{q};
        std::uint64_t g = primitive_root(f);
        for (std::uint64_t r : prime_factors(q - 1)) CHECK(f.pow(g, (q - 1) / r) != 1);
        CHECK(f.pow(g, q - 1) == 1);
    }
}

TEST_CASE("miller rabin on small and carmichael numbers") {
    CHECK(miller_rabin_prime(2));
    CHECK(miller_rabin_prime(3));
    CHECK_FALSE(miller_rabin_prime(1));
    CHECK_FALSE(miller_rabin_prime(561));  // carmichael
    CHECK_FALSE(miller_rabin_prime(8911)); // carmichael
    CHECK(miller_rabin_prime(2147483647ULL));
    CHECK_FALSE(miller_rabin_prime(2147483647ULL * 3));
}
