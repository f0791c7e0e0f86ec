#pragma once

#include <cstdint>
#include <vector>

namespace chu {

/// Arithmetic mod a prime q (q can exceed 2^32, so products go through
/// 128-bit intermediates). Field elements are canonical residues in [0, q).
struct GF {
    std::uint64_t q;

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        return s >= q ? s - q : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
        return a >= b ? a - b : a + q - b;
    }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q);
    }
    std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : q - a; }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t inv(std::uint64_t a) const { return pow(a, q - 2); }
    std::uint64_t reduce(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(q);
        return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(q) : r);
    }
};

bool miller_rabin_prime(std::uint64_t n);

/// Smallest prime q = c*e + 1 with q > lower_bound, c up to c_max.
/// Throws NoSuitablePrime when the search is exhausted.
std::uint64_t find_splitting_prime(std::uint64_t e, std::uint64_t lower_bound,
                                   std::uint64_t c_max = 1000000);

std::vector<std::uint64_t> prime_factors(std::uint64_t n);
std::uint64_t primitive_root(const GF& f);

/// Dense matrix over GF(q), row-major.
struct GFMatrix {
    int rows = 0, cols = 0;
    std::vector<std::uint64_t> a;

    GFMatrix() = default;
    GFMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
    std::uint64_t& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    std::uint64_t at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
    static GFMatrix identity(int n);
};

GFMatrix gf_matmul(const GF& f, const GFMatrix& x, const GFMatrix& y);

/// Basis (columns) of the nullspace of m. Result has m.cols rows.
GFMatrix gf_nullspace(const GF& f, GFMatrix m);

/// Solves a * x = b for x (a must have full column rank; b may have many
/// columns). Returns a.cols x b.cols.
GFMatrix gf_solve(const GF& f, GFMatrix a, GFMatrix b);

/// Polynomials over GF(q), coefficient vectors with p[i] the x^i
/// coefficient; normalized so the leading coefficient is nonzero.
using GFPoly = std::vector<std::uint64_t>;

GFPoly gf_poly_trim(GFPoly p);
GFPoly gf_poly_mul(const GF& f, const GFPoly& a, const GFPoly& b);
GFPoly gf_poly_mod(const GF& f, GFPoly a, const GFPoly& b);
GFPoly gf_poly_gcd(const GF& f, GFPoly a, GFPoly b);
GFPoly gf_poly_derivative(const GF& f, const GFPoly& p);
/// base^e mod m
GFPoly gf_poly_powmod(const GF& f, GFPoly base, std::uint64_t e, const GFPoly& m);

/// Characteristic polynomial of a square matrix (monic, degree n), via
/// Hessenberg reduction by similarity transforms. Exact over GF(q).
GFPoly gf_charpoly(const GF& f, GFMatrix m);

/// All roots in GF(q) of a polynomial that splits into linear factors
/// (repeated roots reported once), sorted ascending. `seed` drives the
/// equal-degree splitting so runs are reproducible.
std::vector<std::uint64_t> gf_roots(const GF& f, const GFPoly& p, std::uint64_t seed);

} // namespace chu
