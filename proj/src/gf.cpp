#include "chu/gf.hpp"

#include <algorithm>

#include "chu/errors.hpp"
#include "chu/rng.hpp"

namespace chu {

std::uint64_t GF::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1 % q;
    a %= q;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

bool miller_rabin_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL,
                            31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    GF f{n};
    // deterministic witness set for 64-bit inputs
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL,
                            31ULL, 37ULL}) {
        std::uint64_t x = f.pow(a, d);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = f.mul(x, x);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t find_splitting_prime(std::uint64_t e, std::uint64_t lower_bound,
                                   std::uint64_t c_max) {
    for (std::uint64_t c = 1; c <= c_max; ++c) {
        std::uint64_t q = c * e + 1;
        if (q <= lower_bound) continue;
        if (miller_rabin_prime(q)) return q;
    }
    throw NoSuitablePrime("no prime q = c*" + std::to_string(e) + "+1 found with c <= " +
                          std::to_string(c_max));
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> fs;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

std::uint64_t primitive_root(const GF& f) {
    auto fs = prime_factors(f.q - 1);
    for (std::uint64_t g = 2; g < f.q; ++g) {
        bool ok = true;
        for (std::uint64_t r : fs)
            if (f.pow(g, (f.q - 1) / r) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw NumericalFailure("no primitive root found (q not prime?)");
}

GFMatrix GFMatrix::identity(int n) {
    GFMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

GFMatrix gf_matmul(const GF& f, const GFMatrix& x, const GFMatrix& y) {
    GFMatrix z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            std::uint64_t v = x.at(i, k);
            if (!v) continue;
            for (int j = 0; j < y.cols; ++j)
                z.at(i, j) = f.add(z.at(i, j), f.mul(v, y.at(k, j)));
        }
    return z;
}

namespace {

// Row echelon form; returns pivot column per pivot row.
std::vector<int> gf_echelon(const GF& f, GFMatrix& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int p = -1;
        for (int r = row; r < m.rows; ++r)
            if (m.at(r, col) != 0) {
                p = r;
                break;
            }
        if (p < 0) continue;
        if (p != row)
            for (int c = 0; c < m.cols; ++c) std::swap(m.at(p, c), m.at(row, c));
        std::uint64_t iv = f.inv(m.at(row, col));
        for (int c = col; c < m.cols; ++c) m.at(row, c) = f.mul(m.at(row, c), iv);
        for (int r = 0; r < m.rows; ++r) {
            if (r == row || m.at(r, col) == 0) continue;
            std::uint64_t factor = m.at(r, col);
            for (int c = col; c < m.cols; ++c)
                m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(row, c)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

GFMatrix gf_nullspace(const GF& f, GFMatrix m) {
    const int n = m.cols;
    auto pivots = gf_echelon(f, m);
    std::vector<char> is_pivot(n, 0);
    for (int c : pivots) is_pivot[c] = 1;
    std::vector<int> free_cols;
    for (int c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    GFMatrix basis(n, static_cast<int>(free_cols.size()));
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        int fc = free_cols[k];
        basis.at(fc, static_cast<int>(k)) = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            basis.at(pivots[r], static_cast<int>(k)) = f.neg(m.at(static_cast<int>(r), fc));
    }
    return basis;
}

GFMatrix gf_solve(const GF& f, GFMatrix a, GFMatrix b) {
    const int n = a.cols;
    GFMatrix aug(a.rows, n + b.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols; ++j) aug.at(i, n + j) = b.at(i, j);
    }
    auto pivots = gf_echelon(f, aug);
    if (static_cast<int>(pivots.size()) < n || pivots[n - 1] >= n)
        throw NumericalFailure("gf_solve: matrix does not have full column rank");
    GFMatrix x(n, b.cols);
    for (int r = 0; r < n; ++r)
        for (int j = 0; j < b.cols; ++j) x.at(pivots[r], j) = aug.at(r, n + j);
    // rows past the pivots must be consistent (zero); trust callers here
    return x;
}

GFPoly gf_poly_trim(GFPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

GFPoly gf_poly_mul(const GF& f, const GFPoly& a, const GFPoly& b) {
    if (a.empty() || b.empty()) return {};
    GFPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = f.add(c[i + j], f.mul(a[i], b[j]));
    }
    return c;
}

GFPoly gf_poly_mod(const GF& f, GFPoly a, const GFPoly& b) {
    a = gf_poly_trim(std::move(a));
    const int db = static_cast<int>(b.size()) - 1;
    std::uint64_t lead_inv = f.inv(b.back());
    while (static_cast<int>(a.size()) - 1 >= db) {
        int da = static_cast<int>(a.size()) - 1;
        std::uint64_t c = f.mul(a.back(), lead_inv);
        for (int i = 0; i <= db; ++i)
            a[da - db + i] = f.sub(a[da - db + i], f.mul(c, b[i]));
        a = gf_poly_trim(std::move(a));
    }
    return a;
}

GFPoly gf_poly_gcd(const GF& f, GFPoly a, GFPoly b) {
    a = gf_poly_trim(std::move(a));
    b = gf_poly_trim(std::move(b));
    while (!b.empty()) {
        GFPoly r = gf_poly_mod(f, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        std::uint64_t iv = f.inv(a.back());
        for (auto& c : a) c = f.mul(c, iv);
    }
    return a;
}

GFPoly gf_poly_derivative(const GF& f, const GFPoly& p) {
    GFPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(f.mul(p[i], f.reduce(i)));
    return gf_poly_trim(std::move(d));
}

GFPoly gf_poly_powmod(const GF& f, GFPoly base, std::uint64_t e, const GFPoly& m) {
    GFPoly r = {1};
    base = gf_poly_mod(f, std::move(base), m);
    while (e) {
        if (e & 1) r = gf_poly_mod(f, gf_poly_mul(f, r, base), m);
        base = gf_poly_mod(f, gf_poly_mul(f, base, base), m);
        e >>= 1;
    }
    return r;
}

GFPoly gf_charpoly(const GF& f, GFMatrix m) {
    const int n = m.rows;
    // Hessenberg form by similarity (row op + matching inverse column op)
    for (int c = 0; c + 2 < n; ++c) {
        int piv = -1;
        for (int r = c + 1; r < n; ++r)
            if (m.at(r, c) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != c + 1) {
            for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(c + 1, j));
            for (int i = 0; i < n; ++i) std::swap(m.at(i, piv), m.at(i, c + 1));
        }
        std::uint64_t piv_inv = f.inv(m.at(c + 1, c));
        for (int r = c + 2; r < n; ++r) {
            std::uint64_t t = f.mul(m.at(r, c), piv_inv);
            if (!t) continue;
            for (int j = 0; j < n; ++j) m.at(r, j) = f.sub(m.at(r, j), f.mul(t, m.at(c + 1, j)));
            for (int i = 0; i < n; ++i) m.at(i, c + 1) = f.add(m.at(i, c + 1), f.mul(t, m.at(i, r)));
        }
    }

    // char polys of leading principal Hessenberg minors
    std::vector<GFPoly> p(n + 1);
    p[0] = {1};
    for (int k = 1; k <= n; ++k) {
        // p_k = (x - h[k-1][k-1]) p_{k-1} - sum over lower tails
        GFPoly xk(2);
        xk[0] = f.neg(m.at(k - 1, k - 1));
        xk[1] = 1;
        GFPoly acc = gf_poly_mul(f, xk, p[k - 1]);
        std::uint64_t run = 1;
        for (int i = k - 1; i >= 1; --i) {
            run = f.mul(run, m.at(i, i - 1)); // subdiagonal product h_{i,i-1}...
            if (run == 0) break;
            std::uint64_t coef = f.mul(run, m.at(i - 1, k - 1));
            if (!coef) continue;
            // acc -= coef * p_{i-1}
            if (acc.size() < p[i - 1].size()) acc.resize(p[i - 1].size(), 0);
            for (std::size_t t = 0; t < p[i - 1].size(); ++t)
                acc[t] = f.sub(acc[t], f.mul(coef, p[i - 1][t]));
        }
        p[k] = gf_poly_trim(std::move(acc));
        p[k].resize(k + 1, 0); // keep degree-k shape even if trailing zeros trimmed
    }
    return p[n];
}

namespace {

void gf_roots_rec(const GF& f, const GFPoly& p, Rng& rng, std::vector<std::uint64_t>& out) {
    if (p.size() <= 1) return;
    if (p.size() == 2) {
        out.push_back(f.mul(f.neg(p[0]), f.inv(p[1])));
        return;
    }
    // equal-degree splitting: gcd with (x+a)^((q-1)/2) - 1 for random a
    for (int attempt = 0; attempt < 128; ++attempt) {
        std::uint64_t a = rng.next_u64() % f.q;
        GFPoly xa = {a, 1};
        GFPoly h = gf_poly_powmod(f, xa, (f.q - 1) / 2, p);
        if (h.empty())
            h = {f.q - 1};
        else
            h[0] = f.sub(h[0], 1);
        GFPoly g = gf_poly_gcd(f, h, p);
        if (g.size() > 1 && g.size() < p.size()) {
            GFPoly rest = p;
            // rest = p / g via repeated subtraction of quotient terms
            GFPoly quot(p.size() - g.size() + 1, 0);
            GFPoly rem = p;
            std::uint64_t gl = f.inv(g.back());
            while (rem.size() >= g.size() && !rem.empty()) {
                std::size_t shift = rem.size() - g.size();
                std::uint64_t c = f.mul(rem.back(), gl);
                quot[shift] = c;
                for (std::size_t i = 0; i < g.size(); ++i)
                    rem[shift + i] = f.sub(rem[shift + i], f.mul(c, g[i]));
                rem = gf_poly_trim(std::move(rem));
            }
            gf_roots_rec(f, g, rng, out);
            gf_roots_rec(f, gf_poly_trim(std::move(quot)), rng, out);
            return;
        }
    }
    throw NumericalFailure("root splitting did not converge (polynomial may not split)");
}

} // namespace

std::vector<std::uint64_t> gf_roots(const GF& f, const GFPoly& p, std::uint64_t seed) {
    GFPoly sf = gf_poly_trim(p);
    if (sf.empty()) throw NumericalFailure("gf_roots on the zero polynomial");
    // squarefree part: p / gcd(p, p')
    GFPoly d = gf_poly_derivative(f, sf);
    if (!d.empty()) {
        GFPoly g = gf_poly_gcd(f, sf, d);
        if (g.size() > 1) {
            // sf = sf / g
            GFPoly quot(sf.size() - g.size() + 1, 0);
            GFPoly rem = sf;
            std::uint64_t gl = f.inv(g.back());
            while (rem.size() >= g.size() && !rem.empty()) {
                std::size_t shift = rem.size() - g.size();
                std::uint64_t c = f.mul(rem.back(), gl);
                quot[shift] = c;
                for (std::size_t i = 0; i < g.size(); ++i)
                    rem[shift + i] = f.sub(rem[shift + i], f.mul(c, g[i]));
                rem = gf_poly_trim(std::move(rem));
            }
            sf = gf_poly_trim(std::move(quot));
        }
    }
    // keep only the part splitting over GF(q): gcd(sf, x^q - x)
    GFPoly xq = gf_poly_powmod(f, {0, 1}, f.q, sf); // x^q mod sf
    if (xq.size() < 2) xq.resize(2, 0);
    xq[1] = f.sub(xq[1], 1); // x^q - x mod sf
    GFPoly split = gf_poly_gcd(f, sf, gf_poly_trim(std::move(xq)));
    if (split.size() != sf.size())
        throw NumericalFailure("polynomial does not split over GF(q)");

    std::vector<std::uint64_t> roots;
    Rng rng(seed ^ (f.q * 0x9e3779b97f4a7c15ULL));
    gf_roots_rec(f, sf, rng, roots);
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace chu
