#include "chu/char_table.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chu/errors.hpp"
#include "chu/gf.hpp"

namespace chu {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// e^{2*pi*i*num/den}; the four axis angles come out exact.
Complex unit_root(long long num, long long den) {
    num %= den;
    if (num < 0) num += den;
    if (num == 0) return {1.0, 0.0};
    if (2 * num == den) return {-1.0, 0.0};
    if (4 * num == den) return {0.0, 1.0};
    if (4 * num == 3 * den) return {0.0, -1.0};
    double a = kTwoPi * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(a), std::sin(a)};
}

std::pair<long long, long long> grid_key(Complex v) {
    return {std::llround(v.real() / kValueGridTol), std::llround(v.imag() / kValueGridTol)};
}

void sort_rows(CharacterTable& t) {
    const int k = t.count();
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    auto key = [&](int r) {
        std::vector<std::pair<long long, long long>> v;
        v.reserve(k);
        for (int j = 0; j < k; ++j) v.push_back(grid_key(t.values[r][j]));
        return v;
    };
    std::vector<std::vector<std::pair<long long, long long>>> keys(k);
    for (int r = 0; r < k; ++r) keys[r] = key(r);
    // ascending degree, then descending value vectors: the trivial character
    // lands first and ties are impossible between distinct rows
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
        if (t.degrees[a] != t.degrees[b]) return t.degrees[a] < t.degrees[b];
        return keys[a] > keys[b];
    });
    std::vector<int> deg;
    std::vector<std::vector<Complex>> vals;
    for (int r : perm) {
        deg.push_back(t.degrees[r]);
        vals.push_back(std::move(t.values[r]));
    }
    t.degrees = std::move(deg);
    t.values = std::move(vals);
}

void check_invariants(const CharacterTable& t) {
    const GroupTable& g = *t.group;
    const int k = t.count();
    if (k != t.classes.count())
        throw NumericalFailure("character count does not match class count");
    long long sum_sq = 0;
    for (int d : t.degrees) sum_sq += static_cast<long long>(d) * d;
    if (sum_sq != g.order)
        throw NumericalFailure("sum of squared degrees is " + std::to_string(sum_sq) +
                               ", expected " + std::to_string(g.order));
    int trivial = 0;
    for (int r = 0; r < k; ++r)
        if (t.is_trivial_row(r)) ++trivial;
    if (trivial != 1) throw NumericalFailure("expected exactly one trivial character");
    for (int r = 0; r < k; ++r) {
        if (t.values[r][0] != Complex(static_cast<double>(t.degrees[r]), 0.0))
            throw NumericalFailure("value at the identity class is not the exact degree");
    }
    for (int r = 0; r < k; ++r)
        for (int s = r; s < k; ++s) {
            Complex acc = 0;
            for (int j = 0; j < k; ++j)
                acc += static_cast<double>(t.classes.sizes[j]) * t.values[r][j] *
                       std::conj(t.values[s][j]);
            acc /= static_cast<double>(g.order);
            Complex want = r == s ? Complex(1, 0) : Complex(0, 0);
            if (std::abs(acc - want) > kOrthogonalityTol)
                throw NumericalFailure("row orthogonality residual too large");
        }
}

// ---------------------------------------------------------------------------
// abelian path: build the character group along a generator tower
// ---------------------------------------------------------------------------

struct Angle { // e^{2*pi*i*num/den}
    long long num = 0;
    long long den = 1;
};

Angle angle_reduce(long long num, long long den) {
    num %= den;
    if (num < 0) num += den;
    long long g = std::gcd(num, den);
    if (g == 0) g = 1;
    return {num / g, den / g};
}

Angle angle_add(Angle a, Angle b) {
    long long den = a.den / std::gcd(a.den, b.den) * b.den;
    return angle_reduce(a.num * (den / a.den) + b.num * (den / b.den), den);
}

Angle angle_scale(Angle a, long long t) { return angle_reduce(a.num * t, a.den); }

CharacterTable abelian_table(const GroupTable& g, const CharTableOptions& opt) {
    const int n = g.order;
    if (n > opt.abelian_cap)
        throw CapExceeded("abelian character table capped at order " +
                          std::to_string(opt.abelian_cap));

    std::vector<char> in_span(n, 0);
    in_span[0] = 1;
    std::vector<int> span = {0};
    // chars[c][x] defined for x in span
    std::vector<std::vector<Angle>> chars = {std::vector<Angle>(n)};

    for (int h = 1; h < n; ++h) {
        if (in_span[h]) continue;
        // s = least power landing back in the current span
        int s = 1, p = h;
        while (!in_span[p]) {
            p = g.at(p, h);
            ++s;
        }
        std::vector<std::vector<Angle>> next;
        next.reserve(chars.size() * s);
        for (const auto& chi : chars) {
            Angle base = chi[p]; // chi(h^s)
            for (int kk = 0; kk < s; ++kk) {
                Angle ah = angle_reduce(base.num + static_cast<long long>(kk) * base.den,
                                        base.den * s);
                std::vector<Angle> ext = chi;
                int ht = 0; // h^t
                for (int tpow = 1; tpow < s; ++tpow) {
                    ht = g.at(ht, h);
                    Angle part = angle_scale(ah, tpow);
                    for (int x : span) ext[g.at(ht, x)] = angle_add(part, chi[x]);
                }
                next.push_back(std::move(ext));
            }
        }
        chars = std::move(next);
        int ht = 0;
        std::vector<int> grown = span;
        for (int tpow = 1; tpow < s; ++tpow) {
            ht = g.at(ht, h);
            for (int x : span) {
                int y = g.at(ht, x);
                in_span[y] = 1;
                grown.push_back(y);
            }
        }
        span = std::move(grown);
    }
    if (static_cast<int>(chars.size()) != n)
        throw NumericalFailure("abelian character count mismatch");

    CharacterTable t;
    t.group = &g;
    t.classes = conjugacy_classes(g); // singletons; class j = element reps[j]
    t.degrees.assign(n, 1);
    t.values.resize(n);
    for (int c = 0; c < n; ++c) {
        t.values[c].resize(n);
        for (int j = 0; j < n; ++j) {
            Angle a = chars[c][t.classes.reps[j]];
            t.values[c][j] = unit_root(a.num, a.den);
        }
    }
    sort_rows(t);
    check_invariants(t);
    return t;
}

// ---------------------------------------------------------------------------
// Dixon-Schneider path
// ---------------------------------------------------------------------------

GFMatrix class_matrix(const GF& f, const GroupTable& g, const ConjugacyData& cd, int i,
                      ExecMode mode) {
    const int k = cd.count();
    std::vector<std::uint32_t> counts(static_cast<std::size_t>(k) * k, 0);
    // a_{ijt} = #{x in C_i : x^-1 g_t in C_j}; column t is independent work
    parallel_for(
        static_cast<std::size_t>(k),
        [&](std::size_t t) {
            int gt = cd.reps[t];
            for (int x : cd.members[i]) {
                int y = g.at(g.inv[x], gt);
                counts[static_cast<std::size_t>(cd.class_of[y]) * k + t] += 1;
            }
        },
        mode);
    GFMatrix m(k, k);
    for (int j = 0; j < k; ++j)
        for (int t = 0; t < k; ++t)
            m.at(j, t) = counts[static_cast<std::size_t>(j) * k + t] % f.q;
    return m;
}

CharacterTable dixon_schneider(const GroupTable& g, const CharTableOptions& opt) {
    const ConjugacyData cd = conjugacy_classes(g);
    const int k = cd.count();
    if (k > opt.class_cap)
        throw CapExceeded("class count " + std::to_string(k) + " exceeds the working cap " +
                          std::to_string(opt.class_cap));

    const int e = exponent(g);
    const auto lower = static_cast<std::uint64_t>(2.0 * std::sqrt(static_cast<double>(g.order)));
    const GF f{find_splitting_prime(static_cast<std::uint64_t>(e), lower)};

    // inverse-class map and power maps on class representatives
    std::vector<int> inv_class(k);
    for (int j = 0; j < k; ++j) inv_class[j] = cd.class_of[g.inv[cd.reps[j]]];
    std::vector<int> rep_order(k);
    std::vector<std::vector<int>> power_class(k);
    for (int j = 0; j < k; ++j) {
        rep_order[j] = element_order(g, cd.reps[j]);
        power_class[j].resize(rep_order[j]);
        int cur = 0;
        for (int s = 0; s < rep_order[j]; ++s) {
            power_class[j][s] = cd.class_of[cur];
            cur = g.at(cur, cd.reps[j]);
        }
    }

    // split GF(q)^k into the joint eigenspaces of the class matrices
    std::vector<GFMatrix> spaces = {GFMatrix::identity(k)};
    for (int i = 1; i < k; ++i) {
        bool all_split = std::all_of(spaces.begin(), spaces.end(),
                                     [](const GFMatrix& w) { return w.cols == 1; });
        if (all_split) break;
        GFMatrix mi = class_matrix(f, g, cd, i, opt.mode);
        std::vector<GFMatrix> next;
        for (auto& w : spaces) {
            if (w.cols == 1) {
                next.push_back(std::move(w));
                continue;
            }
            GFMatrix mw = gf_matmul(f, mi, w);
            GFMatrix a = gf_solve(f, w, mw); // action of M_i on the subspace
            GFPoly cp = gf_charpoly(f, a);
            auto roots = gf_roots(f, cp, opt.seed + 0x44495849ULL + i);
            if (roots.size() == 1) {
                next.push_back(std::move(w));
                continue;
            }
            for (std::uint64_t lambda : roots) {
                GFMatrix shifted = a;
                for (int d = 0; d < a.rows; ++d)
                    shifted.at(d, d) = f.sub(shifted.at(d, d), lambda);
                GFMatrix ns = gf_nullspace(f, shifted);
                if (ns.cols == 0) throw NumericalFailure("empty eigenspace during splitting");
                next.push_back(gf_matmul(f, w, ns));
            }
        }
        spaces = std::move(next);
    }
    for (const auto& w : spaces)
        if (w.cols != 1)
            throw NumericalFailure("class matrices failed to split the Burnside algebra");

    const auto n_mod = f.reduce(g.order);
    std::vector<std::uint64_t> size_inv(k);
    for (int j = 0; j < k; ++j) size_inv[j] = f.inv(f.reduce(cd.sizes[j]));

    // root-of-unity lift setup
    std::uint64_t z = f.pow(primitive_root(f), (f.q - 1) / static_cast<std::uint64_t>(e));

    CharacterTable t;
    t.group = &g;
    t.classes = cd;
    t.degrees.resize(k);
    t.values.assign(k, {});

    const int sqrt_n = static_cast<int>(std::sqrt(static_cast<double>(g.order))) + 1;
    for (int c = 0; c < k; ++c) {
        // central character omega, normalized at the identity class
        std::vector<std::uint64_t> w(k);
        if (spaces[c].at(0, 0) == 0)
            throw NumericalFailure("eigenvector vanishes at the identity class");
        std::uint64_t norm = f.inv(spaces[c].at(0, 0));
        for (int j = 0; j < k; ++j) w[j] = f.mul(spaces[c].at(j, 0), norm);

        // degree from the norm relation: d^2 * sum_j w_j w_{j*} / h_j = |G|
        std::uint64_t s = 0;
        for (int j = 0; j < k; ++j)
            s = f.add(s, f.mul(f.mul(w[j], w[inv_class[j]]), size_inv[j]));
        if (s == 0) throw NumericalFailure("degenerate degree relation");
        std::uint64_t d2 = f.mul(n_mod, f.inv(s));
        int degree = 0;
        for (int d = 1; d <= sqrt_n; ++d)
            if (f.mul(f.reduce(d), f.reduce(d)) == d2) {
                degree = d;
                break;
            }
        if (degree == 0) throw NumericalFailure("no integer degree matches the norm relation");
        t.degrees[c] = degree;

        // character values mod q, then Fourier inversion to multiplicities
        std::vector<std::uint64_t> chi_mod(k);
        for (int j = 0; j < k; ++j)
            chi_mod[j] = f.mul(f.mul(f.reduce(degree), w[j]), size_inv[j]);

        t.values[c].resize(k);
        for (int j = 0; j < k; ++j) {
            const int nj = rep_order[j];
            const std::uint64_t zj = f.pow(z, static_cast<std::uint64_t>(e / nj));
            const std::uint64_t nj_inv = f.inv(f.reduce(nj));
            double re = 0.0, im = 0.0;
            for (int tt = 0; tt < nj; ++tt) {
                std::uint64_t acc = 0;
                for (int sp = 0; sp < nj; ++sp) {
                    int expo = static_cast<int>((static_cast<long long>(sp) * tt) % nj);
                    std::uint64_t zpow = f.pow(zj, static_cast<std::uint64_t>((nj - expo) % nj));
                    acc = f.add(acc, f.mul(chi_mod[power_class[j][sp]], zpow));
                }
                std::uint64_t mult = f.mul(acc, nj_inv);
                if (mult == 0) continue;
                if (mult > static_cast<std::uint64_t>(degree))
                    throw NumericalFailure("root-of-unity multiplicity exceeds the degree");
                Complex root = unit_root(tt, nj);
                re += static_cast<double>(mult) * root.real();
                im += static_cast<double>(mult) * root.imag();
            }
            t.values[c][j] = {re, im};
        }
    }

    sort_rows(t);
    check_invariants(t);
    return t;
}

} // namespace

bool CharacterTable::is_trivial_row(int row) const {
    if (degrees[row] != 1) return false;
    for (const auto& v : values[row])
        if (std::abs(v - Complex(1, 0)) > 1e-9) return false;
    return true;
}

CharacterTable character_table(const GroupTable& g, const CharTableOptions& opt) {
    if (g.order > opt.order_cap)
        throw CapExceeded("character table capped at order " + std::to_string(opt.order_cap));
    if (is_abelian(g)) return abelian_table(g, opt);
    return dixon_schneider(g, opt);
}

Subgroup kernel_of_character(const CharacterTable& t, int row) {
    const GroupTable& g = *t.group;
    Subgroup ker;
    ker.parent = &g;
    const double d = static_cast<double>(t.degrees[row]);
    for (int j = 0; j < t.count(); ++j)
        if (std::abs(t.values[row][j] - Complex(d, 0)) <= kValueGridTol)
            for (int x : t.classes.members[j]) ker.members.push_back(x);
    std::sort(ker.members.begin(), ker.members.end());
    ker.is_normal = true;
    return ker;
}

int min_nontrivial_degree(const CharacterTable& t) {
    if (t.group->order <= 1) throw TrivialGroup("min_nontrivial_degree needs |G| > 1");
    int best = 0;
    for (int r = 0; r < t.count(); ++r) {
        if (t.is_trivial_row(r)) continue;
        if (best == 0 || t.degrees[r] < best) best = t.degrees[r];
    }
    return best;
}

int mdus(const CharacterTable& t) {
    const GroupTable& g = *t.group;
    std::vector<char> joint(g.order, 1);
    auto trivial = [&] {
        for (int x = 1; x < g.order; ++x)
            if (joint[x]) return false;
        return true;
    };
    if (trivial()) return 1; // |G| = 1
    std::vector<int> order(t.count());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return t.degrees[a] < t.degrees[b]; });
    int idx = 0;
    for (int n = 1;; ++n) {
        bool added = false;
        while (idx < t.count() && t.degrees[order[idx]] <= n) {
            Subgroup ker = kernel_of_character(t, order[idx]);
            std::vector<char> mask(g.order, 0);
            for (int x : ker.members) mask[x] = 1;
            for (int x = 0; x < g.order; ++x) joint[x] = joint[x] && mask[x];
            ++idx;
            added = true;
        }
        if (added && trivial()) return n;
        if (idx >= t.count() && n >= t.degrees[order.back()])
            throw NumericalFailure("irreducible characters are not jointly faithful");
    }
}

int mdus(const GroupTable& g, const CharTableOptions& opt) {
    return mdus(character_table(g, opt));
}

std::optional<int> min_faithful_degree(const CharacterTable& t) {
    std::optional<int> best;
    for (int r = 0; r < t.count(); ++r) {
        Subgroup ker = kernel_of_character(t, r);
        if (ker.is_trivial() && (!best || t.degrees[r] < *best)) best = t.degrees[r];
    }
    return best;
}

RPartition r_partition(const GroupTable& g, const CharacterTable& t, int degree) {
    RPartition part;
    part.degree = degree;
    Subgroup derived = commutator_subgroup(g);

    std::vector<int> rows;
    for (int r = 0; r < t.count(); ++r)
        if (t.degrees[r] == degree) rows.push_back(r);
    if (rows.empty()) {
        part.no_such_degree = true;
        return part;
    }
    // restriction to G' compared elementwise on the 1e-6 grid
    std::vector<std::vector<std::pair<long long, long long>>> keys;
    keys.reserve(rows.size());
    for (int r : rows) {
        std::vector<std::pair<long long, long long>> key;
        key.reserve(derived.members.size());
        for (int x : derived.members) key.push_back(grid_key(t.value_at_element(r, x)));
        keys.push_back(std::move(key));
    }
    std::vector<int> block_of(rows.size(), -1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (block_of[i] >= 0) continue;
        int b = static_cast<int>(part.blocks.size());
        part.blocks.push_back({rows[i]});
        part.restriction_keys.push_back(keys[i]);
        block_of[i] = b;
        for (std::size_t j = i + 1; j < rows.size(); ++j)
            if (block_of[j] < 0 && keys[j] == keys[i]) {
                part.blocks[b].push_back(rows[j]);
                block_of[j] = b;
            }
    }
    return part;
}

FaithfulQuotientReport faithful_quotient_count(const GroupTable& g, int degree_bound,
                                               int enumeration_cap,
                                               const CharTableOptions& opt) {
    if (g.order > enumeration_cap)
        throw CapExceeded("faithful_quotient_count capped at order " +
                          std::to_string(enumeration_cap));
    FaithfulQuotientReport report;
    report.degree_bound = degree_bound;
    for (auto& n : all_normal_subgroups(g, enumeration_cap)) {
        GroupTable q = quotient(g, n);
        auto qt = character_table(q, opt);
        auto faithful = min_faithful_degree(qt);
        if (faithful && *faithful <= degree_bound) report.witnesses.push_back(std::move(n));
    }
    report.count = static_cast<int>(report.witnesses.size());
    return report;
}

} // namespace chu
