#include "chu/group.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "chu/errors.hpp"
#include "chu/rng.hpp"

namespace chu {

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    return a / std::gcd(a, b) * b;
}

bool Subgroup::contains(int g) const {
    return std::binary_search(members.begin(), members.end(), g);
}

void verify_group_table(const GroupTable& g, ExecMode mode) {
    const int n = g.order;
    if (n <= 0) throw InvalidSpec("group order must be positive");
    if (g.identity != 0) throw InvalidSpec("identity must be element 0");
    if (g.mult.size() != static_cast<std::size_t>(n) * n)
        throw InvalidSpec("multiplication table has wrong shape");
    if (g.inv.size() != static_cast<std::size_t>(n))
        throw InvalidSpec("inverse array has wrong length");

    for (int a = 0; a < n; ++a) {
        if (g.at(0, a) != a || g.at(a, 0) != a)
            throw InvalidSpec("identity law fails at element " + std::to_string(a));
        if (g.inv[a] < 0 || g.inv[a] >= n || g.at(a, g.inv[a]) != 0)
            throw InvalidSpec("inverse law fails at element " + std::to_string(a));
    }

    // Latin square: every row and column is a permutation.
    std::vector<char> ok(static_cast<std::size_t>(n), 1);
    parallel_for(
        static_cast<std::size_t>(n),
        [&](std::size_t a) {
            std::vector<char> seen_row(n, 0), seen_col(n, 0);
            for (int b = 0; b < n; ++b) {
                int r = g.at(static_cast<int>(a), b);
                int c = g.at(b, static_cast<int>(a));
                if (r < 0 || r >= n || c < 0 || c >= n || seen_row[r] || seen_col[c]) {
                    ok[a] = 0;
                    return;
                }
                seen_row[r] = 1;
                seen_col[c] = 1;
            }
        },
        mode);
    for (int a = 0; a < n; ++a)
        if (!ok[a]) throw InvalidSpec("row/column " + std::to_string(a) + " is not a permutation");

    // Associativity: full triple check up to 512 elements, sampled above.
    if (n <= 512) {
        long long bad = blocked_reduce<long long>(
            static_cast<std::size_t>(n), 0,
            [&](long long& acc, std::size_t a) {
                for (int b = 0; b < n; ++b)
                    for (int c = 0; c < n; ++c)
                        if (g.at(g.at(static_cast<int>(a), b), c) !=
                            g.at(static_cast<int>(a), g.at(b, c)))
                            ++acc;
            },
            [](long long& t, long long v) { t += v; }, mode);
        if (bad != 0) throw InvalidSpec("associativity fails on " + std::to_string(bad) + " triples");
    } else {
        constexpr int kSamples = 10000;
        long long bad = blocked_reduce<long long>(
            kSamples, 0,
            [&](long long& acc, std::size_t i) {
                Rng rng(0x5eedULL + i); // per-sample stream, schedule independent
                int a = static_cast<int>(rng.next_below(n));
                int b = static_cast<int>(rng.next_below(n));
                int c = static_cast<int>(rng.next_below(n));
                if (g.at(g.at(a, b), c) != g.at(a, g.at(b, c))) ++acc;
            },
            [](long long& t, long long v) { t += v; }, mode);
        if (bad != 0) throw InvalidSpec("associativity fails on sampled triples");
    }
}

ConjugacyData conjugacy_classes(const GroupTable& g) {
    const int n = g.order;
    std::vector<int> cls(n, -1);
    std::vector<std::vector<int>> raw;
    for (int x = 0; x < n; ++x) {
        if (cls[x] >= 0) continue;
        int id = static_cast<int>(raw.size());
        std::vector<int> orbit;
        cls[x] = id;
        orbit.push_back(x);
        // orbit of x under conjugation; scan all conjugators
        for (std::size_t k = 0; k < orbit.size(); ++k) {
            int y = orbit[k];
            for (int t = 0; t < n; ++t) {
                int z = g.conjugate(t, y);
                if (cls[z] < 0) {
                    cls[z] = id;
                    orbit.push_back(z);
                }
            }
        }
        std::sort(orbit.begin(), orbit.end());
        raw.push_back(std::move(orbit));
    }

    std::vector<int> perm(raw.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
        if (raw[a].size() != raw[b].size()) return raw[a].size() < raw[b].size();
        return raw[a][0] < raw[b][0];
    });

    ConjugacyData out;
    out.class_of.assign(n, -1);
    for (std::size_t j = 0; j < perm.size(); ++j) {
        const auto& orbit = raw[perm[j]];
        out.reps.push_back(orbit[0]);
        out.sizes.push_back(static_cast<int>(orbit.size()));
        for (int e : orbit) out.class_of[e] = static_cast<int>(j);
        out.members.push_back(orbit);
    }
    return out;
}

namespace {

// Multiplicative closure of a set that already contains the identity.
std::vector<int> close_under_mult(const GroupTable& g, std::vector<char>& in) {
    std::vector<int> queue;
    for (int x = 0; x < g.order; ++x)
        if (in[x]) queue.push_back(x);
    std::vector<int> members = queue;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        for (std::size_t j = 0; j < queue.size(); ++j) {
            int z = g.at(queue[i], queue[j]);
            if (!in[z]) {
                in[z] = 1;
                queue.push_back(z);
                members.push_back(z);
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

bool closed_under_conjugation(const GroupTable& g, const std::vector<char>& in) {
    for (int x = 0; x < g.order; ++x) {
        if (!in[x]) continue;
        for (int t = 0; t < g.order; ++t)
            if (!in[g.conjugate(t, x)]) return false;
    }
    return true;
}

} // namespace

Subgroup generated_subgroup(const GroupTable& g, const std::vector<int>& seed) {
    std::vector<char> in(g.order, 0);
    in[0] = 1;
    for (int s : seed) {
        in[s] = 1;
        in[g.inv[s]] = 1;
    }
    Subgroup h;
    h.parent = &g;
    h.members = close_under_mult(g, in);
    std::vector<char> mask(g.order, 0);
    for (int m : h.members) mask[m] = 1;
    h.is_normal = closed_under_conjugation(g, mask);
    return h;
}

Subgroup normal_closure(const GroupTable& g, const std::vector<int>& seed) {
    std::vector<char> in(g.order, 0);
    in[0] = 1;
    std::vector<int> queue = {0};
    auto add = [&](int x) {
        if (!in[x]) {
            in[x] = 1;
            queue.push_back(x);
        }
    };
    for (int s : seed) {
        add(s);
        add(g.inv[s]);
    }
    for (std::size_t i = 0; i < queue.size(); ++i) {
        int x = queue[i];
        for (int t = 0; t < g.order; ++t) add(g.conjugate(t, x));
        for (std::size_t j = 0; j <= i; ++j) add(g.at(x, queue[j]));
        for (std::size_t j = 0; j <= i; ++j) add(g.at(queue[j], x));
    }
    Subgroup h;
    h.parent = &g;
    h.members.assign(queue.begin(), queue.end());
    std::sort(h.members.begin(), h.members.end());
    h.is_normal = true;
    return h;
}

Subgroup commutator_subgroup(const GroupTable& g) {
    std::vector<int> gens;
    std::vector<char> seen(g.order, 0);
    for (int x = 0; x < g.order; ++x)
        for (int y = 0; y < g.order; ++y) {
            int c = g.commutator(x, y);
            if (!seen[c]) {
                seen[c] = 1;
                gens.push_back(c);
            }
        }
    // the commutator set is conjugation-closed, so plain closure is normal
    std::vector<char> in(g.order, 0);
    in[0] = 1;
    for (int c : gens) in[c] = 1;
    Subgroup h;
    h.parent = &g;
    h.members = close_under_mult(g, in);
    h.is_normal = true;
    return h;
}

Subgroup center(const GroupTable& g) {
    Subgroup z;
    z.parent = &g;
    for (int x = 0; x < g.order; ++x) {
        bool central = true;
        for (int y = 0; y < g.order && central; ++y)
            if (g.at(x, y) != g.at(y, x)) central = false;
        if (central) z.members.push_back(x);
    }
    z.is_normal = true;
    return z;
}

Subgroup trivial_subgroup(const GroupTable& g) {
    return Subgroup{&g, {0}, true};
}

Subgroup whole_group(const GroupTable& g) {
    Subgroup h;
    h.parent = &g;
    h.members.resize(g.order);
    std::iota(h.members.begin(), h.members.end(), 0);
    h.is_normal = true;
    return h;
}

int element_order(const GroupTable& g, int x) {
    int k = 1;
    int cur = x;
    while (cur != 0) {
        cur = g.at(cur, x);
        ++k;
    }
    return k;
}

int exponent(const GroupTable& g) {
    std::int64_t e = 1;
    for (int x = 0; x < g.order; ++x) e = lcm64(e, element_order(g, x));
    return static_cast<int>(e);
}

int exponent(const Subgroup& h) {
    std::int64_t e = 1;
    for (int x : h.members) e = lcm64(e, element_order(*h.parent, x));
    return static_cast<int>(e);
}

bool is_abelian(const GroupTable& g) {
    for (int x = 0; x < g.order; ++x)
        for (int y = x + 1; y < g.order; ++y)
            if (g.at(x, y) != g.at(y, x)) return false;
    return true;
}

bool is_perfect(const GroupTable& g) {
    return commutator_subgroup(g).order() == g.order;
}

bool is_simple(const GroupTable& g) {
    if (g.order <= 1) throw TrivialGroup("is_simple needs |G| > 1");
    auto classes = conjugacy_classes(g);
    for (int c = 1; c < classes.count(); ++c) {
        Subgroup n = normal_closure(g, {classes.reps[c]});
        if (n.order() < g.order) return false;
    }
    return true;
}

GroupTable quotient(const GroupTable& g, const Subgroup& n) {
    if (n.parent != &g) throw InvalidSpec("subgroup does not belong to this group");
    if (!n.is_normal) throw NotNormal("quotient requires a normal subgroup");

    const int ord = g.order;
    // coset of x keyed by the smallest element of xN
    std::vector<int> coset_key(ord, -1);
    for (int x = 0; x < ord; ++x) {
        int best = ord;
        for (int h : n.members) best = std::min(best, g.at(x, h));
        coset_key[x] = best;
    }
    std::vector<int> keys;
    for (int x = 0; x < ord; ++x)
        if (coset_key[x] == x) keys.push_back(x);
    std::sort(keys.begin(), keys.end());

    std::vector<int> index_of(ord, -1);
    for (std::size_t i = 0; i < keys.size(); ++i) index_of[keys[i]] = static_cast<int>(i);

    GroupTable q;
    q.order = static_cast<int>(keys.size());
    q.name = g.name.empty() ? "quotient" : g.name + "/N";
    q.mult.resize(static_cast<std::size_t>(q.order) * q.order);
    q.inv.resize(q.order);
    q.labels.reserve(q.order);
    for (int i = 0; i < q.order; ++i) q.labels.push_back(g.label_of(keys[i]) + "N");
    for (int i = 0; i < q.order; ++i) {
        for (int j = 0; j < q.order; ++j) {
            int prod = coset_key[g.at(keys[i], keys[j])];
            q.mult[static_cast<std::size_t>(i) * q.order + j] = index_of[prod];
        }
        q.inv[i] = index_of[coset_key[g.inv[keys[i]]]];
    }
    verify_group_table(q);
    return q;
}

GroupTable materialize(const Subgroup& h) {
    const GroupTable& g = *h.parent;
    std::vector<int> index_of(g.order, -1);
    for (std::size_t i = 0; i < h.members.size(); ++i)
        index_of[h.members[i]] = static_cast<int>(i);

    GroupTable t;
    t.order = h.order();
    t.name = g.name.empty() ? "subgroup" : g.name + "'";
    t.mult.resize(static_cast<std::size_t>(t.order) * t.order);
    t.inv.resize(t.order);
    t.labels.reserve(t.order);
    for (int m : h.members) t.labels.push_back(g.label_of(m));
    for (int i = 0; i < t.order; ++i) {
        for (int j = 0; j < t.order; ++j) {
            int prod = index_of[g.at(h.members[i], h.members[j])];
            if (prod < 0) throw InvalidSpec("member set is not closed under multiplication");
            t.mult[static_cast<std::size_t>(i) * t.order + j] = prod;
        }
        t.inv[i] = index_of[g.inv[h.members[i]]];
    }
    verify_group_table(t);
    return t;
}

namespace {

std::vector<std::vector<int>> subgroup_closure_search(
    const GroupTable& g, const std::vector<std::vector<int>>& atoms, int order_cap,
    bool conjugation_closed) {
    if (g.order > order_cap)
        throw CapExceeded("subgroup enumeration capped at order " + std::to_string(order_cap));

    auto closure = [&](const std::vector<int>& base, const std::vector<int>& extra) {
        std::vector<char> in(g.order, 0);
        in[0] = 1;
        for (int x : base) in[x] = 1;
        for (int x : extra) {
            in[x] = 1;
            in[g.inv[x]] = 1;
        }
        return close_under_mult(g, in);
    };

    std::vector<std::vector<int>> found = {{0}};
    std::vector<std::vector<int>> frontier = {{0}};
    auto known = [&](const std::vector<int>& m) {
        return std::find(found.begin(), found.end(), m) != found.end();
    };
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& base : frontier) {
            for (const auto& atom : atoms) {
                bool inside = std::includes(base.begin(), base.end(), atom.begin(), atom.end());
                if (inside) continue;
                auto grown = closure(base, atom);
                if (!known(grown)) {
                    found.push_back(grown);
                    next.push_back(grown);
                    if (found.size() > 200000)
                        throw CapExceeded("subgroup lattice too large to enumerate");
                }
            }
        }
        frontier = std::move(next);
    }
    (void)conjugation_closed;
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return found;
}

} // namespace

std::vector<Subgroup> all_subgroups(const GroupTable& g, int order_cap) {
    std::vector<std::vector<int>> atoms;
    for (int x = 1; x < g.order; ++x) atoms.push_back({x});
    auto sets = subgroup_closure_search(g, atoms, order_cap, false);
    std::vector<Subgroup> out;
    out.reserve(sets.size());
    for (auto& m : sets) {
        Subgroup h;
        h.parent = &g;
        std::vector<char> mask(g.order, 0);
        for (int x : m) mask[x] = 1;
        h.is_normal = closed_under_conjugation(g, mask);
        h.members = std::move(m);
        out.push_back(std::move(h));
    }
    return out;
}

std::vector<Subgroup> all_normal_subgroups(const GroupTable& g, int order_cap) {
    if (g.order > order_cap)
        throw CapExceeded("normal-subgroup enumeration capped at order " +
                          std::to_string(order_cap));
    auto classes = conjugacy_classes(g);
    std::vector<std::vector<int>> atoms;
    for (int c = 1; c < classes.count(); ++c) atoms.push_back(classes.members[c]);
    // closures of conjugation-closed sets are normal subgroups, and every
    // normal subgroup is a union of classes, so this search is exhaustive
    auto sets = subgroup_closure_search(g, atoms, order_cap, true);
    std::vector<Subgroup> out;
    out.reserve(sets.size());
    for (auto& m : sets) {
        Subgroup h;
        h.parent = &g;
        h.members = std::move(m);
        h.is_normal = true;
        out.push_back(std::move(h));
    }
    return out;
}

int min_index_abelian_subgroup(const GroupTable& g, int order_cap) {
    auto subs = all_subgroups(g, order_cap);
    int best = g.order; // trivial subgroup always abelian
    for (const auto& h : subs) {
        bool abelian = true;
        for (std::size_t i = 0; i < h.members.size() && abelian; ++i)
            for (std::size_t j = i + 1; j < h.members.size() && abelian; ++j)
                if (g.at(h.members[i], h.members[j]) != g.at(h.members[j], h.members[i]))
                    abelian = false;
        if (abelian) best = std::min(best, g.order / h.order());
    }
    return best;
}

} // namespace chu
