#include "chu/witness.hpp"

#include <algorithm>
#include <map>

#include "chu/errors.hpp"
#include "chu/rep.hpp"

namespace chu {

namespace {

struct PrefixFactor {
    GroupTable group;
    CharacterTable table;
};

/// Builds the first `count` factor groups with their tables; factors
/// repeated in the family are built once and copied by index.
std::vector<std::unique_ptr<PrefixFactor>> build_prefix(const FamilySpec& spec, int count,
                                                        const FamilyOptions& opt) {
    auto specs = family_prefix_specs(spec, count);
    std::vector<std::unique_ptr<PrefixFactor>> out;
    CharTableOptions copt;
    copt.order_cap = opt.order_cap;
    copt.seed = opt.seed;
    copt.mode = opt.mode;
    std::map<std::string, const PrefixFactor*> seen;
    for (const auto& gs : specs) {
        auto pf = std::make_unique<PrefixFactor>();
        auto it = seen.find(gs.canonical_key());
        if (it != seen.end()) {
            pf->group = it->second->group;
            pf->table = it->second->table;
            pf->table.group = &pf->group;
        } else {
            pf->group = build_group(gs, opt.order_cap, opt.mode);
            pf->table = character_table(pf->group, copt);
            pf->table.group = &pf->group;
        }
        seen[gs.canonical_key()] = pf.get();
        out.push_back(std::move(pf));
    }
    return out;
}

void require_simple_nonabelian(const GroupTable& g) {
    if (g.order <= 1 || is_abelian(g) || !is_simple(g))
        throw NotSimpleFamily("factor " + g.name + " is not simple non-abelian");
}

} // namespace

CollapseWitness tail_collapse_index(const FamilySpec& spec, int degree,
                                    const FamilyOptions& opt) {
    CollapseWitness w;
    w.degree = degree;

    // finite instance stream: blocks expanded; PSL2 tails are materialized
    // until the minimal degree clears n (min degrees are nondecreasing in p)
    int count = 0;
    for (const auto& b : spec.blocks) {
        if (b.mult.omega)
            throw InvalidSpec("omega-multiplicity blocks never collapse past a fixed degree");
        count += static_cast<int>(b.mult.count);
    }
    bool extend = false;
    if (spec.tail.kind == TailSpec::Kind::Constant)
        throw InvalidSpec("a constant tail never collapses past a fixed degree");
    if (spec.tail.kind == TailSpec::Kind::Psl2OddPrimes) {
        count += std::max(opt.prefix, spec.tail.materialize_count);
        extend = true;
    }
    if (count == 0) throw InvalidSpec("family has no factor instances");

    auto factors = build_prefix(spec, count, opt);
    for (const auto& f : factors) require_simple_nonabelian(f->group);

    if (extend) {
        // grow until the last materialized factor is trivial on U(n)
        while (min_nontrivial_degree(factors.back()->table) <= degree) {
            ++count;
            factors = build_prefix(spec, count, opt);
            require_simple_nonabelian(factors.back()->group);
        }
        w.tail_note = "positions beyond the materialized prefix have minimal nontrivial "
                      "degree >= " +
                      std::to_string(min_nontrivial_degree(factors.back()->table)) +
                      " (nondecreasing along the prime tail)";
    }

    for (std::size_t pos = 0; pos < factors.size(); ++pos) {
        CollapseEvidence e;
        e.position = static_cast<int>(pos);
        e.factor = factors[pos]->group.name;
        e.min_nontrivial_degree = min_nontrivial_degree(factors[pos]->table);
        e.trivial_on_un = e.min_nontrivial_degree > degree;
        w.evidence.push_back(e);
    }
    int last_nontrivial = -1;
    for (const auto& e : w.evidence)
        if (!e.trivial_on_un) last_nontrivial = e.position;
    w.collapse_index = last_nontrivial + 1;
    return w;
}

BohrNullWitness bohr_null_sequence(const FamilySpec& spec, int truncation, int degree_bound,
                                   std::uint64_t seed, const FamilyOptions& opt) {
    if (truncation < 1) throw InvalidSpec("truncation length must be >= 1");
    auto factors = build_prefix(spec, truncation, opt);
    for (const auto& f : factors) require_simple_nonabelian(f->group);

    BohrNullWitness w;
    w.truncation = truncation;
    w.degree_bound = degree_bound;
    for (const auto& f : factors) w.elements.push_back(f->group.label_of(1));

    // enumerate outer tensor tuples with total degree <= n_max
    std::vector<std::vector<int>> tuples;
    std::vector<int> cur(truncation, 0);
    auto rec = [&](auto&& self, int i, long long deg) -> void {
        if (deg > degree_bound) return;
        if (i == truncation) {
            tuples.push_back(cur);
            return;
        }
        const CharacterTable& t = factors[i]->table;
        for (int r = 0; r < t.count(); ++r) {
            long long nd = deg * t.degrees[r];
            if (nd > degree_bound) continue;
            cur[i] = r;
            self(self, i + 1, nd);
        }
        cur[i] = 0;
    };
    rec(rec, 0, 1);

    bool any_nontrivial = false;
    for (const auto& rows : tuples)
        for (int i = 0; i < truncation; ++i)
            if (!factors[i]->table.is_trivial_row(rows[i])) any_nontrivial = true;
    if (!any_nontrivial)
        throw BoundTooSmall("degree bound " + std::to_string(degree_bound) +
                            " admits no nontrivial representation of the truncated sum");

    // explicit unitary matrices for the nontrivial components only
    std::map<std::pair<int, int>, UnitaryRep> component;
    for (const auto& rows : tuples)
        for (int i = 0; i < truncation; ++i) {
            if (factors[i]->table.is_trivial_row(rows[i])) continue;
            auto key = std::make_pair(i, rows[i]);
            if (!component.count(key))
                component.emplace(key, irrep_matrices(factors[i]->group, factors[i]->table,
                                                      rows[i], seed + 7919 * i + rows[i],
                                                      opt.mode));
        }

    for (const auto& rows : tuples) {
        BohrTestedRep rep;
        rep.rows = rows;
        for (int i = 0; i < truncation; ++i) {
            if (factors[i]->table.is_trivial_row(rows[i])) continue;
            rep.support.push_back(i);
            rep.degree *= factors[i]->table.degrees[rows[i]];
        }
        rep.eventual_identity = rep.support.empty() ? 0 : rep.support.back() + 1;

        std::vector<double> res(truncation, 0.0);
        for (int m : rep.support) {
            const UnitaryRep& comp = component.at({m, rows[m]});
            // g_m sits in factor m only, so the residual of the outer tensor
            // at g_m equals the component residual in the max norm
            res[m] = max_abs(comp.at(1) - Matrix::Identity(comp.degree, comp.degree));
        }
        w.residuals.push_back(std::move(res));
        w.reps.push_back(std::move(rep));
    }
    return w;
}

} // namespace chu
