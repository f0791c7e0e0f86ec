#include "chu/family.hpp"

#include <algorithm>
#include <map>
#include <memory>

#include "chu/errors.hpp"
#include "chu/product.hpp"

namespace chu {

using nlohmann::json;

int psl2_tail_prime(int index) {
    // odd primes with PSL(2,p) simple, i.e. p >= 5
    int count = 0;
    for (int p = 5;; p += 2) {
        if (!is_prime(p)) continue;
        if (count == index) return p;
        ++count;
    }
}

// ---------------------------------------------------------------------------
// FamilySpec JSON
// ---------------------------------------------------------------------------

namespace {

Multiplicity parse_mult(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "omega") return Multiplicity::infinite();
        throw InvalidSpec("multiplicity must be a positive integer or \"omega\"");
    }
    if (!j.is_number_integer() || j.get<long long>() < 1)
        throw InvalidSpec("multiplicity must be a positive integer or \"omega\"");
    return Multiplicity::finite(j.get<long long>());
}

json mult_to_json(const Multiplicity& m) {
    if (m.omega) return json("omega");
    return json(m.count);
}

} // namespace

FamilySpec parse_family_spec(const json& j) {
    FamilySpec spec;
    if (j.contains("blocks")) {
        for (const auto& b : j.at("blocks")) {
            FamilyBlock blk;
            blk.spec = parse_group_spec(b.at("spec"));
            blk.mult = b.contains("mult") ? parse_mult(b.at("mult")) : Multiplicity::finite(1);
            spec.blocks.push_back(std::move(blk));
        }
    }
    if (j.contains("tail") && !j.at("tail").is_null()) {
        const auto& t = j.at("tail");
        if (t.contains("constant")) {
            spec.tail.kind = TailSpec::Kind::Constant;
            spec.tail.constant_spec = parse_group_spec(t.at("constant"));
        } else if (t.contains("psl2_odd_primes")) {
            const auto& p = t.at("psl2_odd_primes");
            spec.tail.kind = TailSpec::Kind::Psl2OddPrimes;
            spec.tail.start_index = p.value("start", 0);
            spec.tail.materialize_count = p.value("materialize", 6);
            if (p.contains("mult")) {
                Multiplicity m = parse_mult(p.at("mult"));
                spec.tail.omega_each = m.omega;
                if (!m.omega && m.count != 1)
                    throw InvalidSpec("tail multiplicity must be 1 or \"omega\"");
            }
            if (spec.tail.start_index < 0 || spec.tail.materialize_count < 1)
                throw InvalidSpec("psl2_odd_primes needs start >= 0 and materialize >= 1");
        } else {
            throw InvalidSpec("tail must be \"constant\" or \"psl2_odd_primes\"");
        }
    }
    if (j.contains("asymptotics")) {
        const auto& a = j.at("asymptotics");
        spec.declared.exp_unbounded = a.value("exp_unbounded", false);
        spec.declared.min_degree_unbounded = a.value("min_degree_unbounded", false);
    }
    if (spec.blocks.empty() && !spec.has_tail())
        throw InvalidSpec("family needs at least one block or a tail");
    return spec;
}

json family_spec_to_json(const FamilySpec& spec) {
    json out;
    json blocks = json::array();
    for (const auto& b : spec.blocks)
        blocks.push_back({{"spec", group_spec_to_json(b.spec)}, {"mult", mult_to_json(b.mult)}});
    out["blocks"] = blocks;
    switch (spec.tail.kind) {
        case TailSpec::Kind::None: out["tail"] = nullptr; break;
        case TailSpec::Kind::Constant:
            out["tail"] = {{"constant", group_spec_to_json(spec.tail.constant_spec)}};
            break;
        case TailSpec::Kind::Psl2OddPrimes:
            out["tail"] = {{"psl2_odd_primes",
                            {{"start", spec.tail.start_index},
                             {"materialize", spec.tail.materialize_count},
                             {"mult", spec.tail.omega_each ? json("omega") : json(1)}}}};
            break;
    }
    out["asymptotics"] = {{"exp_unbounded", spec.declared.exp_unbounded},
                          {"min_degree_unbounded", spec.declared.min_degree_unbounded}};
    return out;
}

// ---------------------------------------------------------------------------
// factor cache
// ---------------------------------------------------------------------------

namespace {

std::string subscript_digits(int n) {
    static const char* sub[10] = {"₀", "₁", "₂", "₃", "₄",
                                  "₅", "₆", "₇", "₈", "₉"};
    std::string s = std::to_string(n), out;
    for (char c : s) out += sub[c - '0'];
    return out;
}

struct BuiltFactor {
    GroupTable group;
    CharacterTable table;
    FactorInvariants inv;
};

class FactorCache {
public:
    explicit FactorCache(const FamilyOptions& opt) : opt_(opt) {}

    const BuiltFactor& get(const GroupSpec& spec) {
        std::string key = spec.canonical_key();
        auto it = cache_.find(key);
        if (it != cache_.end()) return *it->second;

        auto bf = std::make_unique<BuiltFactor>();
        bf->group = build_group(spec, opt_.order_cap, opt_.mode);
        CharTableOptions copt;
        copt.order_cap = opt_.order_cap;
        copt.seed = opt_.seed;
        copt.mode = opt_.mode;
        bf->table = character_table(bf->group, copt);

        FactorInvariants& inv = bf->inv;
        inv.key = key;
        inv.display = bf->group.name;
        inv.order = bf->group.order;
        inv.group_exponent = exponent(bf->group);
        inv.abelian = is_abelian(bf->group);
        inv.simple = bf->group.order > 1 && is_simple(bf->group);
        Subgroup derived = commutator_subgroup(bf->group);
        inv.derived_order = derived.order();
        inv.exp_derived = exponent(derived);
        inv.perfect = derived.order() == bf->group.order;
        inv.mdus_value = mdus(bf->table);
        inv.min_nontrivial_deg = bf->group.order > 1 ? min_nontrivial_degree(bf->table) : 0;

        if (derived.order() == 1) {
            inv.derived_label = "1";
            inv.derived_simple = false;
        } else {
            GroupTable dt = materialize(derived);
            inv.derived_simple = is_simple(dt);
            if (inv.perfect && spec.kind == GroupSpec::Kind::PSL2) {
                inv.derived_label = "PSL(2," + std::to_string(spec.param) + ")";
            } else if (is_abelian(dt)) {
                bool cyclic = false;
                for (int x = 0; x < dt.order && !cyclic; ++x)
                    if (element_order(dt, x) == dt.order) cyclic = true;
                inv.derived_label = cyclic ? "ℤ" + subscript_digits(dt.order)
                                           : "A(" + std::to_string(dt.order) + ")";
            } else {
                inv.derived_label = inv.perfect ? inv.display : "F'(" + std::to_string(dt.order) + ")";
            }
        }
        const BuiltFactor& ref = *bf;
        cache_[key] = std::move(bf);
        return ref;
    }

private:
    FamilyOptions opt_;
    std::map<std::string, std::unique_ptr<BuiltFactor>> cache_;
};

GroupSpec tail_instance_spec(const TailSpec& tail, int j) {
    if (tail.kind == TailSpec::Kind::Constant) return tail.constant_spec;
    return psl2_spec(psl2_tail_prime(tail.start_index + j));
}

FamilyData build_family_data(const FamilySpec& spec, FactorCache& cache,
                             const FamilyOptions& opt) {
    FamilyData data;
    std::map<std::string, int> index_of;
    auto intern = [&](const GroupSpec& gs) {
        const BuiltFactor& bf = cache.get(gs);
        auto it = index_of.find(bf.inv.key);
        if (it != index_of.end()) return it->second;
        int idx = static_cast<int>(data.distinct.size());
        data.distinct.push_back(bf.inv);
        index_of[bf.inv.key] = idx;
        return idx;
    };

    for (std::size_t i = 0; i < spec.blocks.size(); ++i) {
        FactorInstance inst;
        inst.invariant = intern(spec.blocks[i].spec);
        inst.mult = spec.blocks[i].mult;
        inst.origin = "block[" + std::to_string(i) + "]";
        data.instances.push_back(inst);
    }

    int prefix = spec.tail.kind == TailSpec::Kind::Psl2OddPrimes
                     ? std::max(opt.prefix, spec.tail.materialize_count)
                     : opt.prefix;
    if (spec.tail.kind == TailSpec::Kind::Constant) {
        FactorInstance inst;
        inst.invariant = intern(spec.tail.constant_spec);
        inst.mult = Multiplicity::infinite();
        inst.origin = "tail[constant]";
        data.instances.push_back(inst);
        const auto& inv = data.distinct[inst.invariant];
        data.tail_all_simple = inv.simple && !inv.abelian;
        data.tail_all_perfect = inv.perfect;
    } else if (spec.tail.kind == TailSpec::Kind::Psl2OddPrimes) {
        for (int j = 0; j < prefix; ++j) {
            FactorInstance inst;
            inst.psl2_prime = psl2_tail_prime(spec.tail.start_index + j);
            inst.invariant = intern(psl2_spec(inst.psl2_prime));
            inst.mult = spec.tail.omega_each ? Multiplicity::infinite() : Multiplicity::finite(1);
            inst.origin = "tail[" + std::to_string(j) + "]";
            data.instances.push_back(inst);
        }
        data.tail_all_simple = true;  // PSL(2,p), p >= 5
        data.tail_all_perfect = true;
    }

    // declared asymptotics must be witnessed by the materialized prefix
    if (spec.has_tail()) {
        std::vector<const FactorInvariants*> tail_rows;
        for (const auto& inst : data.instances)
            if (inst.origin.rfind("tail", 0) == 0) tail_rows.push_back(&data.of(inst));
        auto strictly_grows = [&](auto field) {
            for (std::size_t j = 0; j + 1 < tail_rows.size(); ++j)
                if (field(*tail_rows[j + 1]) > field(*tail_rows[j])) return true;
            return false;
        };
        if (spec.declared.exp_unbounded &&
            !strictly_grows([](const FactorInvariants& r) { return r.group_exponent; }))
            throw InvalidSpec("declared exp_unbounded is not witnessed by the tail prefix");
        if (spec.declared.min_degree_unbounded &&
            !strictly_grows([](const FactorInvariants& r) { return r.min_nontrivial_deg; }))
            throw InvalidSpec("declared min_degree_unbounded is not witnessed by the tail prefix");
    } else if (spec.declared.exp_unbounded || spec.declared.min_degree_unbounded) {
        throw InvalidSpec("asymptotic flags need a tail");
    }

    data.effective = spec.declared;
    if (spec.tail.kind == TailSpec::Kind::Psl2OddPrimes) {
        // intrinsic to the family: exp(PSL(2,p)) >= p and the minimal
        // nontrivial degree is (p -+ 1)/2, both unbounded in p
        data.effective.exp_unbounded = true;
        data.effective.min_degree_unbounded = true;
    }
    return data;
}

} // namespace

FamilyData factor_invariants(const FamilySpec& spec, const FamilyOptions& opt) {
    FactorCache cache(opt);
    return build_family_data(spec, cache, opt);
}

std::vector<GroupSpec> family_prefix_specs(const FamilySpec& spec, int count) {
    std::vector<GroupSpec> out;
    std::vector<GroupSpec> round_robin; // omega entities, cycled
    for (const auto& b : spec.blocks) {
        if (b.mult.omega) {
            round_robin.push_back(b.spec);
            continue;
        }
        for (long long c = 0; c < b.mult.count && static_cast<int>(out.size()) < count; ++c)
            out.push_back(b.spec);
    }
    if (spec.tail.kind == TailSpec::Kind::Constant) {
        round_robin.push_back(spec.tail.constant_spec);
    } else if (spec.tail.kind == TailSpec::Kind::Psl2OddPrimes) {
        int need = count - static_cast<int>(out.size());
        for (int j = 0; j < need; ++j) round_robin.push_back(tail_instance_spec(spec.tail, j));
    }
    std::size_t rr = 0;
    while (static_cast<int>(out.size()) < count && !round_robin.empty()) {
        out.push_back(round_robin[rr % round_robin.size()]);
        ++rr;
    }
    if (static_cast<int>(out.size()) < count)
        throw InvalidSpec("family has fewer than " + std::to_string(count) + " factor instances");
    return out;
}

// ---------------------------------------------------------------------------
// outer tensor enumeration over factor character tables
// ---------------------------------------------------------------------------

namespace {

class TupleExplorer {
public:
    TupleExplorer(std::vector<const CharacterTable*> tables, long long tuple_cap)
        : tables_(std::move(tables)) {
        class_tuples_ = 1;
        row_tuples_ = 1;
        for (const auto* t : tables_) {
            class_tuples_ *= t->count();
            row_tuples_ *= t->count();
            if (class_tuples_ > tuple_cap)
                throw CapExceeded("tuple enumeration exceeds the cap");
        }
    }

    int factor_count() const { return static_cast<int>(tables_.size()); }
    long long class_tuple_count() const { return class_tuples_; }
    long long row_tuple_count() const { return row_tuples_; }

    template <typename Fn>
    void for_each_tuple(Fn&& fn) const { // fn(const std::vector<int>&)
        std::vector<int> odo(tables_.size(), 0);
        for (;;) {
            fn(odo);
            int i = static_cast<int>(tables_.size()) - 1;
            while (i >= 0) {
                if (++odo[i] < tables_[i]->count()) break;
                odo[i] = 0;
                --i;
            }
            if (i < 0) return;
        }
    }

    long long tuple_degree(const std::vector<int>& rows) const {
        long long d = 1;
        for (int i = 0; i < factor_count(); ++i) d *= tables_[i]->degrees[rows[i]];
        return d;
    }

    /// Is the class tuple inside the kernel of the outer tensor character?
    bool in_kernel(const std::vector<int>& rows, const std::vector<int>& cls) const {
        Complex v(1, 0);
        double deg = 1;
        for (int i = 0; i < factor_count(); ++i) {
            v *= tables_[i]->values[rows[i]][cls[i]];
            deg *= tables_[i]->degrees[rows[i]];
        }
        return std::abs(v - Complex(deg, 0)) <= kValueGridTol * std::max(1.0, deg);
    }

    bool tuple_faithful(const std::vector<int>& rows) const {
        bool faithful = true;
        for_each_class([&](const std::vector<int>& cls, bool identity) {
            if (identity || !faithful) return;
            if (in_kernel(rows, cls)) faithful = false;
        });
        return faithful;
    }

    template <typename Fn>
    void for_each_class(Fn&& fn) const { // fn(tuple, is_identity)
        std::vector<int> odo(tables_.size(), 0);
        for (;;) {
            bool identity = std::all_of(odo.begin(), odo.end(), [](int c) { return c == 0; });
            fn(odo, identity);
            int i = static_cast<int>(tables_.size()) - 1;
            while (i >= 0) {
                if (++odo[i] < tables_[i]->count()) break;
                odo[i] = 0;
                --i;
            }
            if (i < 0) return;
        }
    }

    /// All row tuples sorted by (degree, tuple).
    std::vector<std::pair<long long, std::vector<int>>> sorted_tuples() const {
        std::vector<std::pair<long long, std::vector<int>>> all;
        all.reserve(static_cast<std::size_t>(row_tuples_));
        for_each_tuple([&](const std::vector<int>& rows) {
            all.emplace_back(tuple_degree(rows), rows);
        });
        std::sort(all.begin(), all.end());
        return all;
    }

private:
    std::vector<const CharacterTable*> tables_;
    long long class_tuples_ = 1;
    long long row_tuples_ = 1;
};

/// Joint-kernel state across class tuples, indexed in odometer order.
struct KernelState {
    std::vector<char> joint;
    long long alive = 0;

    explicit KernelState(long long class_tuples)
        : joint(static_cast<std::size_t>(class_tuples), 1), alive(class_tuples) {}

    bool trivial() const { return alive == 1; } // only the identity tuple
};

void kernel_intersect(const TupleExplorer& ex, KernelState& state,
                      const std::vector<int>& rows) {
    long long idx = 0;
    ex.for_each_class([&](const std::vector<int>& cls, bool) {
        if (state.joint[idx] && !ex.in_kernel(rows, cls)) {
            state.joint[idx] = 0;
            --state.alive;
        }
        ++idx;
    });
}

} // namespace

// ---------------------------------------------------------------------------
// separation trichotomy
// ---------------------------------------------------------------------------

SeparationResult separation_case(const FamilySpec& spec, const FamilyData& data,
                                 const FamilyOptions& opt) {
    SeparationResult res;

    bool essentially_finite = !spec.has_tail();
    for (const auto& b : spec.blocks)
        if (b.mult.omega) essentially_finite = false;

    if (essentially_finite) {
        FactorCache cache(opt);
        std::vector<const CharacterTable*> tables;
        for (const auto& b : spec.blocks) {
            const BuiltFactor& bf = cache.get(b.spec);
            if (bf.group.order == 1) continue;
            for (long long c = 0; c < b.mult.count; ++c) tables.push_back(&bf.table);
        }
        if (tables.empty()) { // trivial group
            res.which = SeparationCase::I;
            res.witness_n = 1;
            res.note = "trivial sum; the trivial character is faithful";
            return res;
        }
        try {
            TupleExplorer ex(tables, opt.tuple_cap);
            std::optional<long long> best;
            ex.for_each_tuple([&](const std::vector<int>& rows) {
                long long d = ex.tuple_degree(rows);
                if (best && d >= *best) return;
                if (ex.tuple_faithful(rows)) best = d;
            });
            if (best) {
                res.which = SeparationCase::I;
                res.witness_n = static_cast<int>(*best);
                res.note = "faithful irreducible of the finite sum";
                return res;
            }
            // no faithful irreducible; fall through to the bounded case
        } catch (const CapExceeded&) {
            res.which = SeparationCase::Unknown;
            res.note = "finite sum too large to search for a faithful irreducible";
            return res;
        }
    }

    if (data.effective.min_degree_unbounded) {
        res.which = SeparationCase::III;
        res.note = "factor mdus values are unbounded along the tail";
        return res;
    }
    if (spec.has_tail() && spec.tail.kind != TailSpec::Kind::Constant &&
        !data.effective.min_degree_unbounded && !data.effective.exp_unbounded) {
        res.which = SeparationCase::Unknown;
        res.note = "no tail asymptotics declared and the prefix is bounded";
        return res;
    }
    int sup = 0;
    for (const auto& inst : data.instances) sup = std::max(sup, data.of(inst).mdus_value);
    res.which = SeparationCase::II;
    res.witness_n = sup;
    res.note = "sup of factor mdus; representations of this dimension separate points";
    return res;
}

// ---------------------------------------------------------------------------
// derived closure descriptor
// ---------------------------------------------------------------------------

DerivedClosureDescriptor derived_closure(const FamilySpec& spec, const FamilyData& data) {
    (void)spec;
    DerivedClosureDescriptor out;
    for (const auto& inst : data.instances) {
        DerivedClosureFactor f;
        f.label = data.of(inst).derived_label;
        f.mult = inst.mult;
        f.origin = inst.origin;
        out.factors.push_back(std::move(f));
    }

    bool tail_psl2 = spec.tail.kind == TailSpec::Kind::Psl2OddPrimes;
    std::vector<std::string> parts;
    bool all_trivial = true;
    for (std::size_t i = 0; i < out.factors.size(); ++i) {
        const auto& f = out.factors[i];
        if (f.label == "1") continue;
        all_trivial = false;
        if (tail_psl2 && f.origin.rfind("tail", 0) == 0) {
            parts.push_back("∏PSL(2,pⱼ)"); // the whole prime tail at once
            break;
        }
        if (f.mult.omega)
            parts.push_back("∏" + f.label);
        else if (f.mult.count > 1)
            parts.push_back(f.label + "^" + std::to_string(f.mult.count));
        else
            parts.push_back(f.label);
    }
    if (all_trivial) {
        out.rendered = "1";
    } else {
        for (std::size_t i = 0; i < parts.size(); ++i)
            out.rendered += (i ? " × " : "") + parts[i];
    }
    return out;
}

// ---------------------------------------------------------------------------
// classification rules
// ---------------------------------------------------------------------------

namespace {

RuleCitation cite(const std::string& rule) {
    if (rule == "R1")
        return {"R1", "cor-3.9",
                "a weak sum of finite simple non-abelian groups is Chu iff the factor "
                "exponents are bounded"};
    if (rule == "R2")
        return {"R2", "cor-3.2",
                "bounded factor mdus and bounded derived exponents imply Chu reflexivity"};
    if (rule == "R3")
        return {"R3", "prop-2.2",
                "the quasi-dual equals the Bohr compactification iff each degree admits only "
                "finitely many contributing factors (perfect factors, finite multiplicities)"};
    if (rule == "R4")
        return {"R4", "cor-4.10",
                "simple derived factors with diverging derived exponents identify the Chu and "
                "Takahashi quasi-duals"};
    if (rule == "R5")
        return {"R5", "ex-5.3",
                "a doubled unbounded family of simple factors has a non-locally-compact "
                "quasi-dual"};
    if (rule == "closure")
        return {"closure", "cor-3.4",
                "the Bohr closure of the derived subgroup is the direct product of the factor "
                "derived subgroups"};
    return {rule, "", ""};
}

} // namespace

ClassificationReport classify(const FamilySpec& spec, const FamilyOptions& opt) {
    FactorCache cache(opt);
    ClassificationReport rep;
    rep.data = build_family_data(spec, cache, opt);
    const FamilyData& data = rep.data;

    // aggregate facts over all factor instances (prefix + tail flags)
    bool all_simple_na = data.instances.empty() ? false : true;
    bool all_perfect = true;
    bool all_derived_simple = true;
    bool any_omega = false;
    int exp_sup = 0, mdus_sup = 0, expd_sup = 0;
    int mindeg_sup = 0;
    for (const auto& inst : data.instances) {
        const FactorInvariants& f = data.of(inst);
        if (!(f.simple && !f.abelian)) all_simple_na = false;
        if (!f.perfect) all_perfect = false;
        if (!f.derived_simple) all_derived_simple = false;
        if (inst.mult.omega) any_omega = true;
        exp_sup = std::max(exp_sup, f.group_exponent);
        mdus_sup = std::max(mdus_sup, f.mdus_value);
        expd_sup = std::max(expd_sup, f.exp_derived);
        mindeg_sup = std::max(mindeg_sup, f.min_nontrivial_deg);
    }
    (void)mindeg_sup;
    const bool psl2_tail = spec.tail.kind == TailSpec::Kind::Psl2OddPrimes;
    if (psl2_tail) {
        // beyond the materialized prefix: still simple and perfect
        all_simple_na = all_simple_na && data.tail_all_simple;
        all_perfect = all_perfect && data.tail_all_perfect;
    }
    const bool exp_unbounded = data.effective.exp_unbounded;
    const bool mindeg_unbounded = data.effective.min_degree_unbounded;
    // along a PSL2 tail the factors are perfect, so exp(F') = exp(F) diverges
    const bool expd_unbounded = psl2_tail && data.tail_all_perfect;

    rep.mdus_sup = mindeg_unbounded ? std::nullopt : std::optional<int>(mdus_sup);
    rep.exp_derived_sup = expd_unbounded ? std::nullopt : std::optional<int>(expd_sup);
    rep.separation = separation_case(spec, data, opt);
    rep.closure = derived_closure(spec, data);
    rep.citations.push_back(cite("closure"));

    auto set_chu = [&](const std::string& verdict, const std::string& rule, json cert) {
        if (rep.chu_verdict != "unknown") return;
        rep.chu_verdict = verdict;
        rep.chu_rule = rule;
        rep.chu_certificate = std::move(cert);
        rep.citations.push_back(cite(rule));
        if (verdict == "yes" && rep.quasidual == "unknown") {
            rep.quasidual = "equals_G";
            rep.quasidual_rule = rule;
        }
    };
    auto set_quasidual = [&](const std::string& value, const std::string& rule) {
        if (rep.quasidual != "unknown") return;
        rep.quasidual = value;
        rep.quasidual_rule = rule;
        bool seen = false;
        for (const auto& c : rep.citations) seen = seen || c.rule == rule;
        if (!seen) rep.citations.push_back(cite(rule));
    };

    // R5: doubled pattern, each tail group countably repeated
    if (psl2_tail && spec.tail.omega_each) {
        set_quasidual("not_locally_compact", "R5");
        set_chu("no", "R5",
                json{{"pattern", "tail of distinct simple factors with unbounded exponent, "
                                 "each with multiplicity omega"}});
    }

    // R1: all factors simple non-abelian -> Chu iff exponents bounded
    if (all_simple_na) {
        if (!exp_unbounded) {
            set_chu("yes", "R1", json{{"exponent_bound", exp_sup}});
        } else {
            json growth = json::array();
            for (const auto& inst : data.instances)
                if (inst.origin.rfind("tail", 0) == 0)
                    growth.push_back(data.of(inst).group_exponent);
            set_chu("no", "R1", json{{"exponent_growth", growth}});
        }
    }

    // R2: bounded mdus and bounded derived exponents
    if (rep.chu_verdict == "unknown" && rep.mdus_sup && rep.exp_derived_sup) {
        set_chu("yes", "R2",
                json{{"N", std::max(*rep.mdus_sup, *rep.exp_derived_sup)},
                     {"mdus_sup", *rep.mdus_sup},
                     {"exp_derived_sup", *rep.exp_derived_sup}});
    }

    // R3: perfect factors, finitely many contributors per degree
    bool r3_fires = false;
    if (all_perfect && !any_omega && spec.tail.kind != TailSpec::Kind::Constant) {
        if (!spec.has_tail() || (psl2_tail && mindeg_unbounded && !spec.tail.omega_each)) {
            r3_fires = true;
            set_quasidual("equals_bG", "R3");
        }
    }

    // R4: simple derived factors with diverging derived exponents
    bool r4_fires = all_derived_simple && psl2_tail && !spec.tail.omega_each && expd_unbounded;
    if (r4_fires) {
        bool seen = false;
        for (const auto& c : rep.citations) seen = seen || c.rule == "R4";
        if (!seen) rep.citations.push_back(cite("R4"));
        if (r3_fires || rep.quasidual == "equals_bG")
            rep.takahashi_note = "G^xx = G_T = bG";
        else if (rep.quasidual == "unknown") {
            set_quasidual("equals_GT_proper", "R4");
            rep.takahashi_note = "G^xx = G_T";
        } else if (rep.quasidual == "equals_G") {
            rep.takahashi_note = "G^xx = G_T = G";
        }
    }

    // bounded perfect family with infinitely many factors: G_T = bG through
    // the closure identification
    if (rep.takahashi_note.empty() && rep.chu_verdict == "yes" && all_perfect &&
        (spec.has_tail() || any_omega)) {
        rep.takahashi_note = "G^xx = G; G_T = bG";
    }

    return rep;
}

// ---------------------------------------------------------------------------
// truncation oracle
// ---------------------------------------------------------------------------

TruncationReport truncation_bruteforce(const FamilySpec& spec, int prefix_len, int degree_bound,
                                       const FamilyOptions& opt) {
    if (prefix_len < 1) throw InvalidSpec("prefix length must be >= 1");
    FactorCache cache(opt);
    auto specs = family_prefix_specs(spec, prefix_len);

    TruncationReport rep;
    rep.prefix_len = prefix_len;
    rep.degree_bound = degree_bound;

    std::vector<const BuiltFactor*> factors;
    long long order = 1;
    bool overflow = false;
    for (const auto& gs : specs) {
        factors.push_back(&cache.get(gs));
        if (!overflow && order > (1LL << 62) / std::max(1, factors.back()->group.order))
            overflow = true;
        if (!overflow) order *= factors.back()->group.order;
    }
    rep.product_order = overflow ? -1 : order;

    for (const auto* f : factors)
        rep.max_factor_mdus = std::max(rep.max_factor_mdus, f->inv.mdus_value);

    // degree-accounting prediction: count outer tensor tuples with
    // product of degrees <= n, from the factor degree lists alone
    {
        std::map<long long, long long> counts = {{1, 1}};
        for (const auto* f : factors) {
            std::map<long long, long long> next;
            for (const auto& [d, c] : counts)
                for (int row = 0; row < f->table.count(); ++row) {
                    long long nd = d * f->table.degrees[row];
                    if (nd <= degree_bound) next[nd] += c;
                }
            counts = std::move(next);
        }
        long long total = 0;
        for (const auto& entry : counts) total += entry.second;
        rep.predicted_count = static_cast<int>(total);
    }

    if (!overflow && order <= opt.product_cap) {
        // direct route: materialize the product and run the full table
        rep.path = "materialized";
        std::vector<GroupTable> parts;
        for (const auto* f : factors) parts.push_back(f->group);
        ProductGroup pg = make_product(std::move(parts), opt.product_cap, opt.mode);
        CharTableOptions copt;
        copt.order_cap = opt.order_cap;
        copt.seed = opt.seed;
        copt.mode = opt.mode;
        CharacterTable t = character_table(*pg.table, copt);

        std::vector<char> joint(pg.table->order, 1);
        for (int r = 0; r < t.count(); ++r) {
            if (t.degrees[r] > degree_bound) continue;
            ++rep.count_degree_le_n;
            Subgroup ker = kernel_of_character(t, r);
            std::vector<char> mask(pg.table->order, 0);
            for (int x : ker.members) mask[x] = 1;
            for (int x = 0; x < pg.table->order; ++x) joint[x] = joint[x] && mask[x];
        }
        for (int x = 0; x < pg.table->order; ++x)
            if (joint[x]) ++rep.joint_kernel_order;
        rep.joint_kernel_trivial = rep.joint_kernel_order == 1;
        rep.mdus_product = mdus(t);
        return rep;
    }

    // outer route: enumerate tensor tuples over the factor tables
    rep.path = "outer";
    std::vector<const CharacterTable*> tables;
    for (const auto* f : factors) tables.push_back(&f->table);
    TupleExplorer ex(tables, opt.tuple_cap);

    auto sorted = ex.sorted_tuples();
    KernelState state(ex.class_tuple_count());
    std::size_t idx = 0;
    int mdus_prod = 0;
    for (long long n = 1; idx < sorted.size(); ++n) {
        bool added = false;
        while (idx < sorted.size() && sorted[idx].first <= n) {
            kernel_intersect(ex, state, sorted[idx].second);
            ++idx;
            added = true;
        }
        if (added && mdus_prod == 0 && state.trivial()) mdus_prod = static_cast<int>(n);
    }
    if (mdus_prod == 0) throw NumericalFailure("product characters are not jointly faithful");
    rep.mdus_product = mdus_prod;

    KernelState bound_state(ex.class_tuple_count());
    for (const auto& [d, rows] : sorted) {
        if (d > degree_bound) break;
        ++rep.count_degree_le_n;
        kernel_intersect(ex, bound_state, rows);
    }
    rep.joint_kernel_trivial = bound_state.trivial();
    // kernel order in elements: sum of class-size products over kernel tuples
    long long idx2 = 0;
    ex.for_each_class([&](const std::vector<int>& cls, bool) {
        if (bound_state.joint[idx2]) {
            long long sz = 1;
            for (int i = 0; i < ex.factor_count(); ++i) sz *= tables[i]->classes.sizes[cls[i]];
            rep.joint_kernel_order += sz;
        }
        ++idx2;
    });
    return rep;
}

} // namespace chu
