#include "chu/json_io.hpp"

#include <sstream>

#include "chu/errors.hpp"

namespace chu {

using nlohmann::json;

json complex_to_json(const Complex& v) { return json::array({v.real(), v.imag()}); }

json character_table_to_json(const CharacterTable& t) {
    json out;
    out["schema"] = kSchemaTag;
    out["group"] = {{"name", t.group->name}, {"order", t.group->order}};
    json classes = json::array();
    for (int j = 0; j < t.classes.count(); ++j)
        classes.push_back({{"size", t.classes.sizes[j]},
                           {"representative", t.group->label_of(t.classes.reps[j])}});
    out["classes"] = classes;
    out["degrees"] = t.degrees;
    json rows = json::array();
    for (int r = 0; r < t.count(); ++r) {
        json row = json::array();
        for (int j = 0; j < t.classes.count(); ++j) row.push_back(complex_to_json(t.values[r][j]));
        rows.push_back(row);
    }
    out["values"] = rows;
    return out;
}

json rep_to_json(const UnitaryRep& rep) {
    json out;
    out["schema"] = kSchemaTag;
    out["group"] = {{"name", rep.group->name}, {"order", rep.group->order}};
    out["degree"] = rep.degree;
    if (rep.character_row) out["character_row"] = *rep.character_row;
    out["block_structure"] = rep.block_structure.render();
    json mats = json::object();
    for (int x = 0; x < rep.group->order; ++x) {
        json m = json::array();
        for (int i = 0; i < rep.degree; ++i) {
            json row = json::array();
            for (int j = 0; j < rep.degree; ++j) row.push_back(complex_to_json(rep.at(x)(i, j)));
            m.push_back(row);
        }
        mats[rep.group->label_of(x)] = m;
    }
    out["matrices"] = mats;
    return out;
}

UnitaryRep rep_from_json(const json& j, const GroupTable& g) {
    UnitaryRep rep;
    rep.group = &g;
    rep.degree = j.at("degree").get<int>();
    if (j.contains("character_row")) rep.character_row = j.at("character_row").get<int>();
    rep.matrices.resize(g.order);
    const auto& mats = j.at("matrices");
    for (int x = 0; x < g.order; ++x) {
        const auto it = mats.find(g.label_of(x));
        if (it == mats.end())
            throw InvalidSpec("matrix for element " + g.label_of(x) + " is missing");
        Matrix m(rep.degree, rep.degree);
        for (int a = 0; a < rep.degree; ++a)
            for (int b = 0; b < rep.degree; ++b) {
                const auto& cell = (*it)[a][b];
                m(a, b) = Complex(cell[0].get<double>(), cell[1].get<double>());
            }
        rep.matrices[x] = m;
    }
    verify_unitary_rep(rep); // invariants are validated on load
    return rep;
}

json group_invariants_to_json(const GroupTable& g, const CharacterTable& t) {
    json out;
    out["schema"] = kSchemaTag;
    out["name"] = g.name;
    out["order"] = g.order;
    out["abelian"] = is_abelian(g);
    out["simple"] = g.order > 1 ? json(is_simple(g)) : json(nullptr);
    out["exponent"] = exponent(g);
    Subgroup derived = commutator_subgroup(g);
    out["derived_order"] = derived.order();
    out["exp_derived"] = exponent(derived);
    out["perfect"] = derived.order() == g.order;
    out["center_order"] = center(g).order();
    out["mdus"] = mdus(t);
    out["min_nontrivial_degree"] = g.order > 1 ? json(min_nontrivial_degree(t)) : json(nullptr);
    auto mf = min_faithful_degree(t);
    out["min_faithful_degree"] = mf ? json(*mf) : json(nullptr);
    out["class_count"] = t.count();
    out["degrees"] = t.degrees;
    return out;
}

namespace {

json mult_json(const Multiplicity& m) { return m.omega ? json("omega") : json(m.count); }

json citation_json(const RuleCitation& c) {
    return {{"rule", c.rule}, {"anchor", c.anchor}, {"statement", c.statement}};
}

std::string case_name(SeparationCase c) {
    switch (c) {
        case SeparationCase::I: return "i";
        case SeparationCase::II: return "ii";
        case SeparationCase::III: return "iii";
        case SeparationCase::Unknown: return "unknown";
    }
    return "unknown";
}

} // namespace

json classification_to_json(const ClassificationReport& rep) {
    json out;
    out["schema"] = kSchemaTag;
    out["separation"] = {
        {"case", case_name(rep.separation.which)},
        {"witness_n", rep.separation.witness_n ? json(*rep.separation.witness_n) : json(nullptr)},
        {"note", rep.separation.note}};
    out["mdus_sup"] = rep.mdus_sup ? json(*rep.mdus_sup) : json("infinity");
    out["exp_derived_sup"] = rep.exp_derived_sup ? json(*rep.exp_derived_sup) : json("infinity");
    out["chu"] = {{"verdict", rep.chu_verdict},
                  {"rule", rep.chu_rule.empty() ? json(nullptr) : json(rep.chu_rule)},
                  {"certificate", rep.chu_certificate}};
    out["quasidual"] = {
        {"value", rep.quasidual},
        {"rule", rep.quasidual_rule.empty() ? json(nullptr) : json(rep.quasidual_rule)}};
    out["takahashi_note"] = rep.takahashi_note;
    json closure;
    closure["rendered"] = rep.closure.rendered;
    json cf = json::array();
    for (const auto& f : rep.closure.factors)
        cf.push_back({{"label", f.label}, {"mult", mult_json(f.mult)}, {"origin", f.origin}});
    closure["factors"] = cf;
    out["takahashi_derived_closure"] = closure;
    json per = json::array();
    for (const auto& inst : rep.data.instances) {
        const auto& f = rep.data.of(inst);
        per.push_back({{"origin", inst.origin},
                       {"group", f.display},
                       {"mult", mult_json(inst.mult)},
                       {"order", f.order},
                       {"simple", f.simple},
                       {"exp", f.group_exponent},
                       {"exp_derived", f.exp_derived},
                       {"mdus", f.mdus_value},
                       {"min_nontrivial_degree", f.min_nontrivial_deg}});
    }
    out["per_factor"] = per;
    json cits = json::array();
    for (const auto& c : rep.citations) cits.push_back(citation_json(c));
    out["citations"] = cits;
    return out;
}

json truncation_to_json(const TruncationReport& rep) {
    return {{"schema", kSchemaTag},
            {"prefix_len", rep.prefix_len},
            {"degree_bound", rep.degree_bound},
            {"product_order", rep.product_order},
            {"path", rep.path},
            {"count_degree_le_n", rep.count_degree_le_n},
            {"predicted_count", rep.predicted_count},
            {"joint_kernel_trivial", rep.joint_kernel_trivial},
            {"joint_kernel_order", rep.joint_kernel_order},
            {"mdus_product", rep.mdus_product},
            {"max_factor_mdus", rep.max_factor_mdus}};
}

json collapse_to_json(const CollapseWitness& w) {
    json ev = json::array();
    for (const auto& e : w.evidence)
        ev.push_back({{"position", e.position},
                      {"factor", e.factor},
                      {"min_nontrivial_degree", e.min_nontrivial_degree},
                      {"trivial_on_un", e.trivial_on_un}});
    return {{"schema", kSchemaTag},
            {"degree", w.degree},
            {"collapse_index", w.collapse_index},
            {"evidence", ev},
            {"tail_note", w.tail_note}};
}

json bohr_to_json(const BohrNullWitness& w) {
    json reps = json::array();
    for (std::size_t r = 0; r < w.reps.size(); ++r) {
        const auto& d = w.reps[r];
        reps.push_back({{"support", d.support},
                        {"rows", d.rows},
                        {"degree", d.degree},
                        {"eventual_identity", d.eventual_identity},
                        {"residuals", w.residuals[r]}});
    }
    return {{"schema", kSchemaTag},
            {"truncation", w.truncation},
            {"degree_bound", w.degree_bound},
            {"elements", w.elements},
            {"tested", reps}};
}

namespace {

void render_value(const json& j, const std::string& prefix, std::ostringstream& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_object() || v.is_array()) {
                out << prefix << k << ":\n";
                render_value(v, prefix + "  ", out);
            } else {
                out << prefix << k << ": " << v.dump() << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_object() || v.is_array()) {
                out << prefix << "-\n";
                render_value(v, prefix + "  ", out);
            } else {
                out << prefix << "- " << v.dump() << "\n";
            }
        }
    } else {
        out << prefix << j.dump() << "\n";
    }
}

} // namespace

std::string render_text(const json& j) {
    std::ostringstream out;
    render_value(j, "", out);
    return out.str();
}

} // namespace chu
