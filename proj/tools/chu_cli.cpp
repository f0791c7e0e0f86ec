#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "chu/errors.hpp"
#include "chu/json_io.hpp"

using nlohmann::json;

namespace {

struct CommonOpts {
    std::string input;
    std::string format = "json";
    std::uint64_t seed = 0;
    int cap = chu::kDefaultOrderCap;
    int prefix = 6;
    int degree = 0;
    int row = -1;
    std::string kind = "both";
    bool strict = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--input", o.input, "input file path, inline JSON, or - for stdin")
        ->required();
    cmd->add_option("--format", o.format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--seed", o.seed, "seed for all randomized numerics (echoed in output)");
    cmd->add_option("--cap", o.cap, "order cap for table-based groups");
    cmd->add_flag("--strict", o.strict, "exit 5 when a verdict is unknown");
}

json read_input(const std::string& arg) {
    std::string text;
    if (arg == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(arg);
        if (in.good()) {
            std::ostringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        } else {
            text = arg; // inline JSON
        }
    }
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw chu::InvalidSpec(std::string("input is not valid JSON: ") + e.what());
    }
}

void emit(const json& out, const CommonOpts& o) {
    if (o.format == "text")
        std::cout << chu::render_text(out);
    else
        std::cout << out.dump(2) << "\n";
}

chu::FamilyOptions family_options(const CommonOpts& o) {
    chu::FamilyOptions fo;
    fo.order_cap = o.cap;
    fo.prefix = o.prefix;
    fo.seed = o.seed;
    return fo;
}

chu::CharTableOptions table_options(const CommonOpts& o) {
    chu::CharTableOptions co;
    co.order_cap = o.cap;
    co.seed = o.seed;
    return co;
}

int run_table(const CommonOpts& o) {
    chu::GroupSpec spec = chu::parse_group_spec(read_input(o.input));
    chu::GroupTable g = chu::build_group(spec, o.cap);
    chu::CharacterTable t = chu::character_table(g, table_options(o));
    json out = chu::character_table_to_json(t);
    out["seed"] = o.seed;
    emit(out, o);
    return 0;
}

int run_invariants(const CommonOpts& o) {
    chu::GroupSpec spec = chu::parse_group_spec(read_input(o.input));
    chu::GroupTable g = chu::build_group(spec, o.cap);
    chu::CharacterTable t = chu::character_table(g, table_options(o));
    json out = chu::group_invariants_to_json(g, t);
    out["seed"] = o.seed;
    emit(out, o);
    return 0;
}

int run_irreps(const CommonOpts& o) {
    json in = read_input(o.input);
    chu::GroupSpec spec = chu::parse_group_spec(in.is_object() && in.contains("spec")
                                                    ? in.at("spec")
                                                    : in);
    int row = o.row;
    if (in.is_object() && in.contains("row")) row = in.at("row").get<int>();
    if (row < 0) throw chu::InvalidSpec("irreps needs a character row (--row or input.row)");
    chu::GroupTable g = chu::build_group(spec, o.cap);
    chu::CharacterTable t = chu::character_table(g, table_options(o));
    chu::UnitaryRep rep = chu::irrep_matrices(g, t, row, o.seed);
    json out = chu::rep_to_json(rep);
    out["seed"] = o.seed;
    emit(out, o);
    return 0;
}

int run_classify(const CommonOpts& o) {
    chu::FamilySpec spec = chu::parse_family_spec(read_input(o.input));
    chu::ClassificationReport rep = chu::classify(spec, family_options(o));
    json out = chu::classification_to_json(rep);
    out["seed"] = o.seed;
    emit(out, o);
    if (o.strict && (rep.chu_verdict == "unknown" || rep.quasidual == "unknown" ||
                     rep.separation.which == chu::SeparationCase::Unknown))
        return 5;
    return 0;
}

int run_witness(const CommonOpts& o) {
    chu::FamilySpec spec = chu::parse_family_spec(read_input(o.input));
    json out;
    out["schema"] = chu::kSchemaTag;
    if (o.kind == "collapse" || o.kind == "both") {
        chu::CollapseWitness w = chu::tail_collapse_index(spec, o.degree, family_options(o));
        out["collapse"] = chu::collapse_to_json(w);
    }
    if (o.kind == "bohr" || o.kind == "both") {
        chu::BohrNullWitness w =
            chu::bohr_null_sequence(spec, o.prefix, o.degree, o.seed, family_options(o));
        out["bohr"] = chu::bohr_to_json(w);
    }
    out["seed"] = o.seed;
    emit(out, o);
    return 0;
}

int run_truncate(const CommonOpts& o) {
    chu::FamilySpec spec = chu::parse_family_spec(read_input(o.input));
    chu::TruncationReport rep =
        chu::truncation_bruteforce(spec, o.prefix, o.degree, family_options(o));
    json out = chu::truncation_to_json(rep);
    out["seed"] = o.seed;
    emit(out, o);
    return 0;
}

int run_support(const CommonOpts& o) {
    json in = read_input(o.input);
    std::vector<chu::GroupTable> factors;
    for (const auto& f : in.at("factors"))
        factors.push_back(chu::build_group(chu::parse_group_spec(f), o.cap));
    chu::ProductGroup pg = chu::make_product(std::move(factors), 0); // lazy route
    std::vector<std::optional<chu::UnitaryRep>> components(pg.factor_count());
    std::vector<chu::CharacterTable> tables(pg.factor_count());
    for (const auto& c : in.at("components")) {
        int f = c.at("factor").get<int>();
        int row = c.at("row").get<int>();
        if (f < 0 || f >= pg.factor_count()) throw chu::InvalidSpec("component factor out of range");
        chu::CharTableOptions co = table_options(o);
        tables[f] = chu::character_table(pg.factors[f], co);
        components[f] = chu::irrep_matrices(pg.factors[f], tables[f], row, o.seed);
    }
    chu::ProductRep rep = chu::inflate_rep(pg, components);
    json out;
    out["schema"] = chu::kSchemaTag;
    out["degree"] = rep.degree;
    out["support"] = chu::derived_support(rep);
    out["seed"] = o.seed;
    emit(out, o);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"chu-lab: duality status and dual-space witnesses for weak sums of finite groups"};
    app.require_subcommand(1);

    CommonOpts o;
    auto* table = app.add_subcommand("table", "character table of a group spec");
    add_common(table, o);
    auto* invariants = app.add_subcommand("invariants", "group invariants (mdus, exponents, ...)");
    add_common(invariants, o);
    auto* irreps = app.add_subcommand("irreps", "explicit unitary matrices for a character row");
    add_common(irreps, o);
    irreps->add_option("--row", o.row, "character row index");
    auto* classify = app.add_subcommand("classify", "duality classification of a family spec");
    add_common(classify, o);
    classify->add_option("--prefix", o.prefix, "materialized tail prefix length");
    auto* witness = app.add_subcommand("witness", "tail-collapse / Bohr-null witnesses");
    add_common(witness, o);
    witness->add_option("--degree", o.degree, "degree bound n")->required();
    witness->add_option("--prefix", o.prefix, "truncation length for the Bohr witness");
    witness->add_option("--kind", o.kind, "collapse, bohr, or both")
        ->check(CLI::IsMember({"collapse", "bohr", "both"}));
    auto* truncate = app.add_subcommand("truncate", "brute-force truncation oracle");
    add_common(truncate, o);
    truncate->add_option("--prefix", o.prefix, "number of leading factor instances")->required();
    truncate->add_option("--degree", o.degree, "degree bound n")->required();
    auto* support = app.add_subcommand("support", "derived support of an inflated product rep");
    add_common(support, o);

    CLI11_PARSE(app, argc, argv);

    try {
        if (table->parsed()) return run_table(o);
        if (invariants->parsed()) return run_invariants(o);
        if (irreps->parsed()) return run_irreps(o);
        if (classify->parsed()) return run_classify(o);
        if (witness->parsed()) return run_witness(o);
        if (truncate->parsed()) return run_truncate(o);
        if (support->parsed()) return run_support(o);
    } catch (const chu::Error& e) {
        json err = {{"schema", chu::kSchemaTag},
                    {"error", e.kind()},
                    {"message", e.what()}};
        std::cerr << err.dump(2) << "\n";
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        json err = {{"schema", chu::kSchemaTag}, {"error", "Internal"}, {"message", e.what()}};
        std::cerr << err.dump(2) << "\n";
        return 4;
    }
    return 0;
}
