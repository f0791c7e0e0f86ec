#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chu/char_table.hpp"
#include "chu/group_spec.hpp"

#include "json.hpp"

namespace chu {

/// Finite count or omega (countably many copies).
struct Multiplicity {
    bool omega = false;
    long long count = 1;

    static Multiplicity finite(long long n) { return {false, n}; }
    static Multiplicity infinite() { return {true, 0}; }
};

struct FamilyBlock {
    GroupSpec spec;
    Multiplicity mult;
};

/// Infinite tail of a weak sum: either countably many copies of one group,
/// or PSL(2,p) over increasing odd primes p >= 5 (p = 3 is excluded because
/// PSL(2,3) is not simple). `omega_each` doubles every tail group countably
/// often (the not-locally-compact pattern).
struct TailSpec {
    enum class Kind { None, Constant, Psl2OddPrimes };
    Kind kind = Kind::None;
    GroupSpec constant_spec;
    int start_index = 0;
    int materialize_count = 6;
    bool omega_each = false;
};

/// Asymptotic facts about the unmaterialized part of a tail. Declared flags
/// are input axioms, checked for consistency against the materialized
/// prefix; PSL2 tails additionally carry these facts intrinsically.
struct Asymptotics {
    bool exp_unbounded = false;
    bool min_degree_unbounded = false;
};

/// Symbolic description of a weak sum of finite groups.
struct FamilySpec {
    std::vector<FamilyBlock> blocks;
    TailSpec tail;
    Asymptotics declared;

    bool has_tail() const { return tail.kind != TailSpec::Kind::None; }
};

FamilySpec parse_family_spec(const nlohmann::json& j);
nlohmann::json family_spec_to_json(const FamilySpec& spec);

/// The p >= 5 odd primes enumerated by PSL2 tails.
int psl2_tail_prime(int index);

struct FamilyOptions {
    int order_cap = kDefaultOrderCap;
    int prefix = 6;            // materialized tail instances
    int product_cap = 4096;    // direct-table route bound for truncations
    long long tuple_cap = 2000000; // outer-enumeration bound
    std::uint64_t seed = 0;
    ExecMode mode = ExecMode::Parallel;
};

/// Invariants of one distinct factor group.
struct FactorInvariants {
    std::string key;     // canonical spec key
    std::string display; // group name
    int order = 0;
    int group_exponent = 0;
    int exp_derived = 0;
    int mdus_value = 0;
    int min_nontrivial_deg = 0; // 0 for the trivial group
    int derived_order = 0;
    bool simple = false;
    bool perfect = false;
    bool abelian = false;
    bool derived_simple = false; // F' simple (prime cyclic counts)
    std::string derived_label;   // identification of F' for the closure descriptor
};

/// One factor position in the family (a block, or a materialized tail slot).
struct FactorInstance {
    int invariant = -1; // index into FamilyData::distinct
    Multiplicity mult;
    std::string origin; // "block[i]" or "tail[j]"
    int psl2_prime = 0; // for tail instances of a PSL2 tail
};

struct FamilyData {
    std::vector<FactorInvariants> distinct;
    std::vector<FactorInstance> instances; // blocks first, then the tail prefix
    Asymptotics effective;                 // declared OR intrinsic tail facts
    bool tail_all_simple = false;          // beyond the prefix as well
    bool tail_all_perfect = false;

    const FactorInvariants& of(const FactorInstance& inst) const {
        return distinct[inst.invariant];
    }
};

/// Materializes blocks and the tail prefix and computes per-factor
/// invariants, cached by spec identity. Checks declared asymptotics against
/// the prefix. Throws CapExceeded / InvalidSpec.
FamilyData factor_invariants(const FamilySpec& spec, const FamilyOptions& opt = {});

enum class SeparationCase { I, II, III, Unknown };

struct SeparationResult {
    SeparationCase which = SeparationCase::Unknown;
    std::optional<int> witness_n;
    std::string note;
};

/// The degree trichotomy: (i) a faithful irreducible of an essentially
/// finite sum, (ii) finite sup of factor mdus, (iii) unbounded mdus.
SeparationResult separation_case(const FamilySpec& spec, const FamilyData& data,
                                 const FamilyOptions& opt = {});

struct RuleCitation {
    std::string rule;
    std::string anchor;
    std::string statement;
};

struct DerivedClosureFactor {
    std::string label;
    Multiplicity mult;
    std::string origin;
};

struct DerivedClosureDescriptor {
    std::vector<DerivedClosureFactor> factors;
    std::string rendered; // e.g. "∏ℤ₃"
};

DerivedClosureDescriptor derived_closure(const FamilySpec& spec, const FamilyData& data);

struct ClassificationReport {
    SeparationResult separation;
    std::optional<int> mdus_sup;        // nullopt = unbounded
    std::optional<int> exp_derived_sup; // nullopt = unbounded
    std::string chu_verdict = "unknown";
    std::string chu_rule;
    nlohmann::json chu_certificate;
    std::string quasidual = "unknown"; // equals_G | equals_bG | equals_GT_proper |
                                       // not_locally_compact | unknown
    std::string quasidual_rule;
    std::string takahashi_note; // e.g. "G^xx = G_T = bG"
    DerivedClosureDescriptor closure;
    std::vector<RuleCitation> citations;
    FamilyData data; // per-factor table
};

/// Applies the certified rules in order R5, R1, R2, R3, R4; the first rule
/// to determine a field fixes it, everything undetermined stays "unknown".
ClassificationReport classify(const FamilySpec& spec, const FamilyOptions& opt = {});

struct TruncationReport {
    int prefix_len = 0;
    int degree_bound = 0;
    long long product_order = 0;
    std::string path;             // "materialized" or "outer"
    int count_degree_le_n = 0;    // brute-force enumeration
    int predicted_count = 0;      // degree-accounting prediction
    bool joint_kernel_trivial = false;
    long long joint_kernel_order = 0; // elements in the joint kernel at the bound
    int mdus_product = 0;
    int max_factor_mdus = 0;
};

/// Validation oracle: enumerates the irreducibles of the product of the
/// first k factor instances. Under product_cap this materializes the product
/// group and runs the full character-table route; above it the enumeration
/// walks outer tensor tuples over the factor tables.
TruncationReport truncation_bruteforce(const FamilySpec& spec, int prefix_len,
                                       int degree_bound, const FamilyOptions& opt = {});

/// First `count` factor groups of the family stream (blocks expanded by
/// multiplicity, then tail instances).
std::vector<GroupSpec> family_prefix_specs(const FamilySpec& spec, int count);

} // namespace chu
