#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chu/parallel.hpp"

namespace chu {

/// Default ceiling on the order of table-based groups. Dense tables are
/// quadratic in memory, so anything bigger needs a different representation.
inline constexpr int kDefaultOrderCap = 20000;

/// A finite group realized by an explicit multiplication table.
/// Element 0 is always the identity. `mult` is row-major: mult[a*order + b]
/// is the index of a*b.
struct GroupTable {
    int order = 0;
    std::vector<std::int32_t> mult;
    std::vector<std::int32_t> inv;
    int identity = 0;
    std::vector<std::string> labels; // optional; empty means "use indices"
    std::string name;                // display name, e.g. "S3" or "PSL(2,5)"

    int at(int a, int b) const { return mult[static_cast<std::size_t>(a) * order + b]; }
    int conjugate(int x, int g) const { return at(at(x, g), inv[x]); } // x g x^-1
    int commutator(int x, int y) const {                              // x y x^-1 y^-1
        return at(at(x, y), at(inv[x], inv[y]));
    }
    std::string label_of(int g) const {
        return labels.empty() ? std::to_string(g) : labels[g];
    }
};

/// Conjugacy classes, sorted by (size, smallest member); the identity class
/// is always index 0. Representative = smallest element index in the class.
struct ConjugacyData {
    std::vector<int> reps;
    std::vector<int> sizes;
    std::vector<int> class_of;              // element -> class index
    std::vector<std::vector<int>> members;  // sorted element lists
    int count() const { return static_cast<int>(reps.size()); }
};

/// A subgroup as an index set over its parent (not a standalone table);
/// use materialize() to get a GroupTable when one is needed.
struct Subgroup {
    const GroupTable* parent = nullptr;
    std::vector<int> members; // sorted
    bool is_normal = false;

    int order() const { return static_cast<int>(members.size()); }
    bool contains(int g) const;
    bool is_trivial() const { return members.size() == 1; }
    bool is_whole_group() const {
        return parent && static_cast<int>(members.size()) == parent->order;
    }
};

/// Table verification per the guard policy: identity/inverse/Latin-square
/// always, associativity in full for order <= 512 and on 10,000 seeded
/// random triples above.
void verify_group_table(const GroupTable& g, ExecMode mode = ExecMode::Parallel);

ConjugacyData conjugacy_classes(const GroupTable& g);

Subgroup commutator_subgroup(const GroupTable& g);
Subgroup center(const GroupTable& g);
Subgroup trivial_subgroup(const GroupTable& g);
Subgroup whole_group(const GroupTable& g);

/// Smallest subgroup containing `seed`, closed under conjugation by the
/// whole parent (and hence normal).
Subgroup normal_closure(const GroupTable& g, const std::vector<int>& seed);

/// Subgroup generated by `seed` (no conjugation closure).
Subgroup generated_subgroup(const GroupTable& g, const std::vector<int>& seed);

int element_order(const GroupTable& g, int x);
int exponent(const GroupTable& g);
int exponent(const Subgroup& h);

bool is_abelian(const GroupTable& g);
bool is_simple(const GroupTable& g);
bool is_perfect(const GroupTable& g);

GroupTable quotient(const GroupTable& g, const Subgroup& n);

/// Standalone table for a subgroup, elements in member order.
GroupTable materialize(const Subgroup& h);

/// All subgroups (exhaustive closure search); intended for small groups.
/// Throws CapExceeded past `order_cap`.
std::vector<Subgroup> all_subgroups(const GroupTable& g, int order_cap = 512);

/// All normal subgroups, generated as closures of unions of conjugacy
/// classes. Throws CapExceeded past `order_cap`.
std::vector<Subgroup> all_normal_subgroups(const GroupTable& g, int order_cap = 2000);

/// Smallest index [G : A] over abelian subgroups A, by exhaustive search.
int min_index_abelian_subgroup(const GroupTable& g, int order_cap = 512);

std::int64_t lcm64(std::int64_t a, std::int64_t b);

} // namespace chu
