#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "chu/group.hpp"

namespace chu {

using Complex = std::complex<double>;

/// Tolerance gates shared by the character-level checks.
inline constexpr double kOrthogonalityTol = 1e-6;
inline constexpr double kValueGridTol = 1e-6;

struct CharTableOptions {
    int order_cap = kDefaultOrderCap;
    int class_cap = 256;    // Dixon-Schneider working dimension
    int abelian_cap = 2048; // dense k x k table for abelian groups
    std::uint64_t seed = 0;
    ExecMode mode = ExecMode::Parallel;
};

/// Complex irreducible characters on conjugacy classes. Row i holds
/// values[i][j] = chi_i(C_j); degrees are exact integers. Rows are sorted by
/// (degree, lexicographic on 1e-6-rounded value vectors) so tables are
/// reproducible. Values come from exact root-of-unity multiplicities, so
/// values[i][0] equals degrees[i] exactly.
struct CharacterTable {
    const GroupTable* group = nullptr;
    ConjugacyData classes;
    std::vector<int> degrees;
    std::vector<std::vector<Complex>> values;

    int count() const { return static_cast<int>(degrees.size()); }
    Complex value_at_element(int row, int g) const {
        return values[row][classes.class_of[g]];
    }
    bool is_trivial_row(int row) const;
};

/// Dixon-Schneider over GF(q) with q = c*exp(G)+1, q > 2*sqrt(|G|):
/// simultaneous splitting of the class-multiplication matrices, exact degree
/// recovery, root-of-unity lift by discrete Fourier inversion mod q.
/// Abelian groups take a direct character-tower path.
CharacterTable character_table(const GroupTable& g, const CharTableOptions& opt = {});

/// {g : chi(g) = chi(1)}, a normal subgroup.
Subgroup kernel_of_character(const CharacterTable& t, int row);

/// Minimum degree over nontrivial irreducible characters. |G| > 1 required.
int min_nontrivial_degree(const CharacterTable& t);

/// Least n such that the kernels of all irreducible characters of degree
/// <= n intersect trivially; 1 for the trivial group.
int mdus(const CharacterTable& t);
int mdus(const GroupTable& g, const CharTableOptions& opt = {});

/// Least degree of a faithful irreducible character, if one exists.
std::optional<int> min_faithful_degree(const CharacterTable& t);

/// Partition of the degree-n rows by equality of their restriction to the
/// commutator subgroup (as class functions, i.e. elementwise on G').
struct RPartition {
    int degree = 0;
    bool no_such_degree = false;
    std::vector<std::vector<int>> blocks; // global row indices, ascending
    // per row in block order: the restriction key (rounded values on G')
    std::vector<std::vector<std::pair<long long, long long>>> restriction_keys;
};
RPartition r_partition(const GroupTable& g, const CharacterTable& t, int degree);

struct FaithfulQuotientReport {
    int degree_bound = 0;
    std::vector<Subgroup> witnesses; // normal subgroups H with G/H faithful in U(<=n)
    int count = 0;
};

/// Exhaustive count of normal subgroups H such that G/H has a faithful
/// irreducible character of degree <= n. Capped enumeration (default 2000).
FaithfulQuotientReport faithful_quotient_count(const GroupTable& g, int degree_bound,
                                               int enumeration_cap = 2000,
                                               const CharTableOptions& opt = {});

/// Exponent of D(G') for the representation attached to row i: 1 when G' is
/// inside the kernel, otherwise read off explicit unitary matrices.
/// Implemented with rep-numeric machinery (see rep.cpp).
int image_exponent_on_derived(const CharacterTable& t, int row, std::uint64_t seed = 0);

} // namespace chu
