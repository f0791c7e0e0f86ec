#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "chu/char_table.hpp"
#include "chu/group.hpp"
#include "chu/product.hpp"

namespace chu {

using Matrix = Eigen::MatrixXcd;

inline constexpr double kUnitaryTol = 1e-8;
inline constexpr double kHomomorphismTol = 1e-8;
inline constexpr double kTraceTol = 1e-6;
inline constexpr double kEquivCharTol = 1e-4;
inline constexpr double kIntertwinerTol = 1e-6;

/// How a representation was assembled.
struct BlockStructure {
    enum class Kind { Atom, DirectSum, Tensor };
    Kind kind = Kind::Atom;
    int atom_row = -1; // character row for atoms
    std::vector<BlockStructure> children;
    std::string render() const;
};

/// Explicit unitary matrices, one per group element.
struct UnitaryRep {
    const GroupTable* group = nullptr;
    int degree = 0;
    std::vector<Matrix> matrices;
    std::optional<int> character_row;
    BlockStructure block_structure;

    const Matrix& at(int g) const { return matrices[g]; }
    Complex trace_at(int g) const { return matrices[g].trace(); }
};

double max_abs(const Matrix& m);

/// Residual checks; throw NumericalFailure past the published tolerances.
void verify_unitary_rep(const UnitaryRep& rep, const CharacterTable* table = nullptr,
                        ExecMode mode = ExecMode::Parallel);

/// Realizes character row i as explicit unitary matrices: project the
/// regular representation with the central idempotent of chi, split one
/// irreducible block off the isotypic component with a seeded invariant
/// Hermitian operator, and polish with group-averaged Gram unitarization.
/// Retries seed+1 up to 8 times on a degenerate split.
UnitaryRep irrep_matrices(const GroupTable& g, const CharacterTable& t, int row,
                          std::uint64_t seed = 0, ExecMode mode = ExecMode::Parallel);

UnitaryRep direct_sum(const UnitaryRep& r1, const UnitaryRep& r2);
UnitaryRep tensor_product(const UnitaryRep& r1, const UnitaryRep& r2);

struct EquivalenceResult {
    bool equivalent = false;
    std::optional<Matrix> intertwiner; // R1(g) U = U R2(g), certified
    double char_distance = 0.0;
    double max_residual = 0.0;
};

/// Class-wise character comparison at 1e-4, with an averaged intertwiner
/// certified to 1e-6 when equivalent.
EquivalenceResult are_equivalent(const UnitaryRep& r1, const UnitaryRep& r2,
                                 std::uint64_t seed = 0);

/// Checks that evaluation at g preserves direct sums, tensor products and
/// unitary equivalence across the supplied representations.
struct EvaluationMapReport {
    int pairs_checked = 0;
    int equivalent_pairs = 0;
    double max_dsum_residual = 0.0;
    double max_tensor_residual = 0.0;
    double max_equiv_residual = 0.0;
};
EvaluationMapReport evaluation_map_check(const GroupTable& g, int element,
                                         const std::vector<const UnitaryRep*>& reps,
                                         std::uint64_t seed = 0);

/// Representation of a product group stored factor-wise: component i acts on
/// factor i, the whole thing is their outer tensor product. Components with
/// no entry are trivial (degree 1).
struct ProductRep {
    const ProductGroup* product = nullptr;
    std::vector<std::optional<UnitaryRep>> components;
    int degree = 1;

    /// Evaluate at a component tuple.
    Matrix at_tuple(const std::vector<int>& tuple) const;
};

ProductRep inflate_rep(const ProductGroup& p,
                       const std::vector<std::optional<UnitaryRep>>& components);

/// Materializes a ProductRep as per-element matrices over p.table.
UnitaryRep materialize_rep(const ProductRep& rep);

/// Factors whose embedded commutator subgroup acts nontrivially: the minimal
/// support J such that the rep, restricted to the derived subgroup, only
/// depends on the J-coordinates. Factor-wise route.
std::vector<int> derived_support(const ProductRep& rep, double tol = kUnitaryTol);

/// Same computation on a materialized rep over the product table, testing
/// embedded commutator elements directly.
std::vector<int> derived_support(const UnitaryRep& rep, const ProductGroup& p,
                                 double tol = kUnitaryTol);

} // namespace chu
