#pragma once

#include <optional>
#include <vector>

#include "chu/char_table.hpp"
#include "chu/group.hpp"

namespace chu {

/// A direct product of finite groups, kept factor-wise. The full table is
/// only materialized under the order cap; everything else works on
/// component tuples. Mixed-radix element encoding matches what
/// build_group(DirectProduct...) produces: the last factor varies fastest.
struct ProductGroup {
    std::vector<GroupTable> factors;
    std::vector<long long> strides;           // valid when order fits
    std::optional<long long> order;           // nullopt on overflow
    std::optional<GroupTable> table;          // materialized form, if under cap

    int factor_count() const { return static_cast<int>(factors.size()); }

    /// Index of the element that is x in factor i and identity elsewhere.
    long long embed(int factor, int x) const { return strides[factor] * x; }

    void decode(long long g, std::vector<int>& out) const {
        for (int i = 0; i < factor_count(); ++i) {
            out[i] = static_cast<int>(g / strides[i]);
            g %= strides[i];
        }
    }
};

/// Builds the factor-wise product; materializes the table when the order is
/// at most `materialize_cap`.
ProductGroup make_product(std::vector<GroupTable> factors, int materialize_cap,
                          ExecMode mode = ExecMode::Parallel);

} // namespace chu
