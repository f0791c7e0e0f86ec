#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace chu {

/// Execution mode for the hot kernels. Every parallel kernel has a serial
/// twin that walks the same blocked schedule, so the two produce
/// bit-identical results; tests and the benchmark tool compare them.
enum class ExecMode { Serial, Parallel };

/// Fixed block length used by all deterministic reductions. Partial sums are
/// formed per block (serially within a block) and merged in block order, so
/// the result does not depend on the number of threads.
inline constexpr std::size_t kReductionBlock = 64;

inline std::size_t block_count(std::size_t n) {
    return (n + kReductionBlock - 1) / kReductionBlock;
}

/// Deterministic blocked reduction over i in [0, n).
/// `accumulate(acc, i)` folds element i into a block-local accumulator of
/// type Acc; `merge(total, acc)` folds block results in block order.
template <typename Acc, typename AccumulateFn, typename MergeFn>
Acc blocked_reduce(std::size_t n, Acc init, AccumulateFn&& accumulate,
                   MergeFn&& merge, ExecMode mode) {
    const std::size_t nblocks = block_count(n);
    std::vector<Acc> partial(nblocks, init);

    auto run_block = [&](std::size_t b) {
        const std::size_t lo = b * kReductionBlock;
        const std::size_t hi = lo + kReductionBlock < n ? lo + kReductionBlock : n;
        Acc acc = init;
        for (std::size_t i = lo; i < hi; ++i) accumulate(acc, i);
        partial[b] = acc;
    };

    if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(static)
        for (long long b = 0; b < static_cast<long long>(nblocks); ++b)
            run_block(static_cast<std::size_t>(b));
    } else {
        for (std::size_t b = 0; b < nblocks; ++b) run_block(b);
    }

    Acc total = init;
    for (std::size_t b = 0; b < nblocks; ++b) merge(total, partial[b]);
    return total;
}

/// Parallel for over i in [0, n) with independent iterations (each i writes
/// only locations owned by i), so scheduling cannot change the result.
template <typename BodyFn>
void parallel_for(std::size_t n, BodyFn&& body, ExecMode mode) {
    if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            body(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < n; ++i) body(i);
    }
}

} // namespace chu
