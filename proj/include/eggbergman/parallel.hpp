#ifndef EGGBERGMAN_PARALLEL_HPP
#define EGGBERGMAN_PARALLEL_HPP

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace eggb {

/// Worker count: EGGB_THREADS env override, else hardware concurrency.
int worker_count();

/// Runs fn(block_index, begin, end) over fixed-size blocks of [0, total).
/// Block boundaries depend only on (total, block_size), never on the worker
/// count, so per-block results can be reduced in block order to give
/// bit-identical totals for any number of threads.
void for_each_block(std::uint64_t total, std::uint64_t block_size,
                    const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& fn);

/// Block map-reduce with ordered combination. `map` fills one partial result
/// per block; partials are folded left-to-right in block order.
template <class T, class Map, class Fold>
T block_mapreduce(std::uint64_t total, std::uint64_t block_size, T init, Map&& map,
                  Fold&& fold) {
    std::uint64_t nblocks = total == 0 ? 0 : (total - 1) / block_size + 1;
    std::vector<T> partial(nblocks, init);
    for_each_block(total, block_size,
                   [&](std::size_t b, std::uint64_t lo, std::uint64_t hi) {
                       partial[b] = map(lo, hi);
                   });
    T acc = init;
    for (const T& p : partial) acc = fold(acc, p);
    return acc;
}

} // namespace eggb

#endif
