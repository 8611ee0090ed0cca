#include "eggbergman/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>

namespace eggb {

int worker_count() {
    if (const char* env = std::getenv("EGGB_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void for_each_block(std::uint64_t total, std::uint64_t block_size,
                    const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& fn) {
    if (total == 0) return;
    std::uint64_t nblocks = (total - 1) / block_size + 1;
    int workers = worker_count();
    if (workers <= 1 || nblocks <= 1) {
        for (std::uint64_t b = 0; b < nblocks; ++b) {
            std::uint64_t lo = b * block_size;
            std::uint64_t hi = std::min(total, lo + block_size);
            fn(static_cast<std::size_t>(b), lo, hi);
        }
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mtx;
    auto run = [&] {
        try {
            for (;;) {
                if (failed.load(std::memory_order_relaxed)) return;
                std::uint64_t b = next.fetch_add(1);
                if (b >= nblocks) return;
                std::uint64_t lo = b * block_size;
                std::uint64_t hi = std::min(total, lo + block_size);
                fn(static_cast<std::size_t>(b), lo, hi);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mtx);
            if (!error) error = std::current_exception();
            failed.store(true, std::memory_order_relaxed);
        }
    };
    std::vector<std::thread> pool;
    int nthreads = static_cast<int>(std::min<std::uint64_t>(workers, nblocks));
    pool.reserve(nthreads - 1);
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(run);
    run();
    for (std::thread& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace eggb
