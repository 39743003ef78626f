#pragma once
// Deterministic parallelism: work is cut into a fixed number of index blocks
// regardless of thread count, each block is summed sequentially, and block
// results are combined by a fixed-shape pairwise tree.  Output is therefore
// bit-identical for any LMOMENT_THREADS setting.

#include <atomic>
#include <complex>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace lmoment {

inline int thread_count() {
    if (const char* env = std::getenv("LMOMENT_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return std::min(n, 64);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 16u));
}

inline constexpr size_t PARALLEL_BLOCKS = 256;

// Pairwise tree over a fixed block layout; never depends on thread schedule.
template <typename T>
T tree_reduce(std::vector<T> v) {
    if (v.empty()) return T{};
    while (v.size() > 1) {
        size_t half = (v.size() + 1) / 2;
        for (size_t i = 0; i + half < v.size(); ++i) v[i] = v[i] + v[i + half];
        v.resize(half);
    }
    return v[0];
}

// sum over i in [0, n) of term(i), term returning T (complex or double)
template <typename T, typename Fn>
T parallel_sum(size_t n, Fn&& term) {
    if (n == 0) return T{};
    size_t nblocks = std::min(PARALLEL_BLOCKS, n);
    std::vector<T> partial(nblocks, T{});
    std::atomic<size_t> next{0};
    int nthreads = std::min<size_t>(thread_count(), nblocks);
    auto worker = [&]() {
        for (;;) {
            size_t b = next.fetch_add(1);
            if (b >= nblocks) return;
            size_t lo = n * b / nblocks, hi = n * (b + 1) / nblocks;
            T acc{};
            for (size_t i = lo; i < hi; ++i) acc = acc + term(i);
            partial[b] = acc;
        }
    };
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return tree_reduce(std::move(partial));
}

// Strided variant: block b owns indices b, b + nblocks, ...  Use when the
// per-index cost falls off steeply with i, which would starve contiguous
// blocks.  Same determinism guarantee.
template <typename T, typename Fn>
T parallel_sum_strided(size_t n, Fn&& term) {
    if (n == 0) return T{};
    size_t nblocks = std::min(PARALLEL_BLOCKS, n);
    std::vector<T> partial(nblocks, T{});
    std::atomic<size_t> next{0};
    int nthreads = std::min<size_t>(thread_count(), nblocks);
    auto worker = [&]() {
        for (;;) {
            size_t b = next.fetch_add(1);
            if (b >= nblocks) return;
            T acc{};
            for (size_t i = b; i < n; i += nblocks) acc = acc + term(i);
            partial[b] = acc;
        }
    };
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return tree_reduce(std::move(partial));
}

// apply fn(i) for i in [0, n), unordered side effects allowed per index
template <typename Fn>
void parallel_for(size_t n, Fn&& fn) {
    if (n == 0) return;
    std::atomic<size_t> next{0};
    int nthreads = static_cast<int>(std::min<size_t>(thread_count(), n));
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
}

}  // namespace lmoment
