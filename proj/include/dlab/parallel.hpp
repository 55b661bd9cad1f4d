#pragma once

#include <algorithm>
#include <atomic>
#include <complex>
#include <cstddef>
#include <cstdlib>
#include <span>
#include <thread>
#include <vector>

namespace dlab {

namespace detail {
inline std::atomic<unsigned>& thread_limit_storage() {
    static std::atomic<unsigned> limit{0};
    return limit;
}
}  // namespace detail

/// Caps worker threads used by the sweeps in this library (0 = hardware default).
inline void set_thread_limit(unsigned n) { detail::thread_limit_storage().store(n); }

inline unsigned thread_limit() {
    unsigned n = detail::thread_limit_storage().load();
    if (n == 0) {
        if (const char* env = std::getenv("DISPERSIVE_LAB_THREADS")) {
            long v = std::strtol(env, nullptr, 10);
            if (v > 0) n = static_cast<unsigned>(v);
        }
    }
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return n;
}

/// Runs body(i) for i in [0, count). Each index writes only its own slot, so
/// results do not depend on the thread count.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
    const std::size_t workers = std::min<std::size_t>(thread_limit(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

/// Pairwise (cascade) summation in a fixed left-to-right tree order.
template <class T>
T pairwise_sum(std::span<const T> v) {
    if (v.empty()) return T{};
    if (v.size() <= 16) {
        T acc{};
        for (const T& x : v) acc += x;
        return acc;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
    return pairwise_sum(std::span<const T>(v.data(), v.size()));
}

}  // namespace dlab
