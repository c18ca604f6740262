#pragma once

/**
 * @file simulate.hpp
 * @brief Monte Carlo first-passage times of the simple random walk on C_N^k.
 *
 * Walk w draws from its own std::mt19937_64 whose seed is
 * splitmix64(seed ^ splitmix64(w)). Step choices use rejection sampling on the
 * raw 64-bit output, so results depend only on (seed, walk index) and are
 * identical for every thread count and standard library.
 */

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "cyclepower/errors.hpp"
#include "cyclepower/graph_model.hpp"

namespace cyclepower {

inline constexpr std::uint64_t kDefaultStepCap = 1'000'000'000ULL;
inline constexpr const char* kGeneratorId = "mt19937_64/splitmix64-keyed";

struct SimulationResult {
    double mean = 0;
    double std_error = 0;
    std::uint64_t walks = 0;
    std::uint64_t total_steps = 0;
    std::uint64_t seed = 0;
    std::string generator = kGeneratorId;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t walk_stream_seed(std::uint64_t seed, std::uint64_t walk) {
    return splitmix64(seed ^ splitmix64(walk));
}

/// Uniform integer in [0, bound) by rejection; bound > 0.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound + 1) % bound;
    std::uint64_t v;
    do {
        v = gen();
    } while (v > limit);
    return v % bound;
}

/// Steps for one walk from 0 to `ell`; throws once `cap` steps are exceeded.
inline std::uint64_t first_passage(const GraphSpec& spec, int ell, std::uint64_t stream_seed, std::uint64_t cap) {
    if (ell == 0) return 0;
    std::mt19937_64 gen(stream_seed);
    const int n = spec.n();
    const auto choices = static_cast<std::uint64_t>(spec.degree());
    int pos = 0;
    std::uint64_t steps = 0;
    while (pos != ell) {
        if (++steps > cap) throw SimulationBudgetError("simulation exceeded step cap of " + std::to_string(cap));
        const auto c = static_cast<int>(uniform_below(gen, choices));
        const int offset = c < spec.k() ? c + 1 : -(c - spec.k() + 1);
        pos = ((pos + offset) % n + n) % n;
    }
    return steps;
}

/// Mean and standard error of the first-passage time 0 -> ell over `walks`
/// independent trajectories. `threads == 0` uses hardware concurrency.
inline SimulationResult hit_simulate(const GraphSpec& spec, int ell, std::uint64_t walks, std::uint64_t seed,
                                     unsigned threads = 0, std::uint64_t step_cap = kDefaultStepCap) {
    if (walks < 1) throw ParameterError("hit_simulate: walks must be >= 1");
    if (ell < 0 || ell >= spec.n()) throw ParameterError("hit_simulate: need 0 <= ell < N");
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, walks));

    std::vector<std::uint64_t> lengths(walks);
    std::atomic<std::uint64_t> total{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&](std::uint64_t begin, std::uint64_t end) {
        try {
            for (std::uint64_t w = begin; w < end; ++w) {
                const std::uint64_t used = total.load(std::memory_order_relaxed);
                const std::uint64_t remaining = used >= step_cap ? 0 : step_cap - used;
                lengths[w] = first_passage(spec, ell, walk_stream_seed(seed, w), remaining);
                if (total.fetch_add(lengths[w], std::memory_order_relaxed) + lengths[w] > step_cap) {
                    throw SimulationBudgetError("simulation exceeded step cap of " + std::to_string(step_cap));
                }
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };

    std::vector<std::thread> pool;
    const std::uint64_t chunk = walks / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::uint64_t begin = t * chunk;
        const std::uint64_t end = t + 1 == threads ? walks : begin + chunk;
        pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);

    // Exact integer moments, so the summary is independent of thread layout.
    unsigned __int128 sum = 0;
    unsigned __int128 sum_sq = 0;
    for (std::uint64_t len : lengths) {
        sum += len;
        sum_sq += static_cast<unsigned __int128>(len) * len;
    }
    SimulationResult result;
    result.walks = walks;
    result.seed = seed;
    result.total_steps = static_cast<std::uint64_t>(sum);
    const long double n = static_cast<long double>(walks);
    const long double mean = static_cast<long double>(sum) / n;
    result.mean = static_cast<double>(mean);
    if (walks > 1) {
        // unbiased variance: (sum_sq - sum^2/n) / (n-1)
        const long double centered = static_cast<long double>(sum_sq) - static_cast<long double>(sum) * mean;
        const long double var = std::max(0.0L, centered / (n - 1));
        result.std_error = static_cast<double>(std::sqrt(var / n));
    }
    return result;
}

}  // namespace cyclepower
