#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <span>
#include <thread>
#include <vector>

#include "ahlfors/common.hpp"

namespace ahlfors {

/// Neumaier-compensated accumulator. Adding terms in a fixed order gives
/// bit-identical results on every run, which the determinism contract relies on.
class CompensatedSum {
  public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Pairwise reduction with a fixed, input-size-determined tree.
inline double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 16) {
        CompensatedSum s;
        for (double x : xs) s.add(x);
        return s.value();
    }
    size_t h = xs.size() / 2;
    return pairwise_sum(xs.first(h)) + pairwise_sum(xs.subspan(h));
}

/// Deterministic parallel map-reduce: work is split into a fixed number of
/// chunks that depends only on the item count, each chunk's result is stored
/// by index, and the final reduction is serial. The outcome is therefore
/// bit-identical for any worker count.
class ThreadPool {
  public:
    explicit ThreadPool(unsigned workers = 0) { set_workers(workers); }

    void set_workers(unsigned workers) {
        workers_ = workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : workers;
    }
    unsigned workers() const { return workers_; }

    // fn(chunk_index, begin, end)
    void run_chunked(size_t n_items, size_t n_chunks,
                     const std::function<void(size_t, size_t, size_t)>& fn) const {
        if (n_items == 0) return;
        n_chunks = std::min(n_chunks, n_items);
        if (workers_ <= 1 || n_chunks <= 1) {
            for (size_t c = 0; c < n_chunks; ++c) {
                auto [b, e] = chunk_range(n_items, n_chunks, c);
                fn(c, b, e);
            }
            return;
        }
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (;;) {
                size_t c = next.fetch_add(1);
                if (c >= n_chunks) break;
                auto [b, e] = chunk_range(n_items, n_chunks, c);
                fn(c, b, e);
            }
        };
        std::vector<std::thread> threads;
        unsigned nt = std::min<size_t>(workers_, n_chunks);
        threads.reserve(nt);
        for (unsigned t = 1; t < nt; ++t) threads.emplace_back(worker);
        worker();
        for (auto& th : threads) th.join();
    }

    static std::pair<size_t, size_t> chunk_range(size_t n, size_t chunks, size_t c) {
        size_t b = n * c / chunks;
        size_t e = n * (c + 1) / chunks;
        return {b, e};
    }

  private:
    unsigned workers_ = 1;
};

// Process-wide pool, configured once by the CLI (--threads).
inline ThreadPool& global_pool() {
    static ThreadPool pool(0);
    return pool;
}

inline constexpr size_t kDefaultChunks = 256;

// Deterministic sum of fn(i) over i in [0, n): per-chunk compensated partial
// sums, serial pairwise combine.
inline double parallel_sum(size_t n, const std::function<double(size_t)>& fn,
                           const ThreadPool& pool = global_pool()) {
    std::vector<double> partial(std::min(n, kDefaultChunks), 0.0);
    pool.run_chunked(n, kDefaultChunks, [&](size_t c, size_t b, size_t e) {
        CompensatedSum s;
        for (size_t i = b; i < e; ++i) s.add(fn(i));
        partial[c] = s.value();
    });
    return pairwise_sum(partial);
}

// --- low-discrepancy sampling ------------------------------------------------

inline double van_der_corput(uint64_t k) {
    double x = 0.0, base = 0.5;
    for (++k; k > 0; k >>= 1, base *= 0.5)
        if (k & 1) x += base;
    return x;
}

/// Radial-angular low-discrepancy points in the annulus r_lo <= |z| <= r_hi,
/// area-uniform in radius, golden-angle in theta. Fixed seed -> fixed sequence.
inline std::vector<cplx> low_discrepancy_annulus(double r_lo, double r_hi, size_t n,
                                                 uint64_t seed = 0) {
    constexpr double golden = 0.6180339887498949;
    std::vector<cplx> pts;
    pts.reserve(n);
    double lo2 = r_lo * r_lo, hi2 = r_hi * r_hi;
    for (size_t k = 0; k < n; ++k) {
        double u = van_der_corput(k + seed);
        double r = std::sqrt(lo2 + (hi2 - lo2) * u);
        double t = two_pi * std::fmod(golden * static_cast<double>(k + seed + 1), 1.0);
        pts.emplace_back(r * std::cos(t), r * std::sin(t));
    }
    return pts;
}

}  // namespace ahlfors
