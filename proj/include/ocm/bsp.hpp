// Copyright (c) ocm toolkit contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Bulk-synchronous execution substrate. A launch runs a kernel body over an
// index range with a barrier at the end; between launches the host may run
// arbitrary sequential steps. Kernels must follow the write-set discipline:
// each index plain-writes only cells it owns (no two indices write the same
// cell), reads either pre-launch state or cells written through CAS, and
// never relies on observing another index's same-launch plain write. Under
// that discipline the final state is identical for the sequential schedule,
// any thread count, and any shuffled order, which the tests exercise.
//
// Schedules:
//   seq      ascending index order on the calling thread
//   par      static contiguous partition over a persistent worker pool
//   shuffle  seeded pseudorandom permutation, run on the calling thread
//
// fixpoint() relaunches a kernel until no index reports progress; the final
// quiet launch is included in the iteration count, and a monotone kernel can
// never need more than range+1 launches (exceeding that throws, which is the
// divergence guard).

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

namespace ocm {

enum class Schedule { Seq, Par, Shuffle };

struct EngineOptions {
    Schedule schedule = Schedule::Seq;
    unsigned workers = 0; // 0 = hardware concurrency
    std::uint64_t seed = 1;
};

class FixpointFlag {
  public:
    void mark() noexcept { v_.store(true, std::memory_order_relaxed); }
    bool any() const noexcept { return v_.load(std::memory_order_relaxed); }
    void reset() noexcept { v_.store(false, std::memory_order_relaxed); }

  private:
    std::atomic<bool> v_{false};
};

// One atomically swappable 64-bit slot for CAS voting loops.
class CasCell {
  public:
    static constexpr std::uint64_t kEmpty = ~std::uint64_t{0};

    std::uint64_t load() const noexcept { return v_.load(std::memory_order_acquire); }
    bool compare_exchange(std::uint64_t& expected, std::uint64_t desired) noexcept {
        return v_.compare_exchange_weak(expected, desired, std::memory_order_acq_rel,
                                        std::memory_order_acquire);
    }
    void reset(std::uint64_t value = kEmpty) noexcept { v_.store(value, std::memory_order_release); }

  private:
    std::atomic<std::uint64_t> v_{kEmpty};
};

class Engine {
  public:
    explicit Engine(EngineOptions opt = {}) : opt_(opt) {
        if (opt_.workers == 0) {
            opt_.workers = std::thread::hardware_concurrency();
            if (opt_.workers == 0)
                opt_.workers = 1;
        }
    }

    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    ~Engine() { stop_pool(); }

    const EngineOptions& options() const { return opt_; }
    std::uint64_t launches() const { return launches_; }
    std::uint64_t fixpoint_iterations() const { return fixpoint_iters_; }

    // body(index)
    template <class F> void launch(std::size_t range, F&& body) {
        ++launches_;
        if (range == 0)
            return;
        switch (opt_.schedule) {
        case Schedule::Seq:
            for (std::size_t i = 0; i < range; ++i)
                body(i);
            break;
        case Schedule::Shuffle: {
            std::vector<std::size_t> order(range);
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::mt19937_64 rng(opt_.seed * 0x9e3779b97f4a7c15ull + launches_);
            std::shuffle(order.begin(), order.end(), rng);
            for (std::size_t i : order)
                body(i);
            break;
        }
        case Schedule::Par:
            run_partitioned(range, [&](std::size_t lo, std::size_t hi) {
                for (std::size_t i = lo; i < hi; ++i)
                    body(i);
            });
            break;
        }
    }

    // body(index, flag); returns whether any index marked progress.
    template <class F> bool launch_flagged(std::size_t range, F&& body) {
        flag_.reset();
        launch(range, [&](std::size_t i) { body(i, flag_); });
        return flag_.any();
    }

    // Relaunches until quiet. `epilogue` runs after every launch (including
    // the final quiet one); used for ping-pong plane swaps.
    template <class F, class E>
    std::size_t fixpoint(std::size_t range, F&& body, E&& epilogue) {
        std::size_t iters = 0;
        for (;;) {
            const bool progressed = launch_flagged(range, body);
            ++iters;
            ++fixpoint_iters_;
            epilogue();
            if (!progressed)
                return iters;
            if (iters > range)
                throw std::logic_error("fixpoint failed to converge within range+1 launches");
        }
    }

    template <class F> std::size_t fixpoint(std::size_t range, F&& body) {
        return fixpoint(range, body, [] {});
    }

    // Test instrumentation: when a tracer is installed, kernels report their
    // plain writes through trace(). Install/remove only between launches.
    void set_tracer(std::function<void(const char*, std::size_t)> t) {
        tracer_ = std::move(t);
        tracing_.store(tracer_ != nullptr, std::memory_order_release);
    }
    void trace(const char* tag, std::size_t cell) {
        if (!tracing_.load(std::memory_order_acquire))
            return;
        std::lock_guard<std::mutex> lock(trace_mu_);
        tracer_(tag, cell);
    }

  private:
    void run_partitioned(std::size_t range, const std::function<void(std::size_t, std::size_t)>& chunk) {
        const unsigned w = opt_.workers;
        if (w <= 1) {
            chunk(0, range);
            return;
        }
        start_pool();
        {
            std::unique_lock<std::mutex> lock(mu_);
            job_ = [this, range, &chunk, w](unsigned id) {
                const std::size_t lo = range * id / w;
                const std::size_t hi = range * (id + 1) / w;
                if (lo < hi)
                    chunk(lo, hi);
            };
            pending_ = w;
            ++generation_;
            cv_work_.notify_all();
            cv_done_.wait(lock, [this] { return pending_ == 0; });
            job_ = nullptr;
        }
        if (pending_error_) {
            auto err = pending_error_;
            pending_error_ = nullptr;
            std::rethrow_exception(err);
        }
    }

    void start_pool() {
        if (!threads_.empty())
            return;
        threads_.reserve(opt_.workers);
        for (unsigned id = 0; id < opt_.workers; ++id) {
            threads_.emplace_back([this, id] {
                std::uint64_t last_gen = 0;
                for (;;) {
                    std::function<void(unsigned)> job;
                    {
                        std::unique_lock<std::mutex> lock(mu_);
                        cv_work_.wait(lock, [&] { return stop_ || generation_ != last_gen; });
                        if (stop_)
                            return;
                        last_gen = generation_;
                        job = job_;
                    }
                    try {
                        job(id);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(mu_);
                        if (!pending_error_)
                            pending_error_ = std::current_exception();
                    }
                    {
                        std::lock_guard<std::mutex> lock(mu_);
                        if (--pending_ == 0)
                            cv_done_.notify_all();
                    }
                }
            });
        }
    }

    void stop_pool() {
        {
            std::lock_guard<std::mutex> lock(mu_);
            stop_ = true;
            cv_work_.notify_all();
        }
        for (std::thread& t : threads_)
            t.join();
        threads_.clear();
    }

    EngineOptions opt_;
    std::uint64_t launches_ = 0;
    std::uint64_t fixpoint_iters_ = 0;
    FixpointFlag flag_;

    std::vector<std::thread> threads_;
    std::mutex mu_;
    std::condition_variable cv_work_, cv_done_;
    std::function<void(unsigned)> job_;
    std::size_t pending_ = 0;
    std::uint64_t generation_ = 0;
    bool stop_ = false;
    std::exception_ptr pending_error_;

    std::atomic<bool> tracing_{false};
    std::mutex trace_mu_;
    std::function<void(const char*, std::size_t)> tracer_;
};

// Host-side reduction over slots; deterministic left-to-right scan, so the
// result is identical under every schedule. Returns the index of the least
// active item, or nullopt when no slot is active (the empty-reduction
// signal).
template <class ActiveFn, class LessFn>
std::optional<std::size_t> reduce_min_index(std::size_t range, ActiveFn&& active, LessFn&& less) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < range; ++i) {
        if (!active(i))
            continue;
        if (!best || less(i, *best))
            best = i;
    }
    return best;
}

} // namespace ocm
