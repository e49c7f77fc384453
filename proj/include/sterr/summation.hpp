#pragma once

// Compensated (Neumaier) summation, usable with double, long double and
// BigFloat, plus a deterministic chunked reduction for parallel sweeps.
// Chunk boundaries are fixed by a constant chunk size, so the result is
// identical for any thread count; chunk partials are combined in ascending
// chunk order.

#include <atomic>
#include <thread>
#include <vector>

#include "sterr/precision.hpp"

namespace sterr {

template <class T>
class NeumaierSum {
  public:
    explicit NeumaierSum(T zero = T{}) : sum_(zero), comp_(std::move(zero)) {}

    void add(const T& x) {
        using std::abs;
        T t = sum_ + x;
        if (abs(sum_) >= abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = std::move(t);
    }

    T value() const { return sum_ + comp_; }

  private:
    T sum_;
    T comp_;
};

template <class T>
T compensated_sum(const std::vector<T>& xs, T zero = T{}) {
    NeumaierSum<T> acc(std::move(zero));
    for (const T& x : xs) acc.add(x);
    return acc.value();
}

inline constexpr long kSumChunk = 1L << 16;

// Sums term(i) for i in [begin, end). term must be safe to call from
// multiple threads (each invocation independent).
template <class T, class Term>
T chunked_sum(long begin, long end, Term&& term, T zero, int threads = 1) {
    if (end <= begin) return zero;
    const long n_chunks = (end - begin + kSumChunk - 1) / kSumChunk;
    std::vector<T> partial(static_cast<size_t>(n_chunks), zero);

    auto run_chunk = [&](long c) {
        const long lo = begin + c * kSumChunk;
        const long hi = lo + kSumChunk < end ? lo + kSumChunk : end;
        NeumaierSum<T> acc(zero);
        for (long i = lo; i < hi; ++i) acc.add(term(i));
        partial[static_cast<size_t>(c)] = acc.value();
    };

    if (threads <= 1 || n_chunks == 1) {
        for (long c = 0; c < n_chunks; ++c) run_chunk(c);
    } else {
        std::atomic<long> next{0};
        auto worker = [&] {
            for (;;) {
                long c = next.fetch_add(1);
                if (c >= n_chunks) return;
                run_chunk(c);
            }
        };
        std::vector<std::thread> pool;
        int nt = threads < static_cast<int>(n_chunks) ? threads : static_cast<int>(n_chunks);
        pool.reserve(static_cast<size_t>(nt));
        for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    NeumaierSum<T> total(zero);
    for (const T& p : partial) total.add(p);
    return total.value();
}

}  // namespace sterr
