#include "fractalhisto/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace fractalhisto {

unsigned thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    unsigned budget = std::min(hw, 8u);
    if (const char* env = std::getenv("FRACTALHISTO_THREADS")) {
        const long requested = std::strtol(env, nullptr, 10);
        if (requested >= 1) budget = static_cast<unsigned>(std::min<long>(requested, 64));
    }
    return budget;
}

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& chunk_body,
                  std::size_t min_grain) {
    if (begin >= end) return;
    const std::size_t count = end - begin;
    const unsigned budget = thread_budget();
    if (budget <= 1 || count < min_grain) {
        chunk_body(begin, end);
        return;
    }

    const std::size_t workers = std::min<std::size_t>(budget, count);
    const std::size_t chunk = (count + workers - 1) / workers;
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = begin + w * chunk;
        const std::size_t hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([&, w, lo, hi] {
            try {
                chunk_body(lo, hi);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (const auto& err : errors) {
        if (err) std::rethrow_exception(err);
    }
}

}  // namespace fractalhisto
