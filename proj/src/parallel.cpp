// SPDX-License-Identifier: Apache-2.0
#include "mmwsim/parallel.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>
#include <thread>
#include <vector>

namespace mmwsim {

void parallel_chunks(std::size_t count, int workers,
                     const std::function<void(std::size_t, std::size_t)>& fn) {
    if (workers < 1) throw std::invalid_argument("parallel_chunks: workers must be >= 1");
    if (count == 0) return;
    const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
    if (n == 1) {
        fn(0, count);
        return;
    }

    // Chunk w covers [w*base + min(w, rem), ...) — same partition every run.
    const std::size_t base = count / n;
    const std::size_t rem = count % n;
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(n);
    pool.reserve(n);
    for (std::size_t w = 0; w < n; ++w) {
        const std::size_t begin = w * base + std::min(w, rem);
        const std::size_t end = begin + base + (w < rem ? 1 : 0);
        pool.emplace_back([&fn, &errors, w, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace mmwsim
