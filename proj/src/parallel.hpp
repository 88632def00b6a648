#ifndef NEWCOEF_SRC_PARALLEL_HPP
#define NEWCOEF_SRC_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace newcoef::detail {

// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index is handled
// by exactly one worker, so callers writing to slot i get deterministic output.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn && fn)
{
    threads = std::max(1u, std::min<unsigned>(threads, unsigned(std::max<std::size_t>(n, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += threads)
                    fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto & t : pool)
        t.join();
    for (auto & e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace newcoef::detail

#endif
