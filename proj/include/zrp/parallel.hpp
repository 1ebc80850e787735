#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace zrp
{
//! Worker count: ZRP_THREADS if set (>= 1), else hardware concurrency.
unsigned int thread_count();

/*!
 * Evaluate fn(i) for i in [0, n) on up to thread_count() threads and
 * return the results in index order.
 *
 * Each index is computed independently, so the output does not depend on
 * the number of threads. If any call throws, the exception from the lowest
 * failing index is rethrown after all workers finish.
 */
template<class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& fn)
{
    std::vector<T> results(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++)
        {
            try
            {
                results[i] = fn(i);
            }
            catch (...)
            {
                errors[i] = std::current_exception();
            }
        }
    };

    std::size_t const workers
        = std::min<std::size_t>(thread_count(), std::max<std::size_t>(n, 1));
    if (workers <= 1)
    {
        worker();
    }
    else
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(worker);
    }

    for (auto const& e : errors)
    {
        if (e)
            std::rethrow_exception(e);
    }
    return results;
}

}  // namespace zrp
