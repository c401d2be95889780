#include "hyplane/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hyplane
{

unsigned default_thread_count()
{
    if (const char* env = std::getenv("HYPLANE_THREADS"))
    {
        try
        {
            long n = std::stol(env);
            if (n >= 1)
                return static_cast<unsigned>(n);
        }
        catch (const std::exception&)
        {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n_tasks, const std::function<void(std::size_t)>& task, unsigned threads)
{
    if (threads == 0)
        threads = default_thread_count();
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_tasks));
    if (threads <= 1)
    {
        for (std::size_t i = 0; i < n_tasks; ++i)
            task(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < n_tasks; i = next++)
        {
            try
            {
                task(i);
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = n_tasks;
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    pool.clear();
    if (failure)
        std::rethrow_exception(failure);
}

}  // namespace hyplane
