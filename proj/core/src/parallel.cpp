#include "sphtrunc/parallel.h"

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace sphtrunc
{
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t, std::size_t)> &body)
{
    const std::size_t chunks = std::min<std::size_t>(std::max(workers, 1), std::max<std::size_t>(n, 1));
    if (chunks <= 1)
    {
        body(0, n);
        return;
    }
    std::vector<std::exception_ptr> errors(chunks);
    std::vector<std::thread> threads;
    threads.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c)
    {
        const std::size_t begin = n * c / chunks;
        const std::size_t end = n * (c + 1) / chunks;
        threads.emplace_back([&, c, begin, end] {
            try
            {
                body(begin, end);
            }
            catch (...)
            {
                errors[c] = std::current_exception();
            }
        });
    }
    for (auto &t : threads)
        t.join();
    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);
}
} // namespace sphtrunc
