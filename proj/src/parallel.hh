#ifndef WSX_SRC_PARALLEL_HH
#define WSX_SRC_PARALLEL_HH 1

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace wsx::detail
{
    /// Splits [0, count) into contiguous chunks, one per worker, and runs
    /// body(begin, end, chunk) for each. Chunk i always covers lower indices
    /// than chunk i+1, so callers merge per-chunk results in chunk order.
    inline auto run_chunked(std::size_t count, unsigned workers,
            const std::function<void (std::size_t, std::size_t, std::size_t)> & body) -> std::size_t
    {
        std::size_t chunks = workers <= 1 ? 1 : std::min<std::size_t>(workers, count == 0 ? 1 : count);
        if (chunks == 1) {
            body(0, count, 0);
            return 1;
        }
        std::vector<std::exception_ptr> errors(chunks);
        {
            std::vector<std::jthread> threads;
            for (std::size_t c = 0 ; c < chunks ; ++c) {
                std::size_t begin = count * c / chunks, end = count * (c + 1) / chunks;
                threads.emplace_back([&, begin, end, c] {
                    try {
                        body(begin, end, c);
                    }
                    catch (...) {
                        errors[c] = std::current_exception();
                    }
                });
            }
        }
        for (auto & e : errors)
            if (e)
                std::rethrow_exception(e);
        return chunks;
    }
}

#endif
