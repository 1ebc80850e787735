#include "zrp/parallel.hpp"

#include <cstdlib>

namespace zrp
{
unsigned int thread_count()
{
    if (char const* env = std::getenv("ZRP_THREADS"))
    {
        char* end = nullptr;
        long const value = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && value >= 1)
            return static_cast<unsigned int>(value);
    }
    unsigned int const hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace zrp
