#include "liftmesh/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace liftmesh {

std::size_t thread_count() {
    if (const char* env = std::getenv("LIFTMESH_THREADS")) {
        std::size_t value = 0;
        const char* end = env + std::strlen(env);
        const auto [ptr, ec] = std::from_chars(env, end, value);
        if (ec == std::errc() && ptr == end && value > 0) return value;
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

}  // namespace liftmesh
