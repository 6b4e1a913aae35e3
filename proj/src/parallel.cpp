#include "kkp/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

#include "kkp/errors.hpp"

namespace kkp {

int thread_count() {
    const char* env = std::getenv("KKP_THREADS");
    if (env == nullptr || *env == '\0') return omp_get_max_threads();
    try {
        long v = std::stol(env);
        require(v >= 0, "KKP_THREADS must be >= 0");
        return v == 0 ? 1 : static_cast<int>(v);
    } catch (const std::invalid_argument&) {
        throw InputError(std::string("KKP_THREADS is not a number: ") + env);
    }
}

} // namespace kkp
