#include "celestial/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace celestial {

int apply_thread_limit_from_env() {
    if (const char* env = std::getenv("CELESTIAL_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n >= 1) omp_set_num_threads(n);
        } catch (const std::exception&) {
        }
    }
    return omp_get_max_threads();
}

int worker_threads() { return omp_get_max_threads(); }

void ParallelErrorSlot::capture(long index) noexcept {
    std::lock_guard lock(mutex_);
    if (error_ && index_ <= index) return;
    index_ = index;
    error_ = std::current_exception();
}

void ParallelErrorSlot::rethrow_if_any() const {
    if (error_) std::rethrow_exception(error_);
}

}  // namespace celestial
