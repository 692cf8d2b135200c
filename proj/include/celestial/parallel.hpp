#pragma once

#include <exception>
#include <mutex>

namespace celestial {

/// Caps the OpenMP team size with CELESTIAL_THREADS when it is set. Returns the team size.
int apply_thread_limit_from_env();

int worker_threads();

/// First exception thrown by any worker of a parallel loop, rethrown after the loop.
class ParallelErrorSlot {
public:
    void capture(long index) noexcept;
    void rethrow_if_any() const;

private:
    std::mutex mutex_;
    long index_ = -1;
    std::exception_ptr error_;
};

}  // namespace celestial
