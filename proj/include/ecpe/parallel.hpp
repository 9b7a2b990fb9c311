#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ecpe::par {

inline bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

inline int hardware_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Runs f(i) for i in [0, n). Work items must write to disjoint slots so the
// schedule cannot change the outcome; callers reduce in index order when a
// combined result is needed. threads <= 1 runs inline.
template <typename F>
void for_each_index(std::size_t n, int threads, F&& f) {
#ifdef _OPENMP
    if (threads > 1 && n > 1) {
        const long long nn = static_cast<long long>(n);
#pragma omp parallel for num_threads(threads) schedule(static)
        for (long long i = 0; i < nn; ++i) f(static_cast<std::size_t>(i));
        return;
    }
#endif
    for (std::size_t i = 0; i < n; ++i) f(i);
}

// Like for_each_index but captures exceptions per slot and rethrows the one
// with the lowest index, so failures are reported deterministically no
// matter how the loop was scheduled.
template <typename F>
void for_each_index_checked(std::size_t n, int threads, F&& f) {
    std::vector<std::exception_ptr> errors(n);
    for_each_index(n, threads, [&](std::size_t i) {
        try {
            f(i);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    });
    for (std::size_t i = 0; i < n; ++i)
        if (errors[i]) std::rethrow_exception(errors[i]);
}

}  // namespace ecpe::par
