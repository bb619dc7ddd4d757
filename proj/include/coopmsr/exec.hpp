#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace coopmsr {

/// Execution policy for the data-parallel kernels. Every kernel produces
/// bit-identical results under both policies; `serial` is the reference path.
enum class Exec { serial, parallel };

inline int hardware_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Runs fn(begin, end) over a disjoint cover of [0, count). Under
/// Exec::parallel each chunk goes to one OpenMP thread; exceptions are
/// captured and rethrown after the region joins.
template <class F>
void for_each_chunk(Exec exec, std::int64_t count, F&& fn) {
    if (count <= 0) return;
#ifdef _OPENMP
    if (exec == Exec::parallel && omp_get_max_threads() > 1) {
        std::exception_ptr err;
#pragma omp parallel
        {
            const int nt = omp_get_num_threads();
            const int id = omp_get_thread_num();
            const std::int64_t chunk = (count + nt - 1) / nt;
            const std::int64_t begin = std::min<std::int64_t>(count, chunk * id);
            const std::int64_t end = std::min<std::int64_t>(count, begin + chunk);
            if (begin < end) {
                try {
                    fn(begin, end);
                } catch (...) {
#pragma omp critical(coopmsr_for_each_chunk_err)
                    if (!err) err = std::current_exception();
                }
            }
        }
        if (err) std::rethrow_exception(err);
        return;
    }
#endif
    (void)exec;
    fn(std::int64_t{0}, count);
}

template <class F>
void for_each_index(Exec exec, std::int64_t count, F&& fn) {
    for_each_chunk(exec, count, [&](std::int64_t b, std::int64_t e) {
        for (std::int64_t i = b; i < e; ++i) fn(i);
    });
}

}  // namespace coopmsr
