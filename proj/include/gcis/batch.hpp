#pragma once

#include <span>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gcis/locate.hpp"

// Batch query kernels. Queries are independent and read-only over the
// immutable grammar, so a batch fans out across OpenMP threads with one
// report slot per pattern. The serial kernel is the reference the parallel
// one is tested against.

namespace gcis {

template <class Store>
std::vector<locate_report> locate_batch_serial(const grammar<Store>& g,
                                               std::span<const std::string> patterns,
                                               const locate_options& opts = {}) {
    std::vector<locate_report> out(patterns.size());
    for (size_t i = 0; i < patterns.size(); ++i) out[i] = locate(g, patterns[i], opts);
    return out;
}

template <class Store>
std::vector<locate_report> locate_batch(const grammar<Store>& g,
                                        std::span<const std::string> patterns,
                                        const locate_options& opts = {}, int threads = 0) {
#ifdef _OPENMP
    std::vector<locate_report> out(patterns.size());
    if (threads <= 0) threads = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int64_t i = 0; i < static_cast<int64_t>(patterns.size()); ++i)
        out[i] = locate(g, patterns[i], opts);
    return out;
#else
    (void)threads;
    return locate_batch_serial(g, patterns, opts);
#endif
}

} // namespace gcis
