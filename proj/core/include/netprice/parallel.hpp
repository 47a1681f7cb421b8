#pragma once

#include <cstddef>
#include <functional>

namespace netprice::par {

/// Global cap on worker threads (the CLI's --jobs). 1 = fully serial.
void set_max_jobs(unsigned jobs);
unsigned max_jobs();

/// Runs fn(i) for i in [0, n), possibly on several threads. Callers write
/// results into preallocated slots indexed by i, so outputs do not depend
/// on scheduling. Nested calls run serially on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace netprice::par
