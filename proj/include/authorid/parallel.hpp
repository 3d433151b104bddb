#ifndef AUTHORID_PARALLEL_HPP_
#define AUTHORID_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace authorid {

// Global cap on worker threads. 0 means hardware concurrency. The CLI's
// --threads flag sets this once at startup.
void set_max_threads(unsigned n);
unsigned max_threads();

// Runs fn(i) for i in [0, n). Each index is processed exactly once; callers
// must make fn(i) write only to its own slot so results do not depend on the
// thread count. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace authorid

#endif  // AUTHORID_PARALLEL_HPP_
