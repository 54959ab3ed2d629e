#pragma once

#include <cstddef>
#include <functional>

namespace dtbias {

// Runs fn(0), ..., fn(count - 1) on up to `threads` workers (0 = hardware
// default, 1 = inline). Iterations must be independent and write only to
// their own slots; the first exception thrown is rethrown on the caller.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace dtbias
