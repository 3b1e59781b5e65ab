#pragma once

/// @file parallel.hpp
/// @brief Minimal fork-join loop over an index range.

#include <functional>

namespace stokeseig {

/// Worker count used by parallel_for; 0 restores the hardware default.
void set_num_threads(int n);
int num_threads();

/// Calls f(i) for i in [0, n) on up to num_threads() workers (further capped by
/// max_workers when positive). The first exception thrown by any call is
/// rethrown on the calling thread. Calls made from inside a worker run serially.
void parallel_for(int n, const std::function<void(int)>& f, int max_workers = 0);

}  // namespace stokeseig
