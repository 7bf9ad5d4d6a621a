#pragma once

namespace gtent {

// Execution policy for the data-parallel kernels. Serial and Parallel give
// bit-identical results: every output vertex is reduced by one thread in a
// fixed order.
enum class Exec { Serial, Parallel };

void set_thread_count(int n);  // n <= 0 restores the OpenMP default
int thread_count();

}  // namespace gtent
