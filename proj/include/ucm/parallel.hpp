#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>

namespace ucm {

// Runs fn(i) for i in [0, n) on up to `threads` workers. The first exception
// (lowest index) is rethrown after all workers have joined.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

// Fixed-order pairwise (cascade) summation; bit-stable for a given input order.
double pairwise_sum(std::span<const double> values);
std::complex<double> pairwise_sum(std::span<const std::complex<double>> values);

}  // namespace ucm
