// vector_ops.hpp - reductions with a fixed chunking so results do not depend
// on the thread count
#pragma once

#include <complex>
#include <span>
#include <vector>

namespace pagecurve::vec {

using Complex = std::complex<double>;

/// sum_i conj(a_i) b_i
Complex dot(std::span<const Complex> a, std::span<const Complex> b);
double norm(std::span<const Complex> a);
/// y += alpha x
void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y);
void scale(Complex alpha, std::span<Complex> x);

/// One classical Gram-Schmidt pass of w against basis[0..count): returns the
/// overlaps <basis_i, w> taken before the update and subtracts them. Each
/// chunk of w stays in cache while all basis vectors stream past it once.
std::vector<Complex> project_out(const std::vector<std::vector<Complex>>& basis,
                                 std::size_t count, std::span<Complex> w);

}  // namespace pagecurve::vec
