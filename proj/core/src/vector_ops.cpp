// vector_ops.cpp
#include "vector_ops.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace pagecurve::vec {

namespace {
constexpr std::int64_t kChunks = 64;

template <typename Partial>
auto chunked_sum(std::int64_t n, Partial partial) {
  using T = decltype(partial(std::int64_t{}, std::int64_t{}));
  std::array<T, kChunks> parts{};
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < kChunks; ++c) {
    const std::int64_t lo = n * c / kChunks;
    const std::int64_t hi = n * (c + 1) / kChunks;
    parts[c] = partial(lo, hi);
  }
  T total{};
  for (const T& p : parts) total += p;
  return total;
}
}  // namespace

Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
  return chunked_sum(static_cast<std::int64_t>(a.size()), [&](std::int64_t lo, std::int64_t hi) {
    double re = 0.0, im = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) {
      const Complex u = a[i], v = b[i];
      re += u.real() * v.real() + u.imag() * v.imag();
      im += u.real() * v.imag() - u.imag() * v.real();
    }
    return Complex(re, im);
  });
}

double norm(std::span<const Complex> a) {
  return std::sqrt(
      chunked_sum(static_cast<std::int64_t>(a.size()), [&](std::int64_t lo, std::int64_t hi) {
        double s = 0.0;
        for (std::int64_t i = lo; i < hi; ++i) s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
        return s;
      }));
}

// Complex products are spelled out: std::complex operator* goes through the
// Annex G NaN/inf recovery path, which is several times slower.
void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
  const std::int64_t n = static_cast<std::int64_t>(x.size());
  const double ar = alpha.real(), ai = alpha.imag();
  const double* xs = reinterpret_cast<const double*>(x.data());
  double* ys = reinterpret_cast<double*>(y.data());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const double xr = xs[2 * i], xi = xs[2 * i + 1];
    ys[2 * i] += ar * xr - ai * xi;
    ys[2 * i + 1] += ar * xi + ai * xr;
  }
}

void scale(Complex alpha, std::span<Complex> x) {
  const std::int64_t n = static_cast<std::int64_t>(x.size());
  const double ar = alpha.real(), ai = alpha.imag();
  double* xs = reinterpret_cast<double*>(x.data());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const double xr = xs[2 * i], xi = xs[2 * i + 1];
    xs[2 * i] = ar * xr - ai * xi;
    xs[2 * i + 1] = ar * xi + ai * xr;
  }
}

std::vector<Complex> project_out(const std::vector<std::vector<Complex>>& basis,
                                 std::size_t count, std::span<Complex> w) {
  const std::int64_t n = static_cast<std::int64_t>(w.size());
  const auto k = static_cast<std::int64_t>(count);
  std::vector<double> parts(static_cast<std::size_t>(kChunks * k * 2), 0.0);
  double* ws = reinterpret_cast<double*>(w.data());

#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < kChunks; ++c) {
    const std::int64_t lo = n * c / kChunks;
    const std::int64_t hi = n * (c + 1) / kChunks;
    for (std::int64_t b = 0; b < k; ++b) {
      const double* vs = reinterpret_cast<const double*>(basis[b].data());
      double re = 0.0, im = 0.0;
      for (std::int64_t i = lo; i < hi; ++i) {
        const double ur = vs[2 * i], ui = vs[2 * i + 1];
        const double xr = ws[2 * i], xi = ws[2 * i + 1];
        re += ur * xr + ui * xi;
        im += ur * xi - ui * xr;
      }
      parts[static_cast<std::size_t>((c * k + b) * 2)] = re;
      parts[static_cast<std::size_t>((c * k + b) * 2 + 1)] = im;
    }
  }
  std::vector<Complex> overlap(count);
  for (std::int64_t b = 0; b < k; ++b) {
    double re = 0.0, im = 0.0;
    for (std::int64_t c = 0; c < kChunks; ++c) {
      re += parts[static_cast<std::size_t>((c * k + b) * 2)];
      im += parts[static_cast<std::size_t>((c * k + b) * 2 + 1)];
    }
    overlap[static_cast<std::size_t>(b)] = Complex(re, im);
  }

#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < kChunks; ++c) {
    const std::int64_t lo = n * c / kChunks;
    const std::int64_t hi = n * (c + 1) / kChunks;
    for (std::int64_t b = 0; b < k; ++b) {
      const double* vs = reinterpret_cast<const double*>(basis[b].data());
      const double ar = overlap[static_cast<std::size_t>(b)].real();
      const double ai = overlap[static_cast<std::size_t>(b)].imag();
      for (std::int64_t i = lo; i < hi; ++i) {
        const double xr = vs[2 * i], xi = vs[2 * i + 1];
        ws[2 * i] -= ar * xr - ai * xi;
        ws[2 * i + 1] -= ar * xi + ai * xr;
      }
    }
  }
  return overlap;
}

}  // namespace pagecurve::vec
