// sector_basis.cpp
#include "pagecurve/sector_basis.hpp"

#include <bit>
#include <limits>
#include <string>

#include "pagecurve/errors.hpp"

namespace pagecurve {

namespace {
constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
}

std::uint64_t binomial(int n, int k) noexcept {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  __extension__ typedef unsigned __int128 wide;
  wide value = 1;
  for (int i = 1; i <= k; ++i) {
    value = value * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (value > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(value);
}

BinomialTable::BinomialTable() {
  for (int n = 0; n <= 64; ++n) {
    table_[n][0] = 1;
    for (int k = 1; k <= n; ++k) {
      const std::uint64_t a = table_[n - 1][k - 1];
      const std::uint64_t b = k <= n - 1 ? table_[n - 1][k] : 0;
      table_[n][k] = (a > kSaturated - b) ? kSaturated : a + b;
    }
  }
}

std::uint64_t combinatorial_rank(std::uint64_t pattern, const BinomialTable& binom) noexcept {
  std::uint64_t r = 0;
  int j = 1;
  while (pattern) {
    const int p = std::countr_zero(pattern);
    r += binom(p, j++);
    pattern &= pattern - 1;
  }
  return r;
}

SectorBasis::SectorBasis(int L, int M, std::uint64_t capacity) : sites_(L), particles_(M) {
  if (L < 1 || L > 63) throw ValidationError("L", "sector basis needs 1 <= L <= 63");
  if (M < 0 || M > L) throw ValidationError("M", "particle number must lie in [0, L]");
  const std::uint64_t dim = binomial(L, M);
  if (dim > capacity) throw CapacityError(L, M, dim, capacity);

  patterns_.reserve(dim);
  if (M == 0) {
    patterns_.push_back(0);
    return;
  }
  // Gosper's hack walks same-popcount integers in ascending order.
  std::uint64_t x = (std::uint64_t{1} << M) - 1;
  const std::uint64_t limit = std::uint64_t{1} << L;
  while (x < limit) {
    patterns_.push_back(x);
    const std::uint64_t c = x & (~x + 1);
    const std::uint64_t r = x + c;
    x = (((r ^ x) >> 2) / c) | r;
  }
}

std::size_t SectorBasis::rank(std::uint64_t pattern) const noexcept {
  return static_cast<std::size_t>(combinatorial_rank(pattern, binom_));
}

std::uint64_t SectorBasis::unrank(std::size_t index) const noexcept {
  std::uint64_t pattern = 0;
  std::uint64_t rest = index;
  for (int j = particles_; j >= 1; --j) {
    int p = j - 1;
    while (binom_(p + 1, j) <= rest) ++p;
    pattern |= std::uint64_t{1} << p;
    rest -= binom_(p, j);
  }
  return pattern;
}

}  // namespace pagecurve
