// sector_basis.hpp - fixed-particle-number basis with combinatorial ranking
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pagecurve {

/// Exact binomial coefficient; returns UINT64_MAX when the value overflows.
std::uint64_t binomial(int n, int k) noexcept;

/// Pascal table C(n, k) for 0 <= n, k <= 64 (saturating at UINT64_MAX).
class BinomialTable {
 public:
  BinomialTable();
  std::uint64_t operator()(int n, int k) const noexcept {
    return (k < 0 || n < 0 || k > n) ? 0 : table_[n][k];
  }

 private:
  std::array<std::array<std::uint64_t, 65>, 65> table_{};
};

/// All L-bit patterns with exactly M set bits, in ascending integer order.
///
/// Bit i is site i. The index of a pattern with set bits p_0 < p_1 < ... is
/// sum_j C(p_j, j + 1) (combinatorial number system), so moving particle j
/// from p to p + 1 shifts the index by exactly C(p, j).
class SectorBasis {
 public:
  static constexpr std::uint64_t kDefaultCapacity = std::uint64_t{1} << 22;

  /// Throws ValidationError for L outside [1, 63] or M outside [0, L], and
  /// CapacityError when C(L, M) exceeds capacity.
  SectorBasis(int L, int M, std::uint64_t capacity = kDefaultCapacity);

  int sites() const noexcept { return sites_; }
  int particles() const noexcept { return particles_; }
  std::size_t dimension() const noexcept { return patterns_.size(); }

  std::uint64_t pattern(std::size_t index) const noexcept { return patterns_[index]; }
  std::span<const std::uint64_t> patterns() const noexcept { return patterns_; }

  /// Index of a pattern with exactly M set bits below bit L.
  std::size_t rank(std::uint64_t pattern) const noexcept;
  /// Pattern at an index; the inverse of rank (computed, not looked up).
  std::uint64_t unrank(std::size_t index) const noexcept;

  const BinomialTable& binomials() const noexcept { return binom_; }

 private:
  int sites_;
  int particles_;
  BinomialTable binom_;
  std::vector<std::uint64_t> patterns_;
};

/// Rank of a pattern among all patterns with the same popcount (any width).
std::uint64_t combinatorial_rank(std::uint64_t pattern, const BinomialTable& binom) noexcept;

}  // namespace pagecurve
