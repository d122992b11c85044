#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace hkverify {

/// Rank-R array with every index ranging over 0..n-1, row-major.
template <class T, std::size_t Rank>
class DenseTensor {
 public:
  DenseTensor() = default;
  explicit DenseTensor(int n, const T& fill = T{}) : n_(n), data_(size_for(n), fill) {}

  int extent() const { return n_; }

  template <class... Idx>
  T& operator()(Idx... idx) {
    static_assert(sizeof...(Idx) == Rank);
    return data_[offset({static_cast<int>(idx)...})];
  }
  template <class... Idx>
  const T& operator()(Idx... idx) const {
    static_assert(sizeof...(Idx) == Rank);
    return data_[offset({static_cast<int>(idx)...})];
  }

  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  friend bool operator==(const DenseTensor&, const DenseTensor&) = default;

 private:
  static std::size_t size_for(int n) {
    std::size_t s = 1;
    for (std::size_t r = 0; r < Rank; ++r) s *= static_cast<std::size_t>(n);
    return s;
  }
  std::size_t offset(const std::array<int, Rank>& idx) const {
    std::size_t o = 0;
    for (int i : idx) o = o * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
    return o;
  }

  int n_ = 0;
  std::vector<T> data_;
};

}  // namespace hkverify
