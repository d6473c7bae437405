#pragma once

#include <algorithm>
#include <cassert>
#include <cstring>
#include <cstddef>
#include <span>
#include <vector>

namespace simplets {

/// Number of ghost layers around every field array. Two are required by the
/// TVD stencils; the third covers face densities evaluated one face beyond
/// the outlet.
inline constexpr int kGhostLayers = 3;

/// Dense row-major 2D array addressed by logical indices that may be negative.
/// Index range is [-pad, nx + pad) x [-pad, ny + pad); x varies fastest.
template <class T>
class Array2D {
 public:
  Array2D() = default;
  Array2D(int nx, int ny, int pad = kGhostLayers, T init = T{})
      : nx_(nx),
        ny_(ny),
        pad_(pad),
        stride_(nx + 2 * pad),
        data_(static_cast<std::size_t>(nx + 2 * pad) * static_cast<std::size_t>(ny + 2 * pad),
              init) {}

  T& operator()(int i, int j) noexcept {
    assert(in_range(i, j));
    return data_[offset(i, j)];
  }
  const T& operator()(int i, int j) const noexcept {
    assert(in_range(i, j));
    return data_[offset(i, j)];
  }

  bool in_range(int i, int j) const noexcept {
    return i >= -pad_ && i < nx_ + pad_ && j >= -pad_ && j < ny_ + pad_;
  }

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  int pad() const noexcept { return pad_; }
  int i_begin() const noexcept { return -pad_; }
  int i_end() const noexcept { return nx_ + pad_; }
  int j_begin() const noexcept { return -pad_; }
  int j_end() const noexcept { return ny_ + pad_; }

  std::size_t size() const noexcept { return data_.size(); }
  std::size_t bytes() const noexcept { return data_.size() * sizeof(T); }

  std::span<T> raw() noexcept { return data_; }
  std::span<const T> raw() const noexcept { return data_; }

  void fill(const T& value) { std::fill(data_.begin(), data_.end(), value); }

  void swap(Array2D& other) noexcept {
    std::swap(nx_, other.nx_);
    std::swap(ny_, other.ny_);
    std::swap(pad_, other.pad_);
    std::swap(stride_, other.stride_);
    data_.swap(other.data_);
  }

  friend bool operator==(const Array2D& a, const Array2D& b) = default;

 private:
  std::size_t offset(int i, int j) const noexcept {
    return static_cast<std::size_t>(j + pad_) * static_cast<std::size_t>(stride_) +
           static_cast<std::size_t>(i + pad_);
  }

  int nx_ = 0;
  int ny_ = 0;
  int pad_ = 0;
  int stride_ = 0;
  std::vector<T> data_;
};

}  // namespace simplets

namespace simplets {

/// Byte-for-byte comparison; distinguishes -0.0 from +0.0 and NaN payloads.
template <class T>
bool bitwise_equal(const Array2D<T>& a, const Array2D<T>& b) noexcept {
  if (a.nx() != b.nx() || a.ny() != b.ny() || a.pad() != b.pad()) return false;
  return std::memcmp(a.raw().data(), b.raw().data(), a.bytes()) == 0;
}

}  // namespace simplets
