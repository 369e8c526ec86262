#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

namespace tmig {

/// Immutable set of ids below a known universe size. Sparse sets are sorted
/// vectors; sets holding more than 1/32 of the universe switch to a bitset.
class IdSet {
 public:
  IdSet() = default;

  static IdSet from_sorted(std::vector<std::uint32_t> ids, std::size_t universe_size) {
    IdSet s;
    s.count_ = ids.size();
    if (ids.size() * 32 > universe_size && universe_size > 64) {
      s.dense_ = true;
      s.bits_.assign((universe_size + 63) / 64, 0);
      for (auto id : ids) s.bits_[id >> 6] |= std::uint64_t{1} << (id & 63);
    } else {
      s.sorted_ = std::move(ids);
    }
    return s;
  }

  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  bool dense() const { return dense_; }

  bool contains(std::uint32_t id) const {
    if (dense_) return (id >> 6) < bits_.size() && ((bits_[id >> 6] >> (id & 63)) & 1u);
    return std::binary_search(sorted_.begin(), sorted_.end(), id);
  }

  /// Ascending order.
  template <class F>
  void for_each(F&& f) const {
    if (!dense_) {
      for (auto id : sorted_) f(id);
      return;
    }
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      std::uint64_t word = bits_[w];
      while (word) {
        const int bit = std::countr_zero(word);
        f(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(bit)));
        word &= word - 1;
      }
    }
  }

  std::vector<std::uint32_t> to_vector() const {
    if (!dense_) return sorted_;
    std::vector<std::uint32_t> out;
    out.reserve(count_);
    for_each([&](std::uint32_t id) { out.push_back(id); });
    return out;
  }

  bool intersects(const IdSet& other) const {
    if (dense_ && other.dense_) {
      const std::size_t n = std::min(bits_.size(), other.bits_.size());
      for (std::size_t w = 0; w < n; ++w)
        if (bits_[w] & other.bits_[w]) return true;
      return false;
    }
    const IdSet& small = size() <= other.size() ? *this : other;
    const IdSet& large = size() <= other.size() ? other : *this;
    bool hit = false;
    small.for_each([&](std::uint32_t id) { hit = hit || large.contains(id); });
    return hit;
  }

  friend bool operator==(const IdSet& a, const IdSet& b) { return a.to_vector() == b.to_vector(); }

 private:
  std::vector<std::uint32_t> sorted_;
  std::vector<std::uint64_t> bits_;
  std::size_t count_ = 0;
  bool dense_ = false;
};

}  // namespace tmig
