#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace latcone {

// Fixed-capacity bitset sized once per cone builder (one bit per generator).
struct DynBits {
  std::vector<uint64_t> w;

  DynBits() = default;
  explicit DynBits(int nbits) : w(((size_t)nbits + 63) / 64, 0) {}

  void set(int i) { w[i >> 6] |= 1ull << (i & 63); }
  bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }

  int count() const {
    int c = 0;
    for (uint64_t x : w) c += std::popcount(x);
    return c;
  }

  friend int and_count(const DynBits& a, const DynBits& b) {
    int c = 0;
    for (size_t i = 0; i < a.w.size(); ++i) c += std::popcount(a.w[i] & b.w[i]);
    return c;
  }
  // (a & b) subset of c, i.e. every common zero-generator also lies on c
  friend bool and_subset(const DynBits& a, const DynBits& b, const DynBits& c) {
    for (size_t i = 0; i < a.w.size(); ++i)
      if ((a.w[i] & b.w[i] & ~c.w[i]) != 0) return false;
    return true;
  }
  friend DynBits and_of(const DynBits& a, const DynBits& b) {
    DynBits r;
    r.w.resize(a.w.size());
    for (size_t i = 0; i < a.w.size(); ++i) r.w[i] = a.w[i] & b.w[i];
    return r;
  }

  template <class F>
  void for_each(F&& f) const {
    for (size_t i = 0; i < w.size(); ++i) {
      uint64_t x = w[i];
      while (x) {
        int b = std::countr_zero(x);
        f((int)(i * 64 + b));
        x &= x - 1;
      }
    }
  }
};

}  // namespace latcone
