#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace hlf {

// Set of world indices. Frames range from a handful of worlds up to a few
// thousand canonical segments, so a plain vector<uint64_t> is enough.
class Bits {
public:
  Bits() = default;
  explicit Bits(int n) : n_(n), w_(static_cast<size_t>((n + 63) >> 6), 0) {}

  int universe() const { return n_; }

  bool test(int i) const {
    assert(i >= 0 && i < n_);
    return (w_[static_cast<size_t>(i >> 6)] >> (i & 63)) & 1u;
  }
  void set(int i) {
    assert(i >= 0 && i < n_);
    w_[static_cast<size_t>(i >> 6)] |= uint64_t{1} << (i & 63);
  }
  void reset(int i) {
    assert(i >= 0 && i < n_);
    w_[static_cast<size_t>(i >> 6)] &= ~(uint64_t{1} << (i & 63));
  }

  bool none() const {
    for (uint64_t x : w_)
      if (x) return false;
    return true;
  }
  bool any() const { return !none(); }

  int count() const {
    int c = 0;
    for (uint64_t x : w_) c += __builtin_popcountll(x);
    return c;
  }

  bool subset_of(const Bits& o) const {
    assert(n_ == o.n_);
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  Bits& operator|=(const Bits& o) {
    assert(n_ == o.n_);
    for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  Bits& operator&=(const Bits& o) {
    assert(n_ == o.n_);
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  Bits operator|(const Bits& o) const { Bits r = *this; r |= o; return r; }
  Bits operator&(const Bits& o) const { Bits r = *this; r &= o; return r; }

  // set difference
  Bits operator-(const Bits& o) const {
    assert(n_ == o.n_);
    Bits r = *this;
    for (size_t i = 0; i < w_.size(); ++i) r.w_[i] &= ~o.w_[i];
    return r;
  }

  Bits complement() const { return all(n_) - *this; }

  static Bits all(int n) {
    Bits r(n);
    for (int i = 0; i < n; ++i) r.set(i);
    return r;
  }
  static Bits single(int n, int i) {
    Bits r(n);
    r.set(i);
    return r;
  }

  friend bool operator==(const Bits& a, const Bits& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }
  friend bool operator!=(const Bits& a, const Bits& b) { return !(a == b); }
  friend bool operator<(const Bits& a, const Bits& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    for (size_t i = a.w_.size(); i-- > 0;)
      if (a.w_[i] != b.w_[i]) return a.w_[i] < b.w_[i];
    return false;
  }

  // packs a small set into one word, used as a hash/canonicalisation key
  uint64_t encode() const {
    assert(n_ <= 64);
    return w_.empty() ? 0 : w_[0];
  }

  int next(int from) const {
    for (int i = from; i < n_; ++i)
      if (test(i)) return i;
    return -1;
  }

  template <class F>
  void for_each(F f) const {
    for (int i = next(0); i >= 0; i = next(i + 1)) f(i);
  }

private:
  int n_ = 0;
  std::vector<uint64_t> w_;
};

}  // namespace hlf
