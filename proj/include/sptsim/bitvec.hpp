#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sptsim {

// Fixed-length bit array backed by 64-bit words. Bit i of word i/64 holds
// site i; unused tail bits are kept zero so popcount/equality work wordwise.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(int n) : n_(n), w_((n + 63) / 64, 0) {}

  int size() const { return n_; }

  bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i) { w_[i >> 6] |= uint64_t{1} << (i & 63); }
  void clear(int i) { w_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
  void flip(int i) { w_[i >> 6] ^= uint64_t{1} << (i & 63); }
  void assign(int i, bool v) { v ? set(i) : clear(i); }

  void fill(bool v) {
    for (auto& w : w_) w = v ? ~uint64_t{0} : 0;
    if (v) mask_tail();
  }

  int popcount() const {
    int c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
  }

  // Parity of the number of set bits: 0 = even, 1 = odd.
  int parity() const { return popcount() & 1; }

  const std::vector<uint64_t>& words() const { return w_; }
  uint64_t* word_data() { return w_.data(); }

  bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const BitVec& o) const { return !(*this == o); }

  // Hex encoding, most-significant nibble first; bit i is bit i of the
  // underlying integer. Width is ceil(n/4) digits.
  std::string to_hex() const {
    int digits = (n_ + 3) / 4;
    if (digits == 0) return "0";
    std::string s(digits, '0');
    for (int k = 0; k < digits; ++k) {
      int v = 0;
      for (int b = 0; b < 4; ++b) {
        int i = 4 * k + b;
        if (i < n_ && get(i)) v |= 1 << b;
      }
      s[digits - 1 - k] = "0123456789abcdef"[v];
    }
    return s;
  }

  static BitVec from_hex(const std::string& s, int n) {
    BitVec bv(n);
    int digits = static_cast<int>(s.size());
    for (int k = 0; k < digits; ++k) {
      char c = s[digits - 1 - k];
      int v;
      if (c >= '0' && c <= '9') v = c - '0';
      else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
      else throw std::invalid_argument("bad hex digit in bit string");
      for (int b = 0; b < 4; ++b) {
        int i = 4 * k + b;
        if (v & (1 << b)) {
          if (i >= n) throw std::invalid_argument("hex string wider than bit count");
          bv.set(i);
        }
      }
    }
    return bv;
  }

  // Pack low bits into an integer (requires n <= 32).
  uint32_t to_u32() const {
    if (n_ > 32) throw std::invalid_argument("BitVec::to_u32 requires n <= 32");
    return static_cast<uint32_t>(w_.empty() ? 0 : w_[0]);
  }
  static BitVec from_u32(uint32_t bits, int n) {
    if (n > 32) throw std::invalid_argument("BitVec::from_u32 requires n <= 32");
    BitVec bv(n);
    if (!bv.w_.empty()) bv.w_[0] = bits & (n == 32 ? ~uint32_t{0} : ((uint32_t{1} << n) - 1));
    return bv;
  }

 private:
  void mask_tail() {
    int tail = n_ & 63;
    if (tail != 0 && !w_.empty()) w_.back() &= (uint64_t{1} << tail) - 1;
  }

  int n_ = 0;
  std::vector<uint64_t> w_;
};

}  // namespace sptsim
