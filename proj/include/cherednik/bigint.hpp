#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace cherednik {

// Arbitrary-precision signed integer, sign-magnitude over 32-bit limbs.
// Division is only needed in two restricted forms here (decimal printing and
// gcd), so the full schoolbook quotient is avoided: gcd is binary gcd.
class BigInt {
public:
  BigInt() = default;
  BigInt(long long v) {
    if (v < 0) neg_ = true;
    unsigned long long a = v < 0 ? 0ULL - static_cast<unsigned long long>(v)
                                 : static_cast<unsigned long long>(v);
    while (a) {
      limbs_.push_back(static_cast<uint32_t>(a & 0xffffffffu));
      a >>= 32;
    }
  }
  BigInt(int v) : BigInt(static_cast<long long>(v)) {}

  static BigInt from_string(const std::string& s) {
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
      neg = s[i] == '-';
      ++i;
    }
    if (i == s.size()) throw std::invalid_argument("BigInt: empty numeral");
    BigInt r;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9')
        throw std::invalid_argument("BigInt: bad digit in '" + s + "'");
      r.mul_small(10);
      r.add_small(static_cast<uint32_t>(s[i] - '0'));
    }
    r.neg_ = neg && !r.limbs_.empty();
    return r;
  }

  bool is_zero() const { return limbs_.empty(); }
  bool is_negative() const { return neg_; }
  int sign() const { return limbs_.empty() ? 0 : (neg_ ? -1 : 1); }

  friend bool operator==(const BigInt& a, const BigInt& b) {
    return a.neg_ == b.neg_ && a.limbs_ == b.limbs_;
  }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
  friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

  static int cmp(const BigInt& a, const BigInt& b) {
    if (a.neg_ != b.neg_) return a.neg_ ? -1 : 1;
    int m = cmp_mag(a.limbs_, b.limbs_);
    return a.neg_ ? -m : m;
  }

  BigInt operator-() const {
    BigInt r = *this;
    if (!r.limbs_.empty()) r.neg_ = !r.neg_;
    return r;
  }

  friend BigInt operator+(const BigInt& a, const BigInt& b) {
    BigInt r;
    if (a.neg_ == b.neg_) {
      r.limbs_ = add_mag(a.limbs_, b.limbs_);
      r.neg_ = a.neg_ && !r.limbs_.empty();
    } else {
      int m = cmp_mag(a.limbs_, b.limbs_);
      if (m == 0) return r;
      if (m > 0) {
        r.limbs_ = sub_mag(a.limbs_, b.limbs_);
        r.neg_ = a.neg_;
      } else {
        r.limbs_ = sub_mag(b.limbs_, a.limbs_);
        r.neg_ = b.neg_;
      }
    }
    return r;
  }
  friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    BigInt r;
    if (a.is_zero() || b.is_zero()) return r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
      uint64_t carry = 0;
      for (size_t j = 0; j < b.limbs_.size(); ++j) {
        uint64_t cur = static_cast<uint64_t>(a.limbs_[i]) * b.limbs_[j] +
                       r.limbs_[i + j] + carry;
        r.limbs_[i + j] = static_cast<uint32_t>(cur);
        carry = cur >> 32;
      }
      size_t k = i + b.limbs_.size();
      while (carry) {
        uint64_t cur = r.limbs_[k] + carry;
        r.limbs_[k] = static_cast<uint32_t>(cur);
        carry = cur >> 32;
        ++k;
      }
    }
    r.trim();
    r.neg_ = (a.neg_ != b.neg_) && !r.limbs_.empty();
    return r;
  }

  BigInt& operator+=(const BigInt& b) { return *this = *this + b; }
  BigInt& operator-=(const BigInt& b) { return *this = *this - b; }
  BigInt& operator*=(const BigInt& b) { return *this = *this * b; }

  // Exact division: asserts the remainder is zero. Used for rational
  // normalization where the divisor is a known common factor.
  BigInt divide_exact(const BigInt& d) const {
    if (d.is_zero()) throw std::domain_error("BigInt: division by zero");
    if (d.limbs_.size() == 1) {
      BigInt q = *this;
      q.neg_ = false;
      uint64_t rem = 0;
      for (size_t i = q.limbs_.size(); i-- > 0;) {
        uint64_t acc = (rem << 32) | q.limbs_[i];
        q.limbs_[i] = static_cast<uint32_t>(acc / d.limbs_[0]);
        rem = acc % d.limbs_[0];
      }
      if (rem) throw std::domain_error("BigInt: inexact division");
      q.trim();
      q.neg_ = (neg_ != d.neg_) && !q.limbs_.empty();
      return q;
    }
    BigInt q, r;
    divmod_mag(*this, d, q, r);
    if (!r.is_zero()) throw std::domain_error("BigInt: inexact division");
    q.neg_ = (neg_ != d.neg_) && !q.limbs_.empty();
    return q;
  }

  static BigInt gcd(BigInt a, BigInt b) {
    a.neg_ = b.neg_ = false;
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int shift = 0;
    while (a.even() && b.even()) {
      a.shr1();
      b.shr1();
      ++shift;
    }
    while (a.even()) a.shr1();
    while (!b.is_zero()) {
      while (b.even()) b.shr1();
      if (cmp_mag(a.limbs_, b.limbs_) > 0) std::swap(a, b);
      b = b - a;
      b.neg_ = false;
    }
    for (int i = 0; i < shift; ++i) a.shl1();
    return a;
  }

  long long to_long_long() const {
    unsigned long long v = 0;
    if (limbs_.size() > 2) throw std::overflow_error("BigInt: to_long_long overflow");
    for (size_t i = limbs_.size(); i-- > 0;) v = (v << 32) | limbs_[i];
    if (!neg_ && v > static_cast<unsigned long long>(std::numeric_limits<long long>::max()))
      throw std::overflow_error("BigInt: to_long_long overflow");
    if (neg_ && v > static_cast<unsigned long long>(std::numeric_limits<long long>::max()) + 1)
      throw std::overflow_error("BigInt: to_long_long overflow");
    return neg_ ? -static_cast<long long>(v) : static_cast<long long>(v);
  }

  bool fits_long_long() const {
    if (limbs_.size() > 2) return false;
    unsigned long long v = 0;
    for (size_t i = limbs_.size(); i-- > 0;) v = (v << 32) | limbs_[i];
    unsigned long long lim =
        static_cast<unsigned long long>(std::numeric_limits<long long>::max());
    return v <= lim + (neg_ ? 1u : 0u);
  }

  std::string to_string() const {
    if (limbs_.empty()) return "0";
    std::vector<uint32_t> cur = limbs_;
    std::string out;
    while (!cur.empty()) {
      uint64_t rem = 0;
      for (size_t i = cur.size(); i-- > 0;) {
        uint64_t acc = (rem << 32) | cur[i];
        cur[i] = static_cast<uint32_t>(acc / 1000000000u);
        rem = acc % 1000000000u;
      }
      while (!cur.empty() && cur.back() == 0) cur.pop_back();
      std::string chunk = std::to_string(rem);
      if (!cur.empty())
        chunk = std::string(9 - chunk.size(), '0') + chunk;
      out = chunk + out;
    }
    return (neg_ ? "-" : "") + out;
  }

private:
  bool even() const { return limbs_.empty() || (limbs_[0] & 1u) == 0; }
  void shr1() {
    uint32_t carry = 0;
    for (size_t i = limbs_.size(); i-- > 0;) {
      uint32_t cur = limbs_[i];
      limbs_[i] = (cur >> 1) | (carry << 31);
      carry = cur & 1u;
    }
    trim();
  }
  void shl1() {
    uint32_t carry = 0;
    for (size_t i = 0; i < limbs_.size(); ++i) {
      uint32_t cur = limbs_[i];
      limbs_[i] = (cur << 1) | carry;
      carry = cur >> 31;
    }
    if (carry) limbs_.push_back(carry);
  }
  void mul_small(uint32_t m) {
    uint64_t carry = 0;
    for (size_t i = 0; i < limbs_.size(); ++i) {
      uint64_t cur = static_cast<uint64_t>(limbs_[i]) * m + carry;
      limbs_[i] = static_cast<uint32_t>(cur);
      carry = cur >> 32;
    }
    if (carry) limbs_.push_back(static_cast<uint32_t>(carry));
  }
  void add_small(uint32_t a) {
    uint64_t carry = a;
    for (size_t i = 0; i < limbs_.size() && carry; ++i) {
      uint64_t cur = limbs_[i] + carry;
      limbs_[i] = static_cast<uint32_t>(cur);
      carry = cur >> 32;
    }
    if (carry) limbs_.push_back(static_cast<uint32_t>(carry));
  }
  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) neg_ = false;
  }
  static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  }
  static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b) {
    const std::vector<uint32_t>&x = a.size() >= b.size() ? a : b;
    const std::vector<uint32_t>&y = a.size() >= b.size() ? b : a;
    std::vector<uint32_t> r = x;
    uint64_t carry = 0;
    for (size_t i = 0; i < r.size(); ++i) {
      uint64_t cur = r[i] + carry + (i < y.size() ? y[i] : 0);
      r[i] = static_cast<uint32_t>(cur);
      carry = cur >> 32;
      if (!carry && i >= y.size()) break;
    }
    if (carry) r.push_back(static_cast<uint32_t>(carry));
    return r;
  }
  // requires |a| >= |b|
  static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r = a;
    int64_t borrow = 0;
    for (size_t i = 0; i < r.size(); ++i) {
      int64_t cur = static_cast<int64_t>(r[i]) - borrow - (i < b.size() ? b[i] : 0);
      borrow = cur < 0;
      if (cur < 0) cur += (1LL << 32);
      r[i] = static_cast<uint32_t>(cur);
      if (!borrow && i >= b.size()) break;
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }
  // magnitude divmod by shift-and-subtract; fine at the sizes this library sees
  static void divmod_mag(const BigInt& a, const BigInt& d, BigInt& q, BigInt& r) {
    q = BigInt();
    r = a;
    r.neg_ = false;
    BigInt dd = d;
    dd.neg_ = false;
    if (cmp_mag(r.limbs_, dd.limbs_) < 0) return;
    int shift = static_cast<int>((r.limbs_.size() - dd.limbs_.size() + 1) * 32);
    BigInt cur = dd;
    for (int i = 0; i < shift; ++i) cur.shl1();
    std::vector<bool> bits;
    for (int i = shift; i >= 0; --i) {
      if (cmp_mag(r.limbs_, cur.limbs_) >= 0) {
        r = r - cur;
        r.neg_ = false;
        bits.push_back(true);
      } else {
        bits.push_back(false);
      }
      cur.shr1();
    }
    for (bool b : bits) {
      q.shl1();
      if (b) q.add_small(1);
    }
    q.trim();
  }

  bool neg_ = false;
  std::vector<uint32_t> limbs_;  // little-endian, no trailing zeros
};

}  // namespace cherednik
