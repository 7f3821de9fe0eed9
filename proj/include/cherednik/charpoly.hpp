#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cherednik/errors.hpp"
#include "cherednik/rational.hpp"

namespace cherednik {

// Graded character chi(t) = t^offset * (sum_e num[e] t^e) / (1-t)^rank.
// Canonical form: no zero coefficients are stored and, when the numerator is
// nonzero, its least stored exponent is 0 (absorbed into the offset).
class GradedCharacter {
public:
  GradedCharacter() = default;
  GradedCharacter(Rational offset, std::map<long long, BigInt> numerator, int rank)
      : offset_(std::move(offset)), num_(std::move(numerator)), rank_(rank) {
    canonicalize();
  }

  static GradedCharacter zero(int rank) { return GradedCharacter(Rational(0), {}, rank); }
  static GradedCharacter monomial(const Rational& e, BigInt coeff, int rank) {
    std::map<long long, BigInt> n;
    n[0] = std::move(coeff);
    return GradedCharacter(e, std::move(n), rank);
  }

  const Rational& offset() const { return offset_; }
  const std::map<long long, BigInt>& numerator() const { return num_; }
  int rank() const { return rank_; }
  bool is_zero() const { return num_.empty(); }

  friend bool operator==(const GradedCharacter& a, const GradedCharacter& b) {
    return a.rank_ == b.rank_ && a.num_ == b.num_ &&
           (a.is_zero() ? b.is_zero() : a.offset_ == b.offset_);
  }
  friend bool operator!=(const GradedCharacter& a, const GradedCharacter& b) {
    return !(a == b);
  }

  friend GradedCharacter operator+(const GradedCharacter& a, const GradedCharacter& b) {
    if (a.rank_ != b.rank_) throw IncompatibleError("rank mismatch in character sum");
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    Rational gap = b.offset_ - a.offset_;
    if (!gap.is_integer())
      throw IncompatibleError("character offsets differ by a non-integer");
    long long shift = gap.to_integer();
    GradedCharacter r = a;
    for (const auto& [e, c] : b.num_) {
      BigInt& slot = r.num_[e + shift];
      slot += c;
      if (slot.is_zero()) r.num_.erase(e + shift);
    }
    r.canonicalize();
    return r;
  }

  GradedCharacter scaled(const BigInt& k) const {
    GradedCharacter r = *this;
    if (k.is_zero()) {
      r.num_.clear();
      r.canonicalize();
      return r;
    }
    for (auto& [e, c] : r.num_) c = c * k;
    return r;
  }

  // multiplicity of (1-t) dividing the numerator, and the final quotient
  std::pair<int, std::map<long long, BigInt>> strip_one_minus_t() const {
    std::map<long long, BigInt> cur = num_;
    int m = 0;
    while (!cur.empty()) {
      auto q = divide_once(cur);
      if (!q) break;
      cur = std::move(*q);
      ++m;
    }
    return {m, cur};
  }

  // dim Supp: the order of the pole of chi at t = 1
  int pole_order_at_one() const {
    if (is_zero()) throw ZeroCharacterError();
    auto [m, quot] = strip_one_minus_t();
    return m >= rank_ ? 0 : rank_ - m;
  }

  // when the character is a polynomial, its value at t = 1
  std::optional<BigInt> dimension_if_finite() const {
    if (is_zero()) throw ZeroCharacterError();
    auto [m, quot] = strip_one_minus_t();
    if (m < rank_) return std::nullopt;
    // (1-t)^(m-rank) * quot evaluated at 1 is zero unless m == rank
    if (m > rank_) return BigInt(0);
    BigInt s(0);
    for (const auto& [e, c] : quot) s += c;
    return s;
  }

  // coefficient of t^k in 1/(1-t)^rank is binom(k+rank-1, rank-1); the table
  // is grown on demand per thread
  static const std::vector<BigInt>& geometric_coeffs(int rank, long long upto) {
    thread_local std::map<int, std::vector<BigInt>> cache;
    auto& v = cache[rank];
    if (v.empty()) v.push_back(BigInt(1));
    while (static_cast<long long>(v.size()) <= upto) {
      long long k = static_cast<long long>(v.size());
      if (rank == 0) {
        v.push_back(BigInt(0));
      } else {
        v.push_back((v.back() * BigInt(k + rank - 1)).divide_exact(BigInt(k)));
      }
    }
    return v;
  }

  // exact series coefficients of chi through degree offset + upto
  std::vector<std::pair<Rational, BigInt>> graded_dims(long long upto) const {
    std::vector<std::pair<Rational, BigInt>> out;
    if (is_zero()) return out;
    const auto& binom = geometric_coeffs(rank_, upto);
    Rational deg = offset_;
    for (long long k = 0; k <= upto; ++k) {
      BigInt c(0);
      for (const auto& [e, a] : num_) {
        if (e > k) break;
        c += a * binom[static_cast<size_t>(k - e)];
      }
      out.emplace_back(deg, std::move(c));
      deg = deg + Rational(1);
    }
    return out;
  }

  // coefficient of t^(offset + k) in the series expansion
  BigInt series_coefficient(long long k) const {
    if (k < 0 || is_zero()) return BigInt(0);
    const auto& binom = geometric_coeffs(rank_, k);
    BigInt c(0);
    for (const auto& [e, a] : num_) {
      if (e > k) break;
      c += a * binom[static_cast<size_t>(k - e)];
    }
    return c;
  }

  // least k <= upto with a negative series coefficient, if any
  std::optional<long long> first_negative_coefficient(long long upto) const {
    if (is_zero()) return std::nullopt;
    const auto& binom = geometric_coeffs(rank_, upto);
    for (long long k = 0; k <= upto; ++k) {
      BigInt c(0);
      for (const auto& [e, a] : num_) {
        if (e > k) break;
        c += a * binom[static_cast<size_t>(k - e)];
      }
      if (c.is_negative()) return k;
    }
    return std::nullopt;
  }

  // polynomial rendering of a finite-dimensional character, exponents offset
  // by the (integral) offset; empty when the character still has a pole
  std::optional<std::string> polynomial_text() const {
    if (is_zero()) return std::nullopt;
    auto [m, quot] = strip_one_minus_t();
    if (m != rank_ || !offset_.is_integer()) return std::nullopt;
    long long shift = offset_.to_integer();
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : quot) {
      if (!first) os << (c.is_negative() ? " - " : " + ");
      else if (c.is_negative()) os << "-";
      first = false;
      BigInt a = c.is_negative() ? -c : c;
      long long expn = e + shift;
      if (expn == 0) os << a.to_string();
      else {
        if (a != BigInt(1)) os << a.to_string() << "*";
        os << "t";
        if (expn != 1) os << "^" << expn;
      }
    }
    return os.str();
  }

  // text form used by the CLI reports: t^(p/q) * (c0 + c1*t + ...) / (1-t)^r
  std::string to_text() const {
    std::ostringstream os;
    os << "t^(" << offset_.to_string() << ") * (";
    bool first = true;
    if (num_.empty()) os << "0";
    for (const auto& [e, c] : num_) {
      if (!first) os << (c.is_negative() ? " - " : " + ");
      else if (c.is_negative()) os << "-";
      first = false;
      BigInt a = c.is_negative() ? -c : c;
      if (e == 0) os << a.to_string();
      else {
        if (a != BigInt(1)) os << a.to_string() << "*";
        os << "t";
        if (e != 1) os << "^" << e;
      }
    }
    os << ") / (1-t)^" << rank_;
    return os.str();
  }

  static GradedCharacter from_text(const std::string& s) {
    auto fail = [&] { throw SchemaError("bad character text: " + s); };
    size_t p = s.find("t^(");
    size_t q = s.find(") * (", p);
    size_t r = s.rfind(") / (1-t)^");
    if (p != 0 || q == std::string::npos || r == std::string::npos) fail();
    Rational off = Rational::parse(s.substr(3, q - 3));
    int rank = std::stoi(s.substr(r + 10));
    std::string body = s.substr(q + 5, r - (q + 5));
    std::map<long long, BigInt> num;
    size_t i = 0;
    int sign = 1;
    auto skip_ws = [&] { while (i < body.size() && body[i] == ' ') ++i; };
    while (true) {
      skip_ws();
      if (i >= body.size()) break;
      if (body[i] == '+') { sign = 1; ++i; skip_ws(); }
      else if (body[i] == '-') { sign = -1; ++i; skip_ws(); }
      std::string digits;
      while (i < body.size() && isdigit(static_cast<unsigned char>(body[i]))) digits += body[i++];
      BigInt coeff = digits.empty() ? BigInt(1) : BigInt::from_string(digits);
      long long expn = 0;
      if (i < body.size() && body[i] == '*') ++i;
      if (i < body.size() && body[i] == 't') {
        ++i;
        expn = 1;
        if (i < body.size() && body[i] == '^') {
          ++i;
          std::string ed;
          while (i < body.size() && (isdigit(static_cast<unsigned char>(body[i])) || body[i] == '-'))
            ed += body[i++];
          expn = std::stoll(ed);
        }
      }
      if (sign < 0) coeff = -coeff;
      if (!coeff.is_zero() && !(digits == "0" && expn == 0)) {
        BigInt& slot = num[expn];
        slot += coeff;
        if (slot.is_zero()) num.erase(expn);
      }
      sign = 1;
    }
    return GradedCharacter(off, std::move(num), rank);
  }

private:
  void canonicalize() {
    for (auto it = num_.begin(); it != num_.end();)
      it = it->second.is_zero() ? num_.erase(it) : std::next(it);
    if (num_.empty()) {
      offset_ = Rational(0);
      return;
    }
    long long lo = num_.begin()->first;
    if (lo != 0) {
      std::map<long long, BigInt> shifted;
      for (auto& [e, c] : num_) shifted.emplace(e - lo, std::move(c));
      num_ = std::move(shifted);
      offset_ = offset_ + Rational(lo);
    }
  }

  // one exact division by (1-t); nullopt if not divisible
  static std::optional<std::map<long long, BigInt>> divide_once(
      const std::map<long long, BigInt>& p) {
    std::map<long long, BigInt> q;
    BigInt run(0);
    long long lo = p.begin()->first, hi = p.rbegin()->first;
    for (long long e = lo; e <= hi; ++e) {
      auto it = p.find(e);
      if (it != p.end()) run += it->second;
      if (!run.is_zero()) q[e] = run;
    }
    if (!run.is_zero()) return std::nullopt;  // remainder at t = 1
    return q;
  }

  Rational offset_;
  std::map<long long, BigInt> num_;
  int rank_ = 0;
};

}  // namespace cherednik
