#pragma once

#include <vector>

#include "cherednik/charpoly.hpp"

namespace cherednik {

// A defect-1 block presented by its shifted weight list (first weight 0),
// member dimensions in the same order, and the ambient group rank.
struct Defect1Block {
  std::vector<Rational> weights;
  std::vector<long long> dims;
  int rank = 8;

  void validate() const {
    if (weights.size() < 2) throw ConsistencyError("defect-1 block needs >= 2 members");
    if (weights.size() != dims.size()) throw ConsistencyError("weights/dims length");
    if (!(weights.front() == Rational(0)))
      throw ConsistencyError("first shifted weight must be 0");
    for (size_t i = 0; i + 1 < weights.size(); ++i)
      if (!(weights[i] < weights[i + 1]))
        throw ConsistencyError("defect-1 weights must strictly increase");
    for (const auto& w : weights)
      if (!w.is_integer()) throw ConsistencyError("shifted weights must be integers");
    for (long long d : dims)
      if (d <= 0) throw ConsistencyError("dims must be positive");
  }
};

// 1's on and just above the diagonal, 0 elsewhere
inline std::vector<std::vector<long long>> defect1_matrix(const Defect1Block& b) {
  b.validate();
  size_t m = b.weights.size();
  std::vector<std::vector<long long>> d(m, std::vector<long long>(m, 0));
  for (size_t i = 0; i < m; ++i) {
    d[i][i] = 1;
    if (i + 1 < m) d[i][i + 1] = 1;
  }
  return d;
}

// alternating character of L(tau_1); its pole order is dim Supp L(tau_1)
inline GradedCharacter defect1_character(const Defect1Block& b) {
  b.validate();
  std::map<long long, BigInt> num;
  for (size_t k = 0; k < b.weights.size(); ++k) {
    long long e = b.weights[k].to_integer();
    BigInt& slot = num[e];
    slot += BigInt((k % 2 == 0) ? b.dims[k] : -b.dims[k]);
    if (slot.is_zero()) num.erase(e);
  }
  return GradedCharacter(Rational(0), std::move(num), b.rank);
}

inline int defect1_support(const Defect1Block& b) {
  return defect1_character(b).pole_order_at_one();
}

struct Remark516 {
  int codim_plus_one = 0;
  int count = 0;
  bool equal = false;
};

// #members versus codim Supp L(tau_1) + 1
inline Remark516 remark516_check(const Defect1Block& b) {
  Remark516 r;
  r.count = static_cast<int>(b.weights.size());
  r.codim_plus_one = b.rank - defect1_support(b) + 1;
  r.equal = r.count == r.codim_plus_one;
  return r;
}

}  // namespace cherednik
