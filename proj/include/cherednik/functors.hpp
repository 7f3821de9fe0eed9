#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cherednik/cat_o.hpp"
#include "cherednik/repdata.hpp"

namespace cherednik {

using Expansion = std::map<std::string, long long>;  // Verma-basis coefficients

// One block of a category context: ordered labels with h-weights and the
// simple-module expansions that are available for it. A block backed by a
// fully known decomposition matrix has every expansion; a block transcribed
// from printed expansions may cover only some simples.
struct ContextBlock {
  std::string name;
  std::vector<std::string> order;          // h_c order
  std::map<std::string, Rational> h;
  std::map<std::string, Expansion> expansions;

  bool contains(const std::string& label) const { return h.count(label) > 0; }
};

struct CategoryContext {
  std::string group;
  Rational c;
  std::vector<ContextBlock> blocks;
  std::map<std::string, int> support_dims;  // per simple, where known

  const ContextBlock* block_of(const std::string& label) const {
    for (const auto& b : blocks)
      if (b.contains(label)) return &b;
    return nullptr;
  }

  static CategoryContext from_file(const std::string& path) {
    json j = detail::load_json(path);
    CategoryContext ctx;
    try {
      ctx.group = j.at("group").get<std::string>();
      ctx.c = Rational::parse(j.at("c").get<std::string>());
      for (const auto& jb : j.at("blocks")) {
        ContextBlock b;
        b.name = jb.at("name").get<std::string>();
        for (const auto& l : jb.at("irreps")) b.order.push_back(l.get<std::string>());
        for (const auto& [lab, v] : jb.at("h_weights").items())
          b.h.emplace(lab, Rational::parse(v.get<std::string>()));
        if (jb.contains("simples"))
          for (const auto& [lab, ex] : jb.at("simples").items()) {
            Expansion e;
            for (const auto& [t, cf] : ex.items()) e[t] = cf.get<long long>();
            b.expansions.emplace(lab, std::move(e));
          }
        ctx.blocks.push_back(std::move(b));
      }
      if (j.contains("support_dims"))
        for (const auto& [lab, v] : j.at("support_dims").items())
          ctx.support_dims[lab] = v.get<int>();
    } catch (const json::exception& e) {
      throw SchemaError(path + ": " + e.what());
    }
    return ctx;
  }

  // context whose blocks are fixture blocks with fully known matrices
  static CategoryContext from_blocks(const std::vector<const DecompMatrix*>& mats) {
    CategoryContext ctx;
    for (const DecompMatrix* d : mats) {
      const BlockSpec& bs = d->block();
      ctx.group = bs.group;
      ctx.c = bs.c;
      ContextBlock b;
      b.name = bs.path;
      b.order = bs.irreps;
      for (const auto& lab : bs.irreps) b.h.emplace(lab, bs.h(lab));
      auto A = d->invert();
      for (size_t i = 0; i < bs.irreps.size(); ++i) {
        Expansion e;
        for (size_t jx = 0; jx < bs.irreps.size(); ++jx)
          if (!A[i][jx].is_zero()) e[bs.irreps[jx]] = A[i][jx].to_long_long();
        b.expansions.emplace(bs.irreps[i], std::move(e));
      }
      ctx.blocks.push_back(std::move(b));
    }
    return ctx;
  }
};

// ---------------------------------------------------------------- Res / Ind

// [Res M(tau)] = sum of [M(sigma)] over the branching row, extended linearly
inline GrothendieckVector res_vector(const GrothendieckVector& v, const BranchingTable& t) {
  GrothendieckVector out;
  out.basis = GrothendieckVector::Basis::Verma;
  out.group = t.child;
  out.c = v.c;
  for (const auto& [lab, coeff] : v.coords) {
    auto it = t.rows.find(lab);
    if (it == t.rows.end()) throw UnknownLabelError(lab + " has no branching row");
    for (const auto& [ch, mult] : it->second) out.add(ch, coeff * mult);
  }
  return out;
}

// transpose of branching: [Ind M(sigma)] = sum_tau mult(sigma in Res tau) [M(tau)]
inline GrothendieckVector ind_vector(const GrothendieckVector& v, const BranchingTable& t) {
  GrothendieckVector out;
  out.basis = GrothendieckVector::Basis::Verma;
  out.group = t.parent;
  out.c = v.c;
  for (const auto& [tau, row] : t.rows)
    for (const auto& [sigma, mult] : row) {
      auto it = v.coords.find(sigma);
      if (it != v.coords.end()) out.add(tau, it->second * mult);
    }
  return out;
}

inline GrothendieckVector project_block(const GrothendieckVector& v, const BlockSpec& b) {
  GrothendieckVector out = v;
  out.coords.clear();
  for (const auto& lab : b.irreps) {
    auto it = v.coords.find(lab);
    if (it != v.coords.end()) out.add(lab, it->second);
  }
  return out;
}

inline GrothendieckVector project_block(const GrothendieckVector& v, const ContextBlock& b) {
  GrothendieckVector out = v;
  out.coords.clear();
  for (const auto& [lab, coeff] : v.coords)
    if (b.contains(lab)) out.add(lab, coeff);
  return out;
}

// ---------------------------------------------------------------- peeling

// Certificate that a Verma-basis class is not the class of a module: some
// simple occurs with negative multiplicity. `remaining` is the partial peel
// at the moment the negative minimal term was found.
struct VirtualWitness {
  std::string block;
  std::string label;
  long long coefficient = 0;
  Expansion remaining;
};

using PeelResult = std::variant<Expansion, VirtualWitness>;

namespace detail {

inline std::optional<std::string> minimal_label(const Expansion& v, const ContextBlock& b) {
  const std::string* best = nullptr;
  for (const auto& [lab, coeff] : v) {
    if (coeff == 0) continue;
    if (!best || b.h.at(lab) < b.h.at(*best)) best = &lab;
  }
  return best ? std::optional<std::string>(*best) : std::nullopt;
}

// greedy peel within one block; raises CoverageError when a simple without a
// bundled expansion has to be subtracted
inline PeelResult peel_block_greedy(Expansion v, const ContextBlock& b) {
  Expansion simples;
  while (true) {
    auto mn = minimal_label(v, b);
    if (!mn) return simples;
    long long coeff = v.at(*mn);
    if (coeff < 0) return VirtualWitness{b.name, *mn, coeff, v};
    auto ex = b.expansions.find(*mn);
    if (ex == b.expansions.end())
      throw CoverageError("no expansion for " + *mn + " in " + b.name);
    simples[*mn] += coeff;
    for (const auto& [lab, k] : ex->second) {
      auto it = v.find(lab);
      if (it == v.end()) v.emplace(lab, -coeff * k);
      else it->second -= coeff * k;
      if (v.count(lab) && v.at(lab) == 0) v.erase(lab);
    }
    for (auto it = v.begin(); it != v.end();)
      it = it->second == 0 ? v.erase(it) : std::next(it);
  }
}

}  // namespace detail

// Change a Verma-basis class to the simple basis over the context. If every
// coefficient is >= 0 the multiset of simples is returned, otherwise a witness
// naming a negative-coefficient simple. Labels outside every context block
// raise CoverageError. `greedy` selects the peeling route; both agree.
inline PeelResult peel_to_simples(const GrothendieckVector& v, const CategoryContext& ctx,
                                  bool greedy = true) {
  for (const auto& [lab, coeff] : v.coords)
    if (!ctx.block_of(lab)) throw CoverageError(lab);
  Expansion total;
  for (const auto& b : ctx.blocks) {
    Expansion part;
    for (const auto& [lab, coeff] : v.coords)
      if (b.contains(lab)) part[lab] = coeff;
    if (part.empty()) continue;
    if (greedy) {
      PeelResult r = detail::peel_block_greedy(part, b);
      if (std::holds_alternative<VirtualWitness>(r)) return r;
      for (const auto& [lab, k] : std::get<Expansion>(r)) total[lab] += k;
    } else {
      // basis change n_sigma = sum_tau c_tau * D[tau][sigma]; D is recovered by
      // inverting the expansion matrix (rows of the inverse are the expansions)
      std::vector<std::string> labs = b.order;
      size_t n = labs.size();
      std::map<std::string, size_t> pos;
      for (size_t i = 0; i < n; ++i) pos[labs[i]] = i;
      std::vector<std::vector<long long>> A(n, std::vector<long long>(n, 0));
      for (size_t i = 0; i < n; ++i) {
        auto ex = b.expansions.find(labs[i]);
        if (ex == b.expansions.end())
          throw CoverageError("no expansion for " + labs[i] + " in " + b.name);
        for (const auto& [lab, k] : ex->second) A[i][pos.at(lab)] = k;
      }
      // n = c * A^{-1}; since A is D^{-1}, n = c * D where D = A^{-1}
      std::vector<std::vector<long long>> D(n, std::vector<long long>(n, 0));
      for (size_t i = n; i-- > 0;) {
        D[i][i] = 1;
        for (size_t jx = i + 1; jx < n; ++jx) {
          long long s = 0;
          for (size_t k = i + 1; k <= jx; ++k) s += A[i][k] * D[k][jx];
          D[i][jx] = -s;
        }
      }
      std::vector<long long> cvec(n, 0);
      for (const auto& [lab, coeff] : part) cvec[pos.at(lab)] = coeff;
      const std::string* bad = nullptr;
      Expansion got;
      for (size_t jx = 0; jx < n; ++jx) {
        long long s = 0;
        for (size_t i = 0; i <= jx; ++i) s += cvec[i] * D[i][jx];
        if (s != 0) got[labs[jx]] = s;
        if (s < 0 && !bad) bad = &labs[jx];
      }
      if (bad) {
        // report the h-minimal negative coefficient, matching the greedy route
        std::string minlab;
        for (const auto& [lab, k] : got)
          if (k < 0 && (minlab.empty() || b.h.at(lab) < b.h.at(minlab))) minlab = lab;
        return VirtualWitness{b.name, minlab, got.at(minlab), got};
      }
      for (const auto& [lab, k] : got) total[lab] += k;
    }
  }
  return total;
}

// Tolerant witness scan used by the solver: blocks whose expansions run out
// are inconclusive rather than errors; only a definite negative minimal term
// is reported.
inline std::optional<VirtualWitness> scan_for_witness(const GrothendieckVector& v,
                                                      const CategoryContext& ctx) {
  for (const auto& b : ctx.blocks) {
    Expansion part;
    for (const auto& [lab, coeff] : v.coords)
      if (b.contains(lab)) part[lab] = coeff;
    if (part.empty()) continue;
    try {
      PeelResult r = detail::peel_block_greedy(part, b);
      if (std::holds_alternative<VirtualWitness>(r))
        return std::get<VirtualWitness>(r);
    } catch (const CoverageError&) {
      // out of bundled expansions in this block: inconclusive
    }
  }
  return std::nullopt;
}

// ------------------------------------------- support bound through induction

// If L(parent) is a constituent of Ind L(child) and dim Supp L(child) = d,
// induction from a maximal parabolic gives dim Supp L(parent) <= d + 1.
// The constituent test: the coefficient of M(parent) in Ind(child_class) is
// positive and parent has the minimal h_c weight of its block, so no later
// simple can contribute that Verma.
inline int support_bound_from_induction(const std::string& parent_label,
                                        const Expansion& child_class, int child_support,
                                        const BranchingTable& t, const BlockSpec& parent_block) {
  auto row = t.rows.find(parent_label);
  if (row == t.rows.end())
    throw PreconditionError("no branching row for " + parent_label);
  long long net = 0;
  for (const auto& [sigma, coeff] : child_class) {
    auto it = row->second.find(sigma);
    if (it != row->second.end()) net += coeff * it->second;
  }
  if (net <= 0)
    throw PreconditionError("M(" + parent_label + ") does not survive in the induction");
  const Rational& hp = parent_block.h(parent_label);
  for (const auto& lab : parent_block.irreps)
    if (parent_block.h(lab) < hp)
      throw PreconditionError(parent_label + " is not leftmost in its block");
  return child_support + 1;
}

}  // namespace cherednik
