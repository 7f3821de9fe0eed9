#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cherednik/cat_o.hpp"
#include "cherednik/functors.hpp"
#include "cherednik/repdata.hpp"

namespace cherednik {

struct ConstraintConfig {
  bool c1 = true;   // unitriangularity and h-order zeros
  bool c2 = true;   // Hecke columns and injected known entries
  bool c3a = true;  // dim Hom(M(s),M(t)) <= [M(t):L(s)]
  bool c3b = true;  // Hom symmetry across the sign twist
  bool c3c = true;  // multiplicity = Hom dimension when no chain can exist
  bool c4 = true;   // sign-symmetric Verma expansion for flagged rows
  bool c5 = true;   // non-negative graded dimensions
  bool c6 = true;   // support bounds: KZ kill pattern and induction bounds
  bool c7 = true;   // restricted classes of candidate simples are not virtual
  bool c8 = true;   // dim L[n] >= dim L[-n] for n > 0
  long long search_cap = 4;
  long long series_depth = 40;

  static ConstraintConfig only(const std::set<std::string>& names) {
    ConstraintConfig cfg;
    cfg.c1 = names.count("C1");
    cfg.c2 = names.count("C2");
    cfg.c3a = names.count("C3a") || names.count("C3");
    cfg.c3b = names.count("C3b") || names.count("C3");
    cfg.c3c = names.count("C3c") || names.count("C3");
    cfg.c4 = names.count("C4");
    cfg.c5 = names.count("C5");
    cfg.c6 = names.count("C6");
    cfg.c7 = names.count("C7");
    cfg.c8 = names.count("C8");
    return cfg;
  }
};

struct TraceEvent {
  std::string what;   // cell or candidate description
  long long value;    // assigned/eliminated value, -1 for n/a
  std::string rule;   // constraint that fired
  std::string witness;
};

struct SolverHints {
  struct IndHint {
    std::string parent, child, context, source;
    int child_support = 0;
    Expansion child_class;
  };
  struct ResWitness {
    std::map<std::string, long long> cells;  // "row:col" -> value
    Expansion klass;
    std::string context, source;
  };
  struct ResWitnessParam {
    std::string row, col, context, source;
    Expansion base, per_unit;
  };
  struct ElimHint {
    std::map<std::string, long long> cells;
    std::string reason, source;
  };
  struct HomHint {
    std::string from, to, source;
    long long lo = 0, hi = EntryState::kUnbounded;
    bool in_dual = false;
  };
  struct EntryBound {
    std::string row, col, source;
    long long lo = 0, hi = EntryState::kUnbounded;
  };
  std::string dual_block;
  std::vector<IndHint> ind;
  std::vector<ResWitness> res;
  std::vector<ResWitnessParam> res_param;
  std::vector<ElimHint> elim;
  std::vector<HomHint> hom;
  std::vector<EntryBound> bounds;

  // hints of a dual pair act on the joint state, so both files contribute
  void merge_from_dual(const SolverHints& other) {
    ind.insert(ind.end(), other.ind.begin(), other.ind.end());
    res.insert(res.end(), other.res.begin(), other.res.end());
    res_param.insert(res_param.end(), other.res_param.begin(), other.res_param.end());
    elim.insert(elim.end(), other.elim.begin(), other.elim.end());
    bounds.insert(bounds.end(), other.bounds.begin(), other.bounds.end());
    for (HomHint hh : other.hom) {
      hh.in_dual = !hh.in_dual;  // the dual file's frame is flipped
      hom.push_back(std::move(hh));
    }
  }

  static SolverHints parse(const json& j) {
    SolverHints h;
    if (j.is_null()) return h;
    h.dual_block = j.value("dual_block", "");
    if (j.contains("ind_hints"))
      for (const auto& e : j.at("ind_hints")) {
        IndHint x;
        x.parent = e.at("parent");
        x.child = e.at("child");
        x.child_support = e.at("child_support");
        x.context = e.at("context");
        x.source = e.value("source", "");
        for (const auto& [k, v] : e.at("child_class").items())
          x.child_class[k] = v.get<long long>();
        h.ind.push_back(std::move(x));
      }
    if (j.contains("res_witnesses"))
      for (const auto& e : j.at("res_witnesses")) {
        ResWitness x;
        for (const auto& [k, v] : e.at("cells").items()) x.cells[k] = v.get<long long>();
        for (const auto& [k, v] : e.at("klass").items()) x.klass[k] = v.get<long long>();
        x.context = e.at("context");
        x.source = e.value("source", "");
        h.res.push_back(std::move(x));
      }
    if (j.contains("res_witnesses_param"))
      for (const auto& e : j.at("res_witnesses_param")) {
        ResWitnessParam x;
        x.row = e.at("row");
        x.col = e.at("col");
        x.context = e.at("context");
        x.source = e.value("source", "");
        for (const auto& [k, v] : e.at("base").items()) x.base[k] = v.get<long long>();
        for (const auto& [k, v] : e.at("per_unit").items()) x.per_unit[k] = v.get<long long>();
        h.res_param.push_back(std::move(x));
      }
    if (j.contains("elim_hints"))
      for (const auto& e : j.at("elim_hints")) {
        ElimHint x;
        for (const auto& [k, v] : e.at("cells").items()) x.cells[k] = v.get<long long>();
        x.reason = e.value("reason", "");
        x.source = e.value("source", "");
        h.elim.push_back(std::move(x));
      }
    if (j.contains("hom_hints"))
      for (const auto& e : j.at("hom_hints")) {
        HomHint x;
        x.from = e.at("from");
        x.to = e.at("to");
        x.lo = e.value("lo", 0LL);
        x.hi = e.value("hi", EntryState::kUnbounded);
        x.in_dual = e.value("in_dual", false);
        x.source = e.value("source", "");
        h.hom.push_back(std::move(x));
      }
    if (j.contains("entry_bounds"))
      for (const auto& e : j.at("entry_bounds")) {
        EntryBound x;
        x.row = e.at("row");
        x.col = e.at("col");
        x.lo = e.value("lo", 0LL);
        x.hi = e.value("hi", EntryState::kUnbounded);
        x.source = e.value("source", "");
        h.bounds.push_back(std::move(x));
      }
    return h;
  }
};

// Interval table bounding dim Hom(M(sigma), M(tau)) for sigma, tau in a block.
struct HomBoundTable {
  // keyed by (sigma index, tau index) with sigma strictly later than tau
  std::map<std::pair<int, int>, EntryState> bounds;

  EntryState& at(int sigma, int tau) {
    auto it = bounds.find({sigma, tau});
    if (it == bounds.end())
      it = bounds.emplace(std::make_pair(sigma, tau), EntryState{0, EntryState::kUnbounded}).first;
    return it->second;
  }
};

namespace detail {
inline bool intersect(EntryState& e, long long lo, long long hi, bool* changed) {
  long long nl = std::max(e.lo, lo);
  long long nh = e.hi;
  if (hi != EntryState::kUnbounded) nh = e.bounded() ? std::min(e.hi, hi) : hi;
  if (nl != e.lo || nh != e.hi) *changed = true;
  e.lo = nl;
  e.hi = nh;
  return !(e.bounded() && e.lo > e.hi);
}
}  // namespace detail

// Joint solver state over a block and (for non-self-dual blocks) its sign-twist
// partner; Lemma-style Hom symmetry relates the two.
class BlockSolver {
public:
  BlockSolver(const BlockSpec& primary, const Registry& reg,
              const ConstraintConfig& cfg,
              const std::map<std::string, CategoryContext>* contexts = nullptr,
              const BlockSpec* dual = nullptr)
      : reg_(reg), cfg_(cfg), contexts_(contexts) {
    hints_ = SolverHints::parse(primary.hints);
    if (dual) hints_.merge_from_dual(SolverHints::parse(dual->hints));
    specs_.push_back(&primary);
    if (dual) specs_.push_back(dual);
    for (const BlockSpec* s : specs_) {
      mats_.emplace_back(s, &reg);
      homs_.emplace_back();
    }
    // which matrix/index the sign dual of (m, i) lives at
    for (size_t m = 0; m < specs_.size(); ++m) {
      const BlockSpec& b = *specs_[m];
      for (size_t i = 0; i < b.irreps.size(); ++i) {
        const std::string& dualname = reg.irrep(b.group, b.irreps[i]).sign_dual;
        bool found = false;
        for (size_t m2 = 0; m2 < specs_.size() && !found; ++m2)
          for (size_t j = 0; j < specs_[m2]->irreps.size(); ++j)
            if (specs_[m2]->irreps[j] == dualname) {
              dual_of_[{(int)m, (int)i}] = {(int)m2, (int)j};
              found = true;
              break;
            }
        if (!found) dual_of_[{(int)m, (int)i}] = {-1, -1};
      }
    }
  }

  const std::vector<DecompMatrix>& matrices() const { return mats_; }
  const std::vector<TraceEvent>& trace() const { return trace_; }
  const std::vector<std::string>& capped_cells() const { return capped_; }

  std::string cell_name(int m, int i, int j) const {
    return specs_[m]->irreps[i] + ":" + specs_[m]->irreps[j];
  }

  // ---- constraint propagation to a fixed point (C1, C2, C3, then shaving C4/C5)
  void propagate() {
    if (cfg_.c2) apply_known_data();
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t m = 0; m < mats_.size(); ++m) {
        if (cfg_.c3a) changed |= rule_c3a((int)m);
        if (cfg_.c3b) changed |= rule_c3b((int)m);
        if (cfg_.c3c) changed |= rule_c3c((int)m);
      }
    }
    if (cfg_.c4 || cfg_.c5) shave();
  }

  struct Completion {
    std::vector<std::vector<std::vector<long long>>> matrices;  // one per block
  };

  // ---- exhaustive search over the remaining unknowns
  std::vector<Completion> search() {
    std::vector<std::tuple<int, int, int>> cells;  // (mat, i, j)
    for (size_t m = 0; m < mats_.size(); ++m)
      for (auto [i, j] : mats_[m].unknown_cells()) cells.emplace_back((int)m, (int)i, (int)j);
    std::sort(cells.begin(), cells.end(), [&](const auto& a, const auto& b) {
      auto key = [&](const std::tuple<int, int, int>& t) {
        auto [m, i, j] = t;
        return std::make_tuple(specs_[m]->h(specs_[m]->irreps[i]),
                               specs_[m]->h(specs_[m]->irreps[j]), m, i, j);
      };
      return key(a) < key(b);
    });
    std::vector<Completion> out;
    std::vector<long long> assignment(cells.size(), 0);
    survivors_total_ = 0;
    survivor_values_.clear();
    dfs(cells, 0, assignment, out);
    return out;
  }

  struct Verdict {
    enum Kind { Unique, Ambiguous, Infeasible } kind;
    std::optional<Completion> matrix;
    int count = 0;
    std::vector<std::string> diff_cells;
  };

  Verdict certify_unique(const std::vector<Completion>& results) const {
    Verdict v;
    long long total = std::max<long long>(survivors_total_,
                                          static_cast<long long>(results.size()));
    v.count = static_cast<int>(total);
    if (total == 0) {
      v.kind = Verdict::Infeasible;
      return v;
    }
    if (total == 1) {
      v.kind = Verdict::Unique;
      v.matrix = results.front();
      return v;
    }
    v.kind = Verdict::Ambiguous;
    for (const auto& [cell, vals] : survivor_values_)
      if (vals.size() > 1) {
        auto [m, i, j] = cell;
        v.diff_cells.push_back(cell_name(m, i, j));
      }
    return v;
  }

private:
  // ---------------- data seeding (C2)
  void apply_known_data() {
    for (size_t m = 0; m < mats_.size(); ++m) {
      const BlockSpec& b = *specs_[m];
      for (const auto& [col, vals] : b.hecke_columns) {
        int j = b.index_of(col);
        for (size_t i = 0; i < vals.size(); ++i) mats_[m].set_known(i, j, vals[i]);
      }
      for (const auto& [row, col, v] : b.known_entries)
        mats_[m].set_known(b.index_of(row), b.index_of(col), v);
    }
    for (const auto& hh : hints_.hom) {
      int m = hh.in_dual ? 1 : 0;
      if (m >= (int)mats_.size()) throw SchemaError("hom hint needs a dual block");
      bool ch = false;
      if (!detail::intersect(homs_[m].at(specs_[m]->index_of(hh.from),
                                         specs_[m]->index_of(hh.to)),
                             hh.lo, hh.hi, &ch))
        throw EmptyDomainError("hom hint " + hh.from + "->" + hh.to);
    }
    for (const auto& eb : hints_.bounds) {
      for (size_t m = 0; m < specs_.size(); ++m) {
        const BlockSpec& b = *specs_[m];
        bool has = false;
        for (const auto& l : b.irreps) has |= l == eb.row;
        if (!has) continue;
        EntryState& cell = mats_[m].at(b.index_of(eb.row), b.index_of(eb.col));
        bool ch = false;
        if (!detail::intersect(cell, eb.lo, eb.hi, &ch))
          throw EmptyDomainError("entry bound " + eb.row + ":" + eb.col);
        if (ch)
          trace_.push_back({eb.row + ":" + eb.col, -1, "C2",
                            "bounded to [" + std::to_string(cell.lo) + "," +
                                std::to_string(cell.hi) + "]" +
                                (eb.source.empty() ? "" : " [" + eb.source + "]")});
      }
    }
  }

  // ---------------- C3a: dim Hom(M(s),M(t)) <= [M(t):L(s)]
  bool rule_c3a(int m) {
    bool changed = false;
    size_t n = specs_[m]->irreps.size();
    for (size_t t = 0; t < n; ++t)
      for (size_t s = t + 1; s < n; ++s) {
        EntryState& cell = mats_[m].at(t, s);
        EntryState& hom = homs_[m].at((int)s, (int)t);
        if (!detail::intersect(hom, 0, cell.hi, &changed))
          throw EmptyDomainError("C3a hom at " + cell_name(m, (int)s, (int)t));
        if (!detail::intersect(cell, hom.lo, EntryState::kUnbounded, &changed))
          throw EmptyDomainError("C3a cell at " + cell_name(m, (int)t, (int)s));
      }
    return changed;
  }

  // ---------------- C3b: Hom(M(s),M(t)) = Hom(M(t'),M(s'))
  bool rule_c3b(int m) {
    bool changed = false;
    size_t n = specs_[m]->irreps.size();
    for (size_t t = 0; t < n; ++t)
      for (size_t s = t + 1; s < n; ++s) {
        auto [dm, dt] = dual_of_.at({m, (int)t});
        auto [dm2, ds] = dual_of_.at({m, (int)s});
        if (dm < 0 || dm2 < 0 || dm != dm2) continue;
        EntryState& a = homs_[m].at((int)s, (int)t);
        EntryState& b = homs_[dm].at(dt, ds);  // Hom(M(t'), M(s'))
        if (!detail::intersect(a, b.lo, b.hi, &changed) ||
            !detail::intersect(b, a.lo, a.hi, &changed))
          throw EmptyDomainError("C3b at " + cell_name(m, (int)s, (int)t));
      }
    return changed;
  }

  // ---------------- C3c: no possible chain => multiplicity equals Hom
  bool rule_c3c(int m) {
    bool changed = false;
    size_t n = specs_[m]->irreps.size();
    // possible[u][w]: [M(u):L(w)] may still be positive
    std::vector<std::vector<bool>> possible(n, std::vector<bool>(n, false));
    for (size_t u = 0; u < n; ++u)
      for (size_t w = u + 1; w < n; ++w)
        possible[u][w] = mats_[m].at(u, w).hi != 0;
    // reach[u][w]: chain of possible links from u up to w (any length >= 1)
    std::vector<std::vector<bool>> reach = possible;
    for (size_t k = 0; k < n; ++k)
      for (size_t u = 0; u < n; ++u)
        if (reach[u][k])
          for (size_t w = k + 1; w < n; ++w)
            if (reach[k][w]) reach[u][w] = true;
    for (size_t t = 0; t < n; ++t)
      for (size_t s = t + 1; s < n; ++s) {
        bool chain = false;
        for (size_t v = t + 1; v < s && !chain; ++v)
          chain = possible[t][v] && reach[v][s];
        if (chain) continue;
        EntryState& cell = mats_[m].at(t, s);
        EntryState& hom = homs_[m].at((int)s, (int)t);
        bool ok = detail::intersect(cell, hom.lo, hom.hi, &changed) &&
                  detail::intersect(hom, cell.lo, cell.hi, &changed);
        if (!ok) throw EmptyDomainError("C3c at " + cell_name(m, (int)t, (int)s));
      }
    return changed;
  }

  // ---------------- candidate-level checks (C4, C5) used to shave domains
  struct Rejection {
    std::string rule, witness;
  };

  std::optional<Rejection> check_candidate_propagation(
      const std::vector<std::vector<std::vector<long long>>>& cand, bool include_filters) {
    const bool need_rows =
        cfg_.c5 || cfg_.c4 || (include_filters && (cfg_.c8 || cfg_.c6));
    for (size_t m = 0; need_rows && m < mats_.size(); ++m) {
      const BlockSpec& b = *specs_[m];
      size_t n = b.irreps.size();
      DecompMatrix full = mats_[m];
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          if (!full.at(i, j).is_known()) full.at(i, j) = EntryState::known(cand[m][i][j]);
      auto A = full.invert();
      int rank = reg_.group(b.group).rank;
      for (size_t r = 0; r < n; ++r) {
        GradedCharacter chi = full.character_from_row(A[r]);
        if (chi.is_zero()) return Rejection{"C5", "zero character of L(" + b.irreps[r] + ")"};
        if (cfg_.c5) {
          if (auto k = chi.first_negative_coefficient(cfg_.series_depth)) {
            Rational deg = chi.offset() + Rational(*k);
            return Rejection{"C5", "dim L(" + b.irreps[r] + ")[" + deg.to_string() +
                                       "] = " + chi.series_coefficient(*k).to_string()};
          }
        }
        if (cfg_.c4 && b.finite_dim_flags.count(b.irreps[r])) {
          for (size_t j = 0; j < n; ++j) {
            auto [dm, dj] = dual_of_.at({(int)m, (int)j});
            if (dm != (int)m) continue;
            if (A[r][j] != A[r][(size_t)dj])
              return Rejection{"C4", "L(" + b.irreps[r] + ") expansion not sign-symmetric at " +
                                         b.irreps[j]};
          }
        }
        if (include_filters && cfg_.c8) {
          // dim L[n] >= dim L[-n] for n > 0 in absolute degree
          for (long long k = 0; k <= cfg_.series_depth; ++k) {
            Rational deg = chi.offset() + Rational(k);
            if (!(deg < Rational(0))) break;
            Rational mirror = -deg - chi.offset();
            if (!mirror.is_integer()) continue;
            long long k2 = mirror.to_integer();
            if (k2 < 0) continue;
            if (chi.series_coefficient(k2) < chi.series_coefficient(k))
              return Rejection{"C8", "dim L(" + b.irreps[r] + ")[" + (-deg).to_string() +
                                         "] < dim L(" + b.irreps[r] + ")[" + deg.to_string() + "]"};
          }
        }
        if (include_filters && cfg_.c6) {
          int po = chi.pole_order_at_one();
          bool killed = b.support.count(b.irreps[r]) > 0 || b.hecke_columns.count(b.irreps[r]) == 0;
          if (killed && po == rank)
            return Rejection{"C6", "L(" + b.irreps[r] + ") is killed by KZ but has full support"};
          if (!killed && po != rank)
            return Rejection{"C6", "L(" + b.irreps[r] + ") survives KZ but pole order is " +
                                       std::to_string(po)};
        }
      }
    }
    if (include_filters) {
      if (auto r = check_hom_feasible(cand)) return r;
      if (cfg_.c6) {
        if (auto r = check_ind_hints(cand)) return r;
      }
      if (cfg_.c7) {
        if (auto r = check_res_witnesses(cand)) return r;
      }
    }
    return std::nullopt;
  }

  // Lemma-driven feasibility of a full candidate: rerun interval propagation
  // with every cell pinned; a contradiction rejects the candidate.
  std::optional<Rejection> check_hom_feasible(
      const std::vector<std::vector<std::vector<long long>>>& cand) {
    if (!(cfg_.c3a && cfg_.c3b && cfg_.c3c)) return std::nullopt;
    BlockSolver probe = *this;
    probe.cfg_.c4 = probe.cfg_.c5 = false;
    probe.homs_.assign(mats_.size(), HomBoundTable{});
    try {
      for (const auto& hh : probe.hints_.hom) {
        int m = hh.in_dual ? 1 : 0;
        bool ch = false;
        if (!detail::intersect(probe.homs_[m].at(probe.specs_[m]->index_of(hh.from),
                                                 probe.specs_[m]->index_of(hh.to)),
                               hh.lo, hh.hi, &ch))
          throw EmptyDomainError("hom hint " + hh.from + "->" + hh.to);
      }
      for (size_t m = 0; m < mats_.size(); ++m) {
        size_t n = specs_[m]->irreps.size();
        for (size_t i = 0; i < n; ++i)
          for (size_t j = 0; j < n; ++j) probe.mats_[m].set_known(i, j, cand[m][i][j]);
      }
      bool ch = true;
      while (ch) {
        ch = false;
        for (size_t m = 0; m < probe.mats_.size(); ++m) {
          ch |= probe.rule_c3a((int)m);
          ch |= probe.rule_c3b((int)m);
          ch |= probe.rule_c3c((int)m);
        }
      }
    } catch (const ConsistencyError& e) {
      return Rejection{"C3", e.what()};
    } catch (const EmptyDomainError& e) {
      return Rejection{"C3", e.what()};
    }
    return std::nullopt;
  }

  std::optional<Rejection> check_ind_hints(
      const std::vector<std::vector<std::vector<long long>>>& cand) {
    for (const auto& hint : hints_.ind) {
      int m = -1, r = -1;
      for (size_t mm = 0; mm < specs_.size() && m < 0; ++mm)
        for (size_t i = 0; i < specs_[mm]->irreps.size(); ++i)
          if (specs_[mm]->irreps[i] == hint.parent) {
            m = (int)mm;
            r = (int)i;
            break;
          }
      if (m < 0) continue;
      const BlockSpec& b = *specs_[m];
      const BranchingTable& t = reg_.branching(b.group, context_group(hint.context));
      int bound;
      try {
        bound = support_bound_from_induction(hint.parent, hint.child_class,
                                             hint.child_support, t, b);
      } catch (const PreconditionError&) {
        continue;
      }
      DecompMatrix full = mats_[m];
      size_t n = b.irreps.size();
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          if (!full.at(i, j).is_known()) full.at(i, j) = EntryState::known(cand[m][i][j]);
      auto A = full.invert();
      GradedCharacter chi = full.character_from_row(A[(size_t)r]);
      int po = chi.pole_order_at_one();
      if (po > bound)
        return Rejection{"C6", "dim Supp L(" + hint.parent + ") = " + std::to_string(po) +
                                   " exceeds the induction bound " + std::to_string(bound) +
                                   " from Ind L(" + hint.child + ")" +
                                   (hint.source.empty() ? "" : " [" + hint.source + "]")};
    }
    return std::nullopt;
  }

  bool cells_match(const std::map<std::string, long long>& want,
                   const std::vector<std::vector<std::vector<long long>>>& cand) const {
    for (const auto& [key, v] : want) {
      auto colon = key.find(':');
      std::string rl = key.substr(0, colon), cl = key.substr(colon + 1);
      bool matched = false;
      for (size_t m = 0; m < specs_.size(); ++m) {
        const BlockSpec& b = *specs_[m];
        bool has = false;
        for (const auto& l : b.irreps) has |= l == rl;
        if (!has) continue;
        if (cand[m][b.index_of(rl)][b.index_of(cl)] != v) return false;
        matched = true;
      }
      if (!matched) return false;
    }
    return true;
  }

  std::optional<Rejection> check_res_witnesses(
      const std::vector<std::vector<std::vector<long long>>>& cand) {
    if (!contexts_) return std::nullopt;
    for (const auto& w : hints_.res) {
      if (!cells_match(w.cells, cand)) continue;
      auto ctx = contexts_->find(w.context);
      if (ctx == contexts_->end()) continue;
      GrothendieckVector v;
      v.group = ctx->second.group;
      for (const auto& [lab, k] : w.klass) v.add(lab, k);
      if (auto hit = scan_for_witness(v, ctx->second)) {
        std::ostringstream os;
        os << "restricted class of the candidate is virtual: M(" << hit->label
           << ") has coefficient " << hit->coefficient << " in " << hit->block;
        if (!w.source.empty()) os << " [" << w.source << "]";
        return Rejection{"C7", os.str()};
      }
    }
    for (const auto& w : hints_.res_param) {
      auto ctx = contexts_->find(w.context);
      if (ctx == contexts_->end()) continue;
      for (size_t m = 0; m < specs_.size(); ++m) {
        const BlockSpec& b = *specs_[m];
        bool has = false;
        for (const auto& l : b.irreps) has |= l == w.row;
        if (!has) continue;
        long long val = cand[m][b.index_of(w.row)][b.index_of(w.col)];
        GrothendieckVector v;
        v.group = ctx->second.group;
        for (const auto& [lab, k] : w.base) v.add(lab, k);
        for (const auto& [lab, k] : w.per_unit) v.add(lab, -val * k);
        if (auto hit = scan_for_witness(v, ctx->second)) {
          std::ostringstream os;
          os << "restriction of L(" << w.row << ") with [M(" << w.row << "):L(" << w.col
             << ")] = " << val << " is virtual at M(" << hit->label << ")";
          if (!w.source.empty()) os << " [" << w.source << "]";
          return Rejection{"C7", os.str()};
        }
      }
    }
    for (const auto& e : hints_.elim)
      if (cells_match(e.cells, cand))
        return Rejection{"C7", e.reason + (e.source.empty() ? "" : " [" + e.source + "]")};
    return std::nullopt;
  }

  static std::string context_group(const std::string& ctxname) {
    // context file names look like E7_c_1_4
    auto us = ctxname.find('_');
    return us == std::string::npos ? ctxname : ctxname.substr(0, us);
  }

  // ---------------- domain shaving with candidate-level rules (C4, C5)
  void shave() {
    std::vector<std::tuple<int, int, int>> cells;
    long long combos = 1;
    for (size_t m = 0; m < mats_.size(); ++m)
      for (auto [i, j] : mats_[m].unknown_cells()) {
        cells.emplace_back((int)m, (int)i, (int)j);
        const EntryState& e = mats_[m].at(i, j);
        long long hi = e.bounded() ? std::min(e.hi, cfg_.search_cap) : cfg_.search_cap;
        combos *= std::max(hi - e.lo + 1, 1LL);
        if (combos > 200000) return;  // leave narrowing to the search
      }
    if (cells.empty()) return;
    std::vector<std::set<long long>> feasible(cells.size());
    std::map<std::pair<size_t, long long>, Rejection> sample;  // per (cell, value)
    std::vector<long long> assignment(cells.size());
    enumerate(cells, 0, assignment, [&](const std::vector<long long>& asg) {
      auto cand = materialize(cells, asg);
      if (auto rej = check_candidate_propagation(cand, false)) {
        for (size_t k = 0; k < cells.size(); ++k)
          sample.emplace(std::make_pair(k, asg[k]), *rej);
      } else {
        for (size_t k = 0; k < cells.size(); ++k) feasible[k].insert(asg[k]);
      }
    });
    for (size_t k = 0; k < cells.size(); ++k) {
      auto [m, i, j] = cells[k];
      if (feasible[k].empty()) throw EmptyDomainError("no feasible value for " + cell_name(m, i, j));
      EntryState& e = mats_[m].at(i, j);
      long long cap = e.bounded() ? std::min(e.hi, cfg_.search_cap) : cfg_.search_cap;
      for (long long v = e.lo; v <= cap; ++v) {
        if (feasible[k].count(v)) continue;
        auto it = sample.find({k, v});
        trace_.push_back({"[M(" + specs_[m]->irreps[i] + "):L(" + specs_[m]->irreps[j] +
                              ")] = " + std::to_string(v),
                          v, it == sample.end() ? "C4/C5" : it->second.rule,
                          it == sample.end() ? "no completion extends this value"
                                             : it->second.witness});
      }
      long long lo = *feasible[k].begin(), hi = *feasible[k].rbegin();
      bool ch = false;
      if (!detail::intersect(e, lo, hi, &ch))
        throw EmptyDomainError("shave at " + cell_name(m, i, j));
    }
  }

  template <class F>
  void enumerate(const std::vector<std::tuple<int, int, int>>& cells, size_t k,
                 std::vector<long long>& asg, const F& emit) {
    if (k == cells.size()) {
      emit(asg);
      return;
    }
    auto [m, i, j] = cells[k];
    const EntryState& e = mats_[m].at(i, j);
    long long hi = e.bounded() ? std::min(e.hi, cfg_.search_cap) : cfg_.search_cap;
    if (!e.bounded() || e.hi > cfg_.search_cap) {
      std::string nm = cell_name(m, i, j);
      if (std::find(capped_.begin(), capped_.end(), nm) == capped_.end()) capped_.push_back(nm);
    }
    for (long long v = e.lo; v <= hi; ++v) {
      asg[k] = v;
      enumerate(cells, k + 1, asg, emit);
    }
  }

  std::vector<std::vector<std::vector<long long>>> materialize(
      const std::vector<std::tuple<int, int, int>>& cells,
      const std::vector<long long>& asg) const {
    std::vector<std::vector<std::vector<long long>>> cand;
    for (size_t m = 0; m < mats_.size(); ++m) {
      size_t n = specs_[m]->irreps.size();
      cand.emplace_back(n, std::vector<long long>(n, 0));
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          if (mats_[m].at(i, j).is_known()) cand[m][i][j] = mats_[m].at(i, j).lo;
    }
    for (size_t k = 0; k < cells.size(); ++k) {
      auto [m, i, j] = cells[k];
      cand[m][i][j] = asg[k];
    }
    return cand;
  }

  void dfs(const std::vector<std::tuple<int, int, int>>& cells, size_t k,
           std::vector<long long>& asg, std::vector<Completion>& out) {
    if (k == cells.size()) {
      auto cand = materialize(cells, asg);
      std::string desc;
      for (size_t x = 0; x < cells.size(); ++x) {
        auto [m, i, j] = cells[x];
        if (!desc.empty()) desc += ", ";
        desc += "[M(" + specs_[m]->irreps[i] + "):L(" + specs_[m]->irreps[j] +
                ")] = " + std::to_string(asg[x]);
      }
      if (auto rej = check_candidate_propagation(cand, true)) {
        if (trace_.size() < kTraceCap)
          trace_.push_back({desc.empty() ? "(no unknowns)" : desc, -1, rej->rule, rej->witness});
        else if (trace_.size() == kTraceCap)
          trace_.push_back({"(further events suppressed)", -1, "note", ""});
        return;
      }
      ++survivors_total_;
      for (size_t x = 0; x < cells.size(); ++x) survivor_values_[cells[x]].insert(asg[x]);
      if (survivors_total_ <= 64) {
        if (trace_.size() < kTraceCap)
          trace_.push_back(
              {desc.empty() ? "(no unknowns)" : desc, -1, "accepted", "all constraints hold"});
        Completion c;
        c.matrices = cand;
        out.push_back(std::move(c));
      }
      return;
    }
    auto [m, i, j] = cells[k];
    const EntryState& e = mats_[m].at(i, j);
    long long hi = e.bounded() ? std::min(e.hi, cfg_.search_cap) : cfg_.search_cap;
    if (!e.bounded() || e.hi > cfg_.search_cap) {
      std::string nm = cell_name(m, i, j);
      if (std::find(capped_.begin(), capped_.end(), nm) == capped_.end()) capped_.push_back(nm);
    }
    for (long long v = e.lo; v <= hi; ++v) {
      asg[k] = v;
      dfs(cells, k + 1, asg, out);
    }
  }

  static constexpr size_t kTraceCap = 4000;

  const Registry& reg_;
  ConstraintConfig cfg_;
  const std::map<std::string, CategoryContext>* contexts_;
  SolverHints hints_;
  std::vector<const BlockSpec*> specs_;
  std::vector<DecompMatrix> mats_;
  std::vector<HomBoundTable> homs_;
  std::map<std::pair<int, int>, std::pair<int, int>> dual_of_;
  std::vector<TraceEvent> trace_;
  std::vector<std::string> capped_;
  long long survivors_total_ = 0;
  std::map<std::tuple<int, int, int>, std::set<long long>> survivor_values_;
};

}  // namespace cherednik
