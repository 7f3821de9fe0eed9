#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "cherednik/errors.hpp"
#include "cherednik/rational.hpp"

namespace cherednik {

using json = nlohmann::json;

struct GroupDescriptor {
  std::string name;
  int rank = 0;
  std::vector<std::pair<std::string, int>> reflection_classes;

  int reflection_count() const {
    int n = 0;
    for (const auto& [lab, sz] : reflection_classes) n += sz;
    return n;
  }
};

struct IrrepInfo {
  std::string label;
  long long dim = 0;
  std::string sign_dual;
  std::map<std::string, long long> reflection_sums;  // class label -> sum, may be empty
};

struct BranchingTable {
  std::string parent, child;
  std::map<std::string, std::map<std::string, int>> rows;  // label -> child label -> mult
  std::set<std::string> partial;  // rows exempt from the dimension identity
};

// An EntryState is Known(v) when lo == hi; hi == kUnbounded means no upper bound.
struct EntryState {
  static constexpr long long kUnbounded = -1;
  long long lo = 0;
  long long hi = kUnbounded;

  static EntryState known(long long v) { return {v, v}; }
  bool is_known() const { return hi == lo; }
  bool bounded() const { return hi != kUnbounded; }
  bool admits(long long v) const { return v >= lo && (!bounded() || v <= hi); }
};

struct SolverHints;  // defined in solver.hpp

struct BlockSpec {
  std::string group;
  Rational c;
  std::vector<std::string> irreps;                   // h_c order
  std::map<std::string, Rational> h_weights;
  bool h_shifted = false;                            // weights given relative to the first
  std::map<std::string, std::string> support;        // annotated rows: "finite" or "0".."rank"
  std::map<std::string, std::vector<long long>> hecke_columns;
  std::vector<std::tuple<std::string, std::string, long long>> known_entries;
  std::optional<std::vector<std::vector<long long>>> expected_matrix;
  std::optional<std::vector<std::vector<long long>>> expected_inverse;
  std::set<std::string> finite_dim_flags;
  bool defect1 = false;
  bool solve_target = false;  // completion fully determined by bundled constraints
  json hints;          // raw solver_hints payload, interpreted by the solver
  std::string source;  // provenance
  std::string path;

  int index_of(const std::string& label) const {
    for (size_t i = 0; i < irreps.size(); ++i)
      if (irreps[i] == label) return static_cast<int>(i);
    throw UnknownLabelError(label + " in block " + path);
  }
  const Rational& h(const std::string& label) const {
    auto it = h_weights.find(label);
    if (it == h_weights.end()) throw UnknownLabelError(label + " (h weight)");
    return it->second;
  }
};

inline long long label_dim_prefix(const std::string& label) {
  size_t i = 0;
  while (i < label.size() && isdigit(static_cast<unsigned char>(label[i]))) ++i;
  if (i == 0) throw SchemaError("label '" + label + "' has no dimension prefix");
  return std::stoll(label.substr(0, i));
}

// h_c(tau) = rank/2 - c * sum_{s in S} chi_tau(s) / dim tau
inline Rational compute_h_weight(const GroupDescriptor& g, const IrrepInfo& irrep,
                                 const Rational& c) {
  for (const auto& [cls, sz] : g.reflection_classes)
    if (!irrep.reflection_sums.count(cls))
      throw MissingDataError("reflection sums for " + irrep.label + " class " + cls);
  BigInt total(0);
  for (const auto& [cls, v] : irrep.reflection_sums) total += BigInt(v);
  return Rational(g.rank, 2) - c * Rational(total, BigInt(irrep.dim));
}

namespace detail {
inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return j;
}
}  // namespace detail

inline GroupDescriptor load_group(const std::string& path) {
  json j = detail::load_json(path);
  GroupDescriptor g;
  try {
    g.name = j.at("name").get<std::string>();
    g.rank = j.at("rank").get<int>();
    for (const auto& rc : j.at("reflection_classes"))
      g.reflection_classes.emplace_back(rc.at("label").get<std::string>(),
                                        rc.at("size").get<int>());
  } catch (const json::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
  if (g.rank < 1) throw SchemaError(path + ": rank must be >= 1");
  static const std::map<std::string, int> expected = {{"E8", 120}, {"E7", 63}, {"F4", 24}};
  auto it = expected.find(g.name);
  if (it != expected.end() && g.reflection_count() != it->second)
    throw ConsistencyError(g.name + ": reflection count " +
                           std::to_string(g.reflection_count()));
  for (const auto& [lab, sz] : g.reflection_classes)
    if (sz <= 0) throw SchemaError(path + ": class size must be positive");
  return g;
}

class Registry {
public:
  explicit Registry(std::string data_dir) : dir_(std::move(data_dir)) {}

  // resolution order: explicit --data-dir, CHEREDNIK_DATA_DIR, compiled default
  static std::string default_data_dir() {
    if (const char* env = std::getenv("CHEREDNIK_DATA_DIR")) return env;
#ifdef CHEREDNIK_DEFAULT_DATA_DIR
    return CHEREDNIK_DEFAULT_DATA_DIR;
#else
    return "data";
#endif
  }

  const std::string& dir() const { return dir_; }

  const GroupDescriptor& group(const std::string& name) const {
    auto it = groups_.find(name);
    if (it == groups_.end()) {
      GroupDescriptor g = load_group(dir_ + "/groups/" + name + ".json");
      it = groups_.emplace(name, std::move(g)).first;
      load_irreps(name);
    }
    return it->second;
  }

  const IrrepInfo& irrep(const std::string& group_name, const std::string& label) const {
    group(group_name);
    const auto& table = irreps_.at(group_name);
    auto it = table.find(label);
    if (it == table.end()) throw UnknownLabelError(label + " in " + group_name);
    return it->second;
  }

  bool has_irrep(const std::string& group_name, const std::string& label) const {
    group(group_name);
    return irreps_.at(group_name).count(label) > 0;
  }

  const BranchingTable& branching(const std::string& parent, const std::string& child) const {
    auto key = parent + ":" + child;
    auto it = branchings_.find(key);
    if (it == branchings_.end()) {
      BranchingTable t = load_branching(dir_ + "/branching/" + parent + "_" + child + ".json");
      it = branchings_.emplace(key, std::move(t)).first;
    }
    return it->second;
  }

  BranchingTable load_branching(const std::string& path) const {
    json j = detail::load_json(path);
    BranchingTable t;
    try {
      t.parent = j.at("parent").get<std::string>();
      t.child = j.at("child").get<std::string>();
      for (const auto& [lab, arr] : j.at("rows").items())
        for (const auto& ch : arr) t.rows[lab][ch.get<std::string>()]++;
      if (j.contains("partial_rows"))
        for (const auto& [lab, arr] : j.at("partial_rows").items()) {
          t.partial.insert(lab);
          for (const auto& ch : arr) t.rows[lab][ch.get<std::string>()]++;
        }
    } catch (const json::exception& e) {
      throw SchemaError(path + ": " + e.what());
    }
    for (const auto& [lab, row] : t.rows) {
      if (t.partial.count(lab)) continue;
      long long total = 0;
      for (const auto& [ch, m] : row) total += m * irrep(t.child, ch).dim;
      if (total != irrep(t.parent, lab).dim)
        throw ConsistencyError("branching row " + lab + ": dims sum to " +
                               std::to_string(total));
    }
    return t;
  }

  BlockSpec load_block(const std::string& path) const {
    json j = detail::load_json(path);
    BlockSpec b;
    b.path = path;
    try {
      b.group = j.at("group").get<std::string>();
      b.c = Rational::parse(j.at("c").get<std::string>());
      for (const auto& l : j.at("irreps")) b.irreps.push_back(l.get<std::string>());
      for (const auto& [lab, v] : j.at("h_weights").items())
        b.h_weights.emplace(lab, Rational::parse(v.get<std::string>()));
      b.h_shifted = j.value("h_shifted", false);
      b.defect1 = j.value("block_type", "") == "defect1";
      b.solve_target = j.value("solve_target", false);
      if (j.contains("support"))
        for (const auto& [lab, v] : j.at("support").items())
          b.support[lab] = v.is_string() ? v.get<std::string>()
                                         : std::to_string(v.get<int>());
      if (j.contains("hecke_columns"))
        for (const auto& [lab, col] : j.at("hecke_columns").items())
          b.hecke_columns[lab] = col.get<std::vector<long long>>();
      if (j.contains("known_entries"))
        for (const auto& e : j.at("known_entries"))
          b.known_entries.emplace_back(e.at(0).get<std::string>(),
                                       e.at(1).get<std::string>(), e.at(2).get<long long>());
      if (j.contains("expected_matrix"))
        b.expected_matrix = j.at("expected_matrix").get<std::vector<std::vector<long long>>>();
      if (j.contains("expected_inverse"))
        b.expected_inverse = j.at("expected_inverse").get<std::vector<std::vector<long long>>>();
      if (j.contains("finite_dim_flags"))
        for (const auto& l : j.at("finite_dim_flags")) b.finite_dim_flags.insert(l.get<std::string>());
      if (j.contains("solver_hints")) b.hints = j.at("solver_hints");
      if (j.contains("provenance")) b.source = j.at("provenance").value("source", "");
    } catch (const json::exception& e) {
      throw SchemaError(path + ": " + e.what());
    }
    validate_block(b);
    return b;
  }

  // all bundled block files, sorted by path for deterministic reports
  std::vector<std::string> all_block_paths() const {
    std::vector<std::string> out;
    for (const auto& grp : {"E8", "F4"}) {
      std::filesystem::path root = std::filesystem::path(dir_) / grp;
      if (!std::filesystem::exists(root)) continue;
      for (const auto& e : std::filesystem::recursive_directory_iterator(root))
        if (e.path().extension() == ".json") out.push_back(e.path().string());
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  long long dim_of(const std::string& group_name, const std::string& label) const {
    return irrep(group_name, label).dim;
  }

private:
  void load_irreps(const std::string& name) const {
    std::string path = dir_ + "/irreps/" + name + ".json";
    json j = detail::load_json(path);
    auto& table = irreps_[name];
    try {
      for (const auto& r : j.at("irreps")) {
        IrrepInfo info;
        info.label = r.at("label").get<std::string>();
        info.dim = r.contains("dim") ? r.at("dim").get<long long>()
                                     : label_dim_prefix(info.label);
        info.sign_dual = r.at("sign_dual").get<std::string>();
        if (r.contains("reflection_sums"))
          for (const auto& [cls, v] : r.at("reflection_sums").items())
            info.reflection_sums[cls] = v.get<long long>();
        table.emplace(info.label, info);
      }
    } catch (const json::exception& e) {
      throw SchemaError(path + ": " + e.what());
    }
    for (const auto& [lab, info] : table) {
      auto du = table.find(info.sign_dual);
      if (du == table.end())
        throw ConsistencyError(name + ": sign dual of " + lab + " missing");
      if (du->second.sign_dual != lab || du->second.dim != info.dim)
        throw ConsistencyError(name + ": sign duality broken at " + lab);
      if (name[0] == 'E' && info.dim != label_dim_prefix(lab))
        throw ConsistencyError(name + ": dim of " + lab + " differs from its prefix");
    }
  }

  void validate_block(const BlockSpec& b) const {
    const GroupDescriptor& g = group(b.group);
    if (b.irreps.empty()) throw SchemaError(b.path + ": empty block");
    std::set<std::string> seen;
    for (const auto& lab : b.irreps) {
      if (!has_irrep(b.group, lab)) throw UnknownLabelError(lab + " in " + b.path);
      if (!b.h_weights.count(lab)) throw SchemaError(b.path + ": no h weight for " + lab);
      if (!seen.insert(lab).second) throw SchemaError(b.path + ": duplicate " + lab);
    }
    const Rational& h0 = b.h(b.irreps.front());
    Rational prev = h0;
    for (const auto& lab : b.irreps) {
      const Rational& h = b.h(lab);
      if (h < prev) throw ConsistencyError(b.path + ": h weights out of order at " + lab);
      if (!(h - h0).is_integer())
        throw ConsistencyError(b.path + ": non-integer h gap at " + lab);
      prev = h;
    }
    // chart weights must agree with the reflection-sum formula when both exist;
    // shifted lists are checked through pairwise gaps only
    std::optional<Rational> ref0;
    for (const auto& lab : b.irreps) {
      const IrrepInfo& info = irrep(b.group, lab);
      if (info.reflection_sums.size() != g.reflection_classes.size()) continue;
      Rational formula = compute_h_weight(g, info, b.c);
      if (!b.h_shifted) {
        if (formula != b.h(lab))
          throw ConsistencyError(b.path + ": h(" + lab + ") disagrees with reflection data");
      } else {
        Rational shift = formula - b.h(lab);
        if (!ref0) ref0 = shift;
        else if (*ref0 != shift)
          throw ConsistencyError(b.path + ": shifted h(" + lab +
                                 ") disagrees with reflection data");
      }
    }
    if (b.expected_matrix) {
      const auto& D = *b.expected_matrix;
      size_t n = b.irreps.size();
      if (D.size() != n) throw ConsistencyError(b.path + ": matrix size");
      for (size_t i = 0; i < n; ++i) {
        if (D[i].size() != n) throw ConsistencyError(b.path + ": matrix row size");
        if (D[i][i] != 1) throw ConsistencyError(b.path + ": diagonal not 1");
        for (size_t jx = 0; jx < i; ++jx)
          if (D[i][jx] != 0) throw ConsistencyError(b.path + ": lower entry nonzero");
        for (size_t jx = i + 1; jx < n; ++jx)
          if (D[i][jx] != 0 && !(b.h(b.irreps[jx]) > b.h(b.irreps[i])))
            throw ConsistencyError(b.path + ": entry above equal-weight column");
      }
    }
    for (const auto& [lab, col] : b.hecke_columns) {
      if (col.size() != b.irreps.size())
        throw ConsistencyError(b.path + ": hecke column length for " + lab);
      if (b.support.count(lab))
        throw ConsistencyError(b.path + ": " + lab + " both annotated and a Hecke column");
    }
  }

  std::string dir_;
  mutable std::map<std::string, GroupDescriptor> groups_;
  mutable std::map<std::string, std::map<std::string, IrrepInfo>> irreps_;
  mutable std::map<std::string, BranchingTable> branchings_;
};

// the stored multiset for one branching row
inline std::map<std::string, int> restrict_irrep(const BranchingTable& t,
                                                 const std::string& label) {
  auto it = t.rows.find(label);
  if (it == t.rows.end()) throw UnknownLabelError(label + " in branching table");
  return it->second;
}

}  // namespace cherednik
