#pragma once

#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cherednik/defect1.hpp"
#include "cherednik/solver.hpp"

namespace cherednik {

// Exit codes: 0 success, 1 verification mismatch, 2 data error, 3 ambiguous.
enum ExitCode { kOk = 0, kMismatch = 1, kDataError = 2, kAmbiguous = 3 };

struct RunReport {
  std::string command;
  std::vector<std::string> lines;
  json machine = json::array();
  int exit_code = kOk;

  void note(const std::string& s) { lines.push_back(s); }
  void fail(int code, const std::string& s) {
    lines.push_back(s);
    if (exit_code == kOk || code == kDataError) exit_code = code;
  }
  std::string text() const {
    std::ostringstream os;
    os << "== " << command << " ==\n";
    for (const auto& l : lines) os << l << "\n";
    return os.str();
  }
};

inline std::string format_matrix(const std::vector<std::string>& labels,
                                 const std::vector<std::vector<long long>>& m) {
  size_t w = 0;
  for (const auto& l : labels) w = std::max(w, l.size());
  std::ostringstream os;
  for (size_t i = 0; i < m.size(); ++i) {
    os << std::string(w - labels[i].size(), ' ') << labels[i] << "  ";
    for (size_t j = 0; j < m[i].size(); ++j) {
      if (j) os << ' ';
      if (m[i][j] == 0) os << '.';
      else os << m[i][j];
    }
    os << "\n";
  }
  return os.str();
}

inline Defect1Block defect1_from_block(const BlockSpec& b, const Registry& reg) {
  Defect1Block d;
  d.rank = reg.group(b.group).rank;
  const Rational& h0 = b.h(b.irreps.front());
  for (const auto& lab : b.irreps) {
    d.weights.push_back(b.h(lab) - h0);
    d.dims.push_back(reg.dim_of(b.group, lab));
  }
  return d;
}

// verify one block fixture: inversion, characters, supports, annotations
inline void verify_block(const BlockSpec& b, const Registry& reg, RunReport& rep,
                         long long series_depth = 40) {
  if (!b.expected_matrix) {
    rep.note(b.path + ": no expected matrix, skipped");
    return;
  }
  DecompMatrix d = DecompMatrix::from_expected(b, reg);
  json jb;
  jb["block"] = b.path;
  if (b.defect1) {
    Defect1Block db = defect1_from_block(b, reg);
    auto gen = defect1_matrix(db);
    if (gen != *b.expected_matrix) {
      rep.fail(kMismatch, b.path + ": defect-1 matrix is not bidiagonal");
      return;
    }
    int supp = defect1_support(db);
    auto r516 = remark516_check(db);
    // only the first simple can have small support in a defect-1 block
    for (size_t i = 1; i < b.irreps.size(); ++i) {
      int po = d.character_of_simple(b.irreps[i]).pole_order_at_one();
      if (po != db.rank)
        rep.fail(kMismatch, b.path + ": L(" + b.irreps[i] + ") has support " +
                                std::to_string(po) + ", expected full");
    }
    std::string lead = b.irreps.front();
    auto it = b.support.find(lead);
    int expect = it == b.support.end() ? -1
               : it->second == "finite" ? 0 : std::stoi(it->second);
    if (supp != expect) {
      rep.fail(kMismatch, b.path + ": dim Supp L(" + lead + ") = " + std::to_string(supp) +
                              ", annotated " + std::to_string(expect));
    } else {
      rep.note(b.path + ": dim Supp L(" + lead + ") = " + std::to_string(supp) +
               ", members " + std::to_string(r516.count) + " = codim+1 " +
               std::to_string(r516.codim_plus_one) + (r516.equal ? "" : "  (count differs)"));
      if (!r516.equal) rep.fail(kMismatch, b.path + ": count inequality is strict");
    }
    jb["support"] = supp;
    rep.machine.push_back(jb);
    return;
  }
  if (b.expected_inverse) {
    auto A = d.invert();
    const auto& E = *b.expected_inverse;
    for (size_t i = 0; i < A.size(); ++i)
      for (size_t j = 0; j < A.size(); ++j)
        if (A[i][j] != BigInt(E[i][j])) {
          rep.fail(kMismatch, b.path + ": inverse differs at (" + b.irreps[i] + "," +
                                  b.irreps[j] + ")");
          return;
        }
  }
  auto mism = d.check_annotations();
  for (const auto& mm : mism)
    rep.fail(kMismatch, b.path + ": annotation " + mm.annotated + " at " + mm.label +
                            " but computed support " + std::to_string(mm.computed));
  json dims = json::object();
  for (const auto& lab : b.irreps) {
    GradedCharacter chi = d.character_of_simple(lab);
    for (const auto& [deg, c] : chi.graded_dims(series_depth))
      if (c.is_negative())
        rep.fail(kMismatch, b.path + ": negative graded dimension of L(" + lab + ")");
    auto [supp, dim] = d.classify_support(lab);
    if (dim) {
      rep.note(b.path + ": dim L(" + lab + ") = " + dim->to_string());
      dims[lab] = dim->to_string();
    }
  }
  if (mism.empty()) rep.note(b.path + ": annotations verified (" +
                             std::to_string(b.irreps.size()) + " rows)");
  jb["dims"] = dims;
  jb["ok"] = mism.empty();
  rep.machine.push_back(jb);
}

inline std::map<std::string, CategoryContext> load_contexts(const Registry& reg) {
  std::map<std::string, CategoryContext> out;
  namespace fs = std::filesystem;
  fs::path root = fs::path(reg.dir()) / "contexts";
  if (!fs::exists(root)) return out;
  for (const auto& e : fs::directory_iterator(root)) {
    if (e.path().extension() != ".json") continue;
    out.emplace(e.path().stem().string(), CategoryContext::from_file(e.path().string()));
  }
  return out;
}

inline void solve_block(const BlockSpec& b, const Registry& reg, RunReport& rep,
                        const ConstraintConfig& cfg) {
  auto contexts = load_contexts(reg);
  SolverHints hints = SolverHints::parse(b.hints);
  std::optional<BlockSpec> dual;
  if (!hints.dual_block.empty())
    dual = reg.load_block(reg.dir() + "/" + hints.dual_block);
  BlockSolver solver(b, reg, cfg, &contexts, dual ? &*dual : nullptr);
  solver.propagate();
  auto results = solver.search();
  auto verdict = solver.certify_unique(results);
  for (const auto& ev : solver.trace()) {
    rep.note("  [" + ev.rule + "] " + ev.what + ": " + ev.witness);
    json je;
    je["cell"] = ev.what;
    je["value"] = ev.value;
    je["rule"] = ev.rule;
    je["witness"] = ev.witness;
    rep.machine.push_back(je);
  }
  for (const auto& c : solver.capped_cells())
    rep.note("  note: domain of " + c + " truncated at search cap " +
             std::to_string(cfg.search_cap));
  switch (verdict.kind) {
    case BlockSolver::Verdict::Unique: {
      rep.note(b.path + ": unique completion");
      rep.note(format_matrix(b.irreps, verdict.matrix->matrices[0]));
      if (b.expected_matrix) {
        if (verdict.matrix->matrices[0] == *b.expected_matrix)
          rep.note(b.path + ": matches the expected matrix");
        else
          rep.fail(kMismatch, b.path + ": completion differs from the expected matrix");
      }
      break;
    }
    case BlockSolver::Verdict::Ambiguous: {
      std::string cells;
      for (const auto& c : verdict.diff_cells) cells += " " + c;
      rep.fail(kAmbiguous, b.path + ": ambiguous, " + std::to_string(verdict.count) +
                               " completions differ at" + cells);
      break;
    }
    case BlockSolver::Verdict::Infeasible:
      rep.fail(kMismatch, b.path + ": no completion survives the constraints");
      break;
  }
}

inline int run_verify(const std::vector<std::string>& paths, const Registry& reg,
                      RunReport& rep, long long series_depth = 40) {
  rep.command = "verify";
  for (const auto& p : paths) {
    try {
      BlockSpec b = reg.load_block(p);
      verify_block(b, reg, rep, series_depth);
    } catch (const std::exception& e) {
      rep.fail(kDataError, p + ": " + e.what());
    }
  }
  return rep.exit_code;
}

inline int run_solve(const std::string& path, const Registry& reg, RunReport& rep,
                     const ConstraintConfig& cfg) {
  rep.command = "solve";
  try {
    BlockSpec b = reg.load_block(path);
    if (b.hecke_columns.empty())
      throw MissingDataError(path + " has no Hecke columns to solve from");
    solve_block(b, reg, rep, cfg);
  } catch (const std::exception& e) {
    rep.fail(kDataError, path + ": " + e.what());
  }
  return rep.exit_code;
}

inline int run_char(const std::string& path, const std::string& label, const Registry& reg,
                    RunReport& rep) {
  rep.command = "char";
  try {
    BlockSpec b = reg.load_block(path);
    DecompMatrix d = DecompMatrix::from_expected(b, reg);
    GradedCharacter chi = d.character_of_simple(label);
    rep.note("chi_L(" + label + ") = " + chi.to_text());
    if (auto poly = chi.polynomial_text())
      rep.note("chi_L(" + label + ") = " + *poly);
    auto [supp, dim] = d.classify_support(label);
    rep.note("dim Supp L(" + label + ") = " + std::to_string(supp));
    if (dim) rep.note("dim L(" + label + ") = " + dim->to_string());
    json jb;
    jb["char"] = chi.to_text();
    jb["support"] = supp;
    if (dim) jb["dim"] = dim->to_string();
    rep.machine.push_back(jb);
  } catch (const std::exception& e) {
    rep.fail(kDataError, path + ": " + e.what());
  }
  return rep.exit_code;
}

inline int run_support(const std::string& path, const Registry& reg, RunReport& rep) {
  rep.command = "support";
  try {
    BlockSpec b = reg.load_block(path);
    DecompMatrix d = DecompMatrix::from_expected(b, reg);
    for (const auto& lab : b.irreps) {
      auto [supp, dim] = d.classify_support(lab);
      std::string line = "L(" + lab + "): support " + std::to_string(supp);
      if (dim) line += ", dim " + dim->to_string();
      rep.note(line);
    }
  } catch (const std::exception& e) {
    rep.fail(kDataError, path + ": " + e.what());
  }
  return rep.exit_code;
}

inline int run_defect1(const std::vector<long long>& weights,
                       const std::vector<long long>& dims, int rank, RunReport& rep) {
  rep.command = "defect1";
  try {
    Defect1Block b;
    for (long long w : weights) b.weights.emplace_back(w);
    b.dims = dims;
    b.rank = rank;
    auto m = defect1_matrix(b);
    std::vector<std::string> labels;
    for (size_t i = 0; i < dims.size(); ++i) labels.push_back(std::to_string(dims[i]));
    rep.note(format_matrix(labels, m));
    int supp = defect1_support(b);
    auto r = remark516_check(b);
    rep.note("dim Supp L(tau_1) = " + std::to_string(supp));
    rep.note("members " + std::to_string(r.count) + ", codim+1 " +
             std::to_string(r.codim_plus_one) + (r.equal ? " (equal)" : " (NOT equal)"));
  } catch (const std::exception& e) {
    rep.fail(kDataError, e.what());
  }
  return rep.exit_code;
}

}  // namespace cherednik
