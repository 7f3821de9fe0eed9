#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cherednik/report.hpp"

using namespace cherednik;

namespace {

void emit(const RunReport& rep, bool as_json) {
  if (as_json) {
    json out;
    out["command"] = rep.command;
    out["lines"] = rep.lines;
    out["results"] = rep.machine;
    out["exit"] = rep.exit_code;
    std::cout << out.dump(1) << "\n";
  } else {
    std::cout << rep.text();
  }
}

std::vector<long long> parse_ll_list(const std::string& s) {
  std::vector<long long> out;
  std::string cur;
  for (char ch : s + ",") {
    if (ch == ',' || ch == ' ') {
      if (!cur.empty()) out.push_back(std::stoll(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact decomposition-matrix toolkit for Cherednik category O"};
  app.require_subcommand(1);

  std::string data_dir = Registry::default_data_dir();
  bool as_json = false;
  long long series_depth = 40, search_cap = 4;
  app.add_option("--data-dir", data_dir, "data directory (or CHEREDNIK_DATA_DIR)");
  app.add_flag("--json", as_json, "machine-readable report");
  app.add_option("--series-depth", series_depth, "series expansion depth");
  app.add_option("--search-cap", search_cap, "largest entry value tried by search");

  auto* verify = app.add_subcommand("verify", "check bundled matrices and annotations");
  std::string verify_path;
  bool verify_all = false;
  verify->add_option("block", verify_path, "block file");
  verify->add_flag("--all", verify_all, "verify every bundled block");

  auto* solve = app.add_subcommand("solve", "complete a partially known matrix");
  std::string solve_path, constraints;
  solve->add_option("block", solve_path, "block file")->required();
  solve->add_option("--constraints", constraints,
                    "comma-separated constraint families to enable (default: all)");

  auto* chr = app.add_subcommand("char", "print one simple character");
  std::string char_path, char_label;
  chr->add_option("block", char_path, "block file")->required();
  chr->add_option("label", char_label, "irrep label")->required();

  auto* sup = app.add_subcommand("support", "support dimensions of a block");
  std::string sup_path;
  sup->add_option("block", sup_path, "block file")->required();

  auto* d1 = app.add_subcommand("defect1", "generate a defect-1 block from weights and dims");
  std::string d1_weights, d1_dims;
  int d1_rank = 8;
  d1->add_option("--weights", d1_weights, "shifted weights, comma separated")->required();
  d1->add_option("--dims", d1_dims, "dimensions, comma separated")->required();
  d1->add_option("--rank", d1_rank, "ambient group rank");

  auto* report = app.add_subcommand("report", "verify then solve every solvable block");

  CLI11_PARSE(app, argc, argv);

  Registry reg(data_dir);
  RunReport rep;
  int code = 0;
  try {
    if (*verify) {
      std::vector<std::string> paths;
      if (verify_all || verify_path.empty())
        paths = reg.all_block_paths();
      else
        paths.push_back(verify_path);
      code = run_verify(paths, reg, rep, series_depth);
    } else if (*solve) {
      ConstraintConfig cfg;
      if (!constraints.empty()) {
        std::set<std::string> names;
        std::string cur;
        for (char ch : constraints + ",") {
          if (ch == ',') {
            if (!cur.empty()) names.insert(cur);
            cur.clear();
          } else {
            cur += ch;
          }
        }
        cfg = ConstraintConfig::only(names);
      }
      cfg.series_depth = series_depth;
      cfg.search_cap = search_cap;
      code = run_solve(solve_path, reg, rep, cfg);
    } else if (*chr) {
      code = run_char(char_path, char_label, reg, rep);
    } else if (*sup) {
      code = run_support(sup_path, reg, rep);
    } else if (*d1) {
      code = run_defect1(parse_ll_list(d1_weights), parse_ll_list(d1_dims), d1_rank, rep);
    } else if (*report) {
      std::vector<std::string> paths = reg.all_block_paths();
      code = run_verify(paths, reg, rep, series_depth);
      ConstraintConfig cfg;
      cfg.series_depth = series_depth;
      cfg.search_cap = search_cap;
      for (const auto& p : paths) {
        BlockSpec b = reg.load_block(p);
        if (!b.solve_target || b.hecke_columns.empty()) continue;
        RunReport sub;
        int sc = run_solve(p, reg, sub, cfg);
        for (const auto& l : sub.lines) rep.note(l);
        for (const auto& m : sub.machine) rep.machine.push_back(m);
        if (sc != 0 && code == 0) code = sc;
      }
    }
  } catch (const std::exception& e) {
    rep.fail(kDataError, e.what());
    code = kDataError;
  }
  emit(rep, as_json);
  return code;
}
