#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cherednik/charpoly.hpp"
#include "cherednik/repdata.hpp"

namespace cherednik {

// Integer combination of basis classes within one category O_c(W).
struct GrothendieckVector {
  enum class Basis { Verma, Simple };
  Basis basis = Basis::Verma;
  std::string group;
  Rational c;
  std::map<std::string, long long> coords;

  void add(const std::string& label, long long k) {
    if (k == 0) return;
    auto it = coords.find(label);
    if (it == coords.end()) coords.emplace(label, k);
    else if ((it->second += k) == 0) coords.erase(it);
  }
  bool is_zero() const { return coords.empty(); }
};

// Decomposition matrix of one block; entries indexed (verma row, simple column).
class DecompMatrix {
public:
  DecompMatrix(const BlockSpec* block, const Registry* reg)
      : block_(block), reg_(reg) {
    size_t n = block->irreps.size();
    entries_.assign(n, std::vector<EntryState>(n));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        if (i == j) entries_[i][j] = EntryState::known(1);
        else if (j < i || !(block->h(block->irreps[j]) > block->h(block->irreps[i])))
          entries_[i][j] = EntryState::known(0);
        else if (!(block->h(block->irreps[j]) - block->h(block->irreps[i])).is_integer())
          entries_[i][j] = EntryState::known(0);
      }
  }

  static DecompMatrix from_expected(const BlockSpec& block, const Registry& reg) {
    if (!block.expected_matrix)
      throw MissingDataError(block.path + " has no expected_matrix");
    DecompMatrix d(&block, &reg);
    const auto& M = *block.expected_matrix;
    for (size_t i = 0; i < M.size(); ++i)
      for (size_t j = 0; j < M.size(); ++j) d.set_known(i, j, M[i][j]);
    return d;
  }

  const BlockSpec& block() const { return *block_; }
  const Registry& registry() const { return *reg_; }
  size_t size() const { return entries_.size(); }
  const EntryState& at(size_t i, size_t j) const { return entries_[i][j]; }
  EntryState& at(size_t i, size_t j) { return entries_[i][j]; }

  void set_known(size_t i, size_t j, long long v) {
    const EntryState& e = entries_[i][j];
    if (e.is_known() && e.lo != v)
      throw ConsistencyError("entry (" + block_->irreps[i] + "," + block_->irreps[j] +
                             ") fixed to " + std::to_string(e.lo) + ", got " +
                             std::to_string(v));
    if (v < 0) throw ConsistencyError("negative multiplicity");
    entries_[i][j] = EntryState::known(v);
  }

  bool fully_known() const {
    for (const auto& row : entries_)
      for (const auto& e : row)
        if (!e.is_known()) return false;
    return true;
  }

  std::vector<std::pair<size_t, size_t>> unknown_cells() const {
    std::vector<std::pair<size_t, size_t>> out;
    for (size_t i = 0; i < size(); ++i)
      for (size_t j = 0; j < size(); ++j)
        if (!entries_[i][j].is_known()) out.emplace_back(i, j);
    return out;
  }

  // back-substitution inverse of a fully known unitriangular matrix
  std::vector<std::vector<BigInt>> invert() const {
    if (!fully_known()) throw UnknownEntriesError(block_->path);
    size_t n = size();
    std::vector<std::vector<BigInt>> A(n, std::vector<BigInt>(n, BigInt(0)));
    for (size_t i = n; i-- > 0;) {
      A[i][i] = BigInt(1);
      for (size_t j = i + 1; j < n; ++j) {
        BigInt s(0);
        for (size_t k = i + 1; k <= j; ++k)
          if (entries_[i][k].lo != 0 && !A[k][j].is_zero())
            s += BigInt(entries_[i][k].lo) * A[k][j];
        A[i][j] = -s;
      }
    }
    return A;
  }

  // [L(label)] expanded in the Verma basis: row `label` of the inverse
  GrothendieckVector simple_in_vermas(const std::string& label) const {
    auto A = invert();
    int r = block_->index_of(label);
    GrothendieckVector v;
    v.basis = GrothendieckVector::Basis::Verma;
    v.group = block_->group;
    v.c = block_->c;
    for (size_t j = 0; j < size(); ++j)
      if (!A[r][j].is_zero()) v.add(block_->irreps[j], A[r][j].to_long_long());
    return v;
  }

  GradedCharacter character_of_simple(const std::string& label) const {
    auto A = invert();
    return character_from_row(A[block_->index_of(label)]);
  }

  GradedCharacter character_from_row(const std::vector<BigInt>& row) const {
    int rank = reg_->group(block_->group).rank;
    const Rational& h0 = block_->h(block_->irreps.front());
    std::map<long long, BigInt> num;
    for (size_t j = 0; j < size(); ++j) {
      if (row[j].is_zero()) continue;
      long long e = (block_->h(block_->irreps[j]) - h0).to_integer();
      BigInt& slot = num[e];
      slot += row[j] * BigInt(reg_->dim_of(block_->group, block_->irreps[j]));
      if (slot.is_zero()) num.erase(e);
    }
    return GradedCharacter(h0, std::move(num), rank);
  }

  // Verma character of one row: dim * t^h / (1-t)^rank
  GradedCharacter character_of_verma(const std::string& label) const {
    int rank = reg_->group(block_->group).rank;
    return GradedCharacter::monomial(block_->h(label),
                                     BigInt(reg_->dim_of(block_->group, label)), rank);
  }

  // (dim Supp, dim if finite)
  std::pair<int, std::optional<BigInt>> classify_support(const std::string& label) const {
    GradedCharacter chi = character_of_simple(label);
    int po = chi.pole_order_at_one();
    if (po == 0) return {0, chi.dimension_if_finite()};
    return {po, std::nullopt};
  }

  struct AnnotationMismatch {
    std::string label;
    std::string annotated;
    int computed;
  };

  // verify every star/(k)/unannotated margin against the computed pole order
  std::vector<AnnotationMismatch> check_annotations() const {
    std::vector<AnnotationMismatch> out;
    int rank = reg_->group(block_->group).rank;
    for (const auto& lab : block_->irreps) {
      int computed = character_of_simple(lab).pole_order_at_one();
      auto it = block_->support.find(lab);
      std::string annotated = it == block_->support.end() ? "" : it->second;
      int expect = annotated.empty() ? rank
                 : annotated == "finite" ? 0
                                         : std::stoi(annotated);
      if (computed != expect)
        out.push_back({lab, annotated.empty() ? "(full)" : annotated, computed});
    }
    return out;
  }

private:
  const BlockSpec* block_;
  const Registry* reg_;
  std::vector<std::vector<EntryState>> entries_;
};

}  // namespace cherednik
