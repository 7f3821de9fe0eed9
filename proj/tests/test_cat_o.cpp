#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cherednik/cat_o.hpp"

using namespace cherednik;

namespace {
Registry& registry() {
  static Registry reg(Registry::default_data_dir());
  return reg;
}

// independent oracle: solve A * D = I column by column by forward substitution
std::vector<std::vector<long long>> invert_oracle(const std::vector<std::vector<long long>>& D) {
  size_t n = D.size();
  std::vector<std::vector<long long>> A(n, std::vector<long long>(n, 0));
  for (size_t j = 0; j < n; ++j) {
    // column j of A: sum_k A[i][k] D[k][j] = delta_ij, solve upward from i = j
    for (size_t ii = j + 1; ii-- > 0;) {
      long long s = (ii == j) ? 1 : 0;
      for (size_t k = ii; k < j; ++k) s -= A[ii][k] * D[k][j];
      A[ii][j] = s;  // D[j][j] = 1
    }
  }
  return A;
}

BlockSpec synthetic_block(size_t n, const std::vector<std::vector<long long>>& D) {
  BlockSpec b;
  b.group = "E8";
  b.c = Rational(1, 12);
  for (size_t i = 0; i < n; ++i) {
    std::string lab = "r" + std::to_string(i);
    b.irreps.push_back(lab);
    b.h_weights.emplace(lab, Rational(static_cast<long long>(i)));
  }
  b.expected_matrix = D;
  b.path = "synthetic";
  return b;
}
}  // namespace

TEST_CASE("identity inverts to identity") {
  std::vector<std::vector<long long>> I(4, std::vector<long long>(4, 0));
  for (int i = 0; i < 4; ++i) I[i][i] = 1;
  BlockSpec b = synthetic_block(4, I);
  DecompMatrix d = DecompMatrix::from_expected(b, registry());
  auto A = d.invert();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(A[i][j] == BigInt(i == j ? 1 : 0));
}

TEST_CASE("random unitriangular inversion against the back-substitution oracle") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> size_d(2, 20), coin(0, 3);
  for (int trial = 0; trial < 1000; ++trial) {
    size_t n = static_cast<size_t>(size_d(rng));
    std::vector<std::vector<long long>> D(n, std::vector<long long>(n, 0));
    for (size_t i = 0; i < n; ++i) {
      D[i][i] = 1;
      for (size_t j = i + 1; j < n; ++j) D[i][j] = coin(rng) == 0 ? 1 : 0;
    }
    BlockSpec b = synthetic_block(n, D);
    DecompMatrix d = DecompMatrix::from_expected(b, registry());
    auto A = d.invert();
    auto W = invert_oracle(D);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) CHECK(A[i][j] == BigInt(W[i][j]));
    // A * D = I exactly
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        BigInt s(0);
        for (size_t k = 0; k < n; ++k) s += A[i][k] * BigInt(D[k][j]);
        CHECK(s == BigInt(i == j ? 1 : 0));
      }
  }
}

TEST_CASE("inversion round trips") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> coin(0, 2);
  for (int trial = 0; trial < 200; ++trial) {
    size_t n = 10;
    std::vector<std::vector<long long>> D(n, std::vector<long long>(n, 0));
    for (size_t i = 0; i < n; ++i) {
      D[i][i] = 1;
      for (size_t j = i + 1; j < n; ++j) D[i][j] = coin(rng) == 0 ? 1 : 0;
    }
    BlockSpec b = synthetic_block(n, D);
    auto A = DecompMatrix::from_expected(b, registry()).invert();
    std::vector<std::vector<long long>> Al(n, std::vector<long long>(n));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) Al[i][j] = A[i][j].to_long_long();
    // inverting the inverse restores the matrix; entries of A may be negative,
    // so run the plain back-substitution directly
    auto W = invert_oracle(Al);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) CHECK(W[i][j] == D[i][j]);
  }
}

TEST_CASE("unknown entries block inversion") {
  BlockSpec b = synthetic_block(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  b.expected_matrix.reset();
  DecompMatrix d(&b, &registry());
  d.at(0, 1) = EntryState{0, 2};
  CHECK_THROWS_AS(d.invert(), UnknownEntriesError);
}

TEST_CASE("printed inverse rows of the bundled fixtures") {
  Registry& reg = registry();
  // F4 c=1/4: row 9_1 of the inverse
  BlockSpec f4 = reg.load_block(reg.dir() + "/F4/c_1_4/principal.json");
  DecompMatrix d = DecompMatrix::from_expected(f4, reg);
  auto A = d.invert();
  int r = f4.index_of("9_1");
  std::vector<long long> expect{0, 0, 1, -1, -1, -1, 2, -1, -1};
  for (size_t j = 0; j < expect.size(); ++j) CHECK(A[r][j] == BigInt(expect[j]));

  // E8 c=1/12: L(50_x) in the Verma basis
  BlockSpec e8 = reg.load_block(reg.dir() + "/E8/c_1_12/principal.json");
  DecompMatrix d8 = DecompMatrix::from_expected(e8, reg);
  GrothendieckVector v = d8.simple_in_vermas("50_x");
  std::map<std::string, long long> expect50{
      {"50_x", 1},    {"400_z", -1},  {"1400_x", 1},  {"2800_z", -1}, {"2100_y", 1},
      {"1400_y", 1},  {"2800_z'", -1}, {"1400_x'", 1}, {"400_z'", -1}, {"50_x'", 1}};
  CHECK(v.coords == expect50);

  // F4 c=1/3: row 4_2 is the alternating vector of length 9
  BlockSpec f43 = reg.load_block(reg.dir() + "/F4/c_1_3/block_4_2.json");
  DecompMatrix d43 = DecompMatrix::from_expected(f43, reg);
  auto A43 = d43.invert();
  std::vector<long long> alt{1, -1, -1, 1, 1, 1, -1, -1, 1};
  for (size_t j = 0; j < alt.size(); ++j) CHECK(A43[0][j] == BigInt(alt[j]));
}

TEST_CASE("defect-0 block: the simple equals its Verma") {
  BlockSpec b = synthetic_block(1, {{1}});
  DecompMatrix d = DecompMatrix::from_expected(b, registry());
  auto v = d.simple_in_vermas("r0");
  CHECK(v.coords.size() == 1);
  CHECK(v.coords.at("r0") == 1);
}

TEST_CASE("characters of printed fixtures") {
  Registry& reg = registry();
  BlockSpec b = reg.load_block(reg.dir() + "/E8/c_1_10/principal.json");
  DecompMatrix d = DecompMatrix::from_expected(b, reg);
  GradedCharacter chi = d.character_of_simple("28_x");
  CHECK(chi.pole_order_at_one() == 0);
  CHECK(chi.dimension_if_finite().value() == BigInt(945));
  auto [m, quot] = chi.strip_one_minus_t();
  std::map<long long, BigInt> expect{{0, BigInt(28)}, {1, BigInt(224)}, {2, BigInt(441)},
                                     {3, BigInt(224)}, {4, BigInt(28)}};
  CHECK(quot == expect);

  BlockSpec b8 = reg.load_block(reg.dir() + "/E8/c_1_8/principal.json");
  DecompMatrix d8 = DecompMatrix::from_expected(b8, reg);
  auto [supp1, dim1] = d8.classify_support("1_x");
  CHECK(supp1 == 0);
  CHECK(dim1.value() == BigInt(62640));
  GradedCharacter chi160 = d8.character_of_simple("160_z");
  auto [m160, q160] = chi160.strip_one_minus_t();
  CHECK(m160 >= 8);
  std::map<long long, BigInt> expect160{{0, BigInt(160)}, {1, BigInt(713)}, {2, BigInt(1224)},
                                        {3, BigInt(713)}, {4, BigInt(160)}};
  CHECK(q160 == expect160);
}

TEST_CASE("support classification agrees with the annotations on every fixture") {
  Registry& reg = registry();
  for (const auto& p : reg.all_block_paths()) {
    BlockSpec b = reg.load_block(p);
    if (b.defect1 || !b.expected_matrix) continue;
    DecompMatrix d = DecompMatrix::from_expected(b, reg);
    CAPTURE(p);
    CHECK(d.check_annotations().empty());
  }
}

TEST_CASE("tampered annotations are reported") {
  Registry& reg = registry();
  BlockSpec b = reg.load_block(reg.dir() + "/E8/c_1_6/block_112_z.json");
  b.support["112_z"] = "3";  // printed margin says 2
  DecompMatrix d = DecompMatrix::from_expected(b, reg);
  auto mism = d.check_annotations();
  REQUIRE(mism.size() == 1);
  CHECK(mism[0].label == "112_z");
  CHECK(mism[0].computed == 2);
}

TEST_CASE("D and A reproduce each other on all fixtures") {
  Registry& reg = registry();
  for (const auto& p : reg.all_block_paths()) {
    BlockSpec b = reg.load_block(p);
    if (!b.expected_matrix || !b.expected_inverse) continue;
    DecompMatrix d = DecompMatrix::from_expected(b, reg);
    auto A = d.invert();
    size_t n = b.irreps.size();
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        CHECK(A[i][j] == BigInt((*b.expected_inverse)[i][j]));
    // D * A = I as well
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        BigInt s(0);
        for (size_t k = 0; k < n; ++k)
          s += BigInt((*b.expected_matrix)[i][k]) * A[k][j];
        CHECK(s == BigInt(i == j ? 1 : 0));
      }
  }
}

TEST_CASE("star rows have sign-symmetric Verma expansions") {
  Registry& reg = registry();
  for (const auto& p : reg.all_block_paths()) {
    BlockSpec b = reg.load_block(p);
    if (b.defect1 || !b.expected_matrix) continue;
    std::set<std::string> members(b.irreps.begin(), b.irreps.end());
    bool self_dual = true;
    for (const auto& lab : b.irreps)
      self_dual &= members.count(reg.irrep(b.group, lab).sign_dual) > 0;
    if (!self_dual) continue;
    DecompMatrix d = DecompMatrix::from_expected(b, reg);
    auto A = d.invert();
    for (const auto& [lab, ann] : b.support) {
      if (ann != "finite") continue;
      int r = b.index_of(lab);
      for (size_t j = 0; j < b.irreps.size(); ++j) {
        int dj = b.index_of(reg.irrep(b.group, b.irreps[j]).sign_dual);
        CHECK(A[r][j] == A[r][dj]);
      }
    }
  }
}

TEST_CASE("graded dimensions of fixture simples are non-negative to depth 40") {
  Registry& reg = registry();
  for (const auto& name : {"/E8/c_1_12/principal.json", "/F4/c_1_6/principal.json",
                           "/E8/c_1_4/block_8_z.json"}) {
    BlockSpec b = reg.load_block(reg.dir() + name);
    DecompMatrix d = DecompMatrix::from_expected(b, reg);
    for (const auto& lab : b.irreps) {
      GradedCharacter chi = d.character_of_simple(lab);
      for (const auto& [deg, c] : chi.graded_dims(40)) CHECK(!c.is_negative());
    }
  }
}
