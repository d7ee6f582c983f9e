#include "fibresum/intlat.hpp"
#include "support/oracles.hpp"
#include "support/random_problems.hpp"

#include <gtest/gtest.h>

#include <algorithm>

namespace fsum {
namespace {

void expect_valid_snf(const IntMatrix& a, const SnfDecomposition& s) {
  ASSERT_EQ(s.U.rows(), a.rows());
  ASSERT_EQ(s.V.rows(), a.cols());
  EXPECT_EQ(s.U * a * s.V, s.D);
  EXPECT_EQ(abs_value(oracle::determinant(s.U)), 1);
  EXPECT_EQ(abs_value(oracle::determinant(s.V)), 1);
  for (std::size_t i = 0; i < s.D.rows(); ++i) {
    for (std::size_t j = 0; j < s.D.cols(); ++j) {
      if (i != j) {
        EXPECT_EQ(s.D(i, j), 0);
      }
    }
  }
  const IntVector d = s.diagonal();
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    EXPECT_GE(d[i], 0);
    if (d[i] == 0) {
      EXPECT_EQ(d[i + 1], 0) << "zeros must come last";
    } else {
      EXPECT_EQ(d[i + 1] % d[i], 0);
    }
  }
}

TEST(SmithNormalForm, IdentityIsFixed) {
  const auto s = smith_normal_form(IntMatrix::identity(2));
  EXPECT_EQ(s.U, IntMatrix::identity(2));
  EXPECT_EQ(s.D, IntMatrix::identity(2));
  EXPECT_EQ(s.V, IntMatrix::identity(2));
}

TEST(SmithNormalForm, TwoByTwo) {
  const IntMatrix a{{2, 4}, {6, 8}};
  const auto s = smith_normal_form(a);
  EXPECT_EQ(s.D, (IntMatrix{{2, 0}, {0, 4}}));
  expect_valid_snf(a, s);
  EXPECT_EQ(s.diagonal(), oracle::invariant_factors_by_minors(a));
}

TEST(SmithNormalForm, ZeroMatrix) {
  const IntMatrix z(2, 3);
  const auto s = smith_normal_form(z);
  EXPECT_TRUE(s.D.is_zero());
  expect_valid_snf(z, s);
}

TEST(SmithNormalForm, EmptyShapes) {
  for (auto [r, c] : {std::pair{0, 0}, {0, 5}, {4, 0}}) {
    const IntMatrix a(r, c);
    const auto s = smith_normal_form(a);
    EXPECT_EQ(s.U, IntMatrix::identity(r));
    EXPECT_EQ(s.V, IntMatrix::identity(c));
    EXPECT_EQ(rank(a), 0u);
  }
}

TEST(SmithNormalForm, HugeEntriesDoNotOverflow) {
  const Int big = Int(1) << 200;
  const IntMatrix a{{big, big + 1}, {big - 1, big}};
  const auto s = smith_normal_form(a);
  expect_valid_snf(a, s);
  EXPECT_EQ(s.diagonal(), (IntVector{1, 1}));
}

TEST(SmithNormalForm, Deterministic) {
  testkit::ProblemGenerator gen(7);
  for (int i = 0; i < 20; ++i) {
    const IntMatrix a = gen.random_matrix(4, 5, 9);
    const auto s1 = smith_normal_form(a);
    const auto s2 = smith_normal_form(a);
    EXPECT_EQ(s1.U, s2.U);
    EXPECT_EQ(s1.D, s2.D);
    EXPECT_EQ(s1.V, s2.V);
  }
}

TEST(SmithNormalForm, RandomMatricesSatisfyInvariants) {
  testkit::ProblemGenerator gen(11);
  for (int i = 0; i < 150; ++i) {
    const auto r = static_cast<std::size_t>(gen.uniform(1, 8));
    const auto c = static_cast<std::size_t>(gen.uniform(1, 8));
    const IntMatrix a = gen.random_matrix(r, c, 50, gen.coin() ? 0.5 : 0.0);
    expect_valid_snf(a, smith_normal_form(a));
  }
}

TEST(SmithNormalForm, DiagonalMatchesDeterminantalDivisors) {
  testkit::ProblemGenerator gen(13);
  for (int i = 0; i < 120; ++i) {
    const auto r = static_cast<std::size_t>(gen.uniform(1, 4));
    const auto c = static_cast<std::size_t>(gen.uniform(1, 4));
    // Low-rank products make zero and repeated invariant factors common.
    IntMatrix a = gen.random_matrix(r, c, 6, 0.3);
    if (gen.coin(0.3)) a = gen.random_matrix(r, 1, 4) * gen.random_matrix(1, c, 4);
    const IntVector got = smith_normal_form(a).diagonal();
    EXPECT_EQ(got, oracle::invariant_factors_by_minors(a)) << to_string(a);
  }
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(IntMatrix::identity(3)), 3u);
  EXPECT_EQ(rank(IntMatrix{{2, 4}, {1, 2}}), 1u);
  EXPECT_EQ(rank(IntMatrix(0, 5)), 0u);
}

TEST(Rank, AgreesWithRationalElimination) {
  testkit::ProblemGenerator gen(17);
  for (int i = 0; i < 100; ++i) {
    const auto r = static_cast<std::size_t>(gen.uniform(0, 6));
    const auto c = static_cast<std::size_t>(gen.uniform(0, 6));
    IntMatrix a = gen.random_matrix(r, c, 5, 0.4);
    if (r > 0 && c > 0 && gen.coin(0.4)) a = gen.random_matrix(r, 2, 5) * gen.random_matrix(2, c, 5);
    EXPECT_EQ(rank(a), oracle::rational_rank(a));
  }
}

void expect_saturated_kernel(const IntMatrix& a, const IntBasis& k) {
  ASSERT_EQ(k.ambient_dim, a.cols());
  EXPECT_EQ(k.size(), a.cols() - oracle::rational_rank(a));
  for (const auto& v : k.vectors) {
    const IntVector image = a * v;
    EXPECT_TRUE(std::all_of(image.begin(), image.end(), [](const Int& x) { return x == 0; }));
    Int g = 0;
    for (const auto& x : v) g = gcd(g, x);
    EXPECT_EQ(g, 1);
  }
  if (k.empty()) return;
  // Saturated iff the gcd of the maximal minors of the basis matrix is 1.
  const IntMatrix b = IntMatrix::from_rows(k.vectors, k.ambient_dim);
  const IntVector f = oracle::invariant_factors_by_minors(b);
  for (const auto& x : f) EXPECT_EQ(x, 1);
}

TEST(KernelBasis, Examples) {
  const auto k0 = kernel_basis(IntMatrix(1, 2));
  EXPECT_EQ(k0.vectors, (std::vector<IntVector>{{1, 0}, {0, 1}}));
  const auto k1 = kernel_basis(IntMatrix{{1, 1}});
  EXPECT_EQ(k1.vectors, (std::vector<IntVector>{{1, -1}}));
  expect_saturated_kernel(IntMatrix{{1, 1}}, k1);
  EXPECT_TRUE(kernel_basis(IntMatrix::identity(2)).empty());
}

TEST(KernelBasis, ZeroRowMatrixKernelIsEverything) {
  const auto k = kernel_basis(IntMatrix(0, 3));
  EXPECT_EQ(k.vectors, (std::vector<IntVector>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
}

TEST(KernelBasis, RandomKernelsAreSaturated) {
  testkit::ProblemGenerator gen(19);
  for (int i = 0; i < 100; ++i) {
    const auto r = static_cast<std::size_t>(gen.uniform(1, 4));
    const auto c = static_cast<std::size_t>(gen.uniform(1, 5));
    IntMatrix a = gen.random_matrix(r, c, 6, 0.3);
    if (gen.coin(0.3)) a = gen.random_matrix(r, 1, 6) * gen.random_matrix(1, c, 6);
    expect_saturated_kernel(a, kernel_basis(a));
  }
}

TEST(KernelBasis, IndependentOfRowBasis) {
  // The kernel is canonicalized, so any presentation of the same row space
  // gives the same basis.
  testkit::ProblemGenerator gen(23);
  for (int i = 0; i < 40; ++i) {
    const IntMatrix a = gen.random_matrix(2, 5, 4);
    IntMatrix p{{1, 0}, {0, 1}};
    p.add_row(0, 1, gen.uniform(-5, 5));
    p.add_row(1, 0, gen.uniform(-5, 5));
    EXPECT_EQ(kernel_basis(a), kernel_basis(p * a));
  }
}

TEST(Cokernel, Examples) {
  EXPECT_EQ(cokernel_presentation(IntMatrix{{2, 0}, {0, 3}}), AbGroup(0, {6}));
  EXPECT_EQ(cokernel_presentation(IntMatrix(3, 2)), AbGroup(3, {}));
  EXPECT_EQ(cokernel_presentation(IntMatrix{{1, 1}, {1, -1}}), AbGroup(0, {2}));
}

IntMatrix random_unimodular(testkit::ProblemGenerator& gen, std::size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return gen.coin() ? u : IntMatrix{{-1}};
  for (int s = 0; s < 12; ++s) {
    const auto i = static_cast<std::size_t>(gen.uniform(0, static_cast<int>(n) - 1));
    auto k = static_cast<std::size_t>(gen.uniform(0, static_cast<int>(n) - 2));
    if (k >= i) ++k;
    u.add_row(i, k, gen.uniform(-3, 3));
    if (gen.coin(0.2)) u.swap_rows(i, k);
  }
  return u;
}

TEST(Cokernel, InvariantUnderUnimodularChange) {
  testkit::ProblemGenerator gen(29);
  for (int i = 0; i < 80; ++i) {
    const auto r = static_cast<std::size_t>(gen.uniform(1, 5));
    const auto c = static_cast<std::size_t>(gen.uniform(1, 5));
    const IntMatrix a = gen.random_matrix(r, c, 8, 0.3);
    const IntMatrix p = random_unimodular(gen, r);
    const IntMatrix q = random_unimodular(gen, c);
    ASSERT_EQ(abs_value(oracle::determinant(p)), 1);
    EXPECT_EQ(cokernel_presentation(a), cokernel_presentation(p * a * q));
  }
}

TEST(Cokernel, HomCountsMatchBruteForce) {
  testkit::ProblemGenerator gen(31);
  for (int i = 0; i < 60; ++i) {
    const auto r = static_cast<std::size_t>(gen.uniform(1, 4));
    const auto c = static_cast<std::size_t>(gen.uniform(1, 4));
    const IntMatrix a = gen.random_matrix(r, c, 6, 0.3);
    const AbGroup g = cokernel_presentation(a);
    for (unsigned m : {2u, 3u, 4u, 6u})
      EXPECT_EQ(oracle::hom_count(g, m), oracle::hom_count(a, m)) << to_string(a) << " m=" << m;
  }
}

}  // namespace
}  // namespace fsum
