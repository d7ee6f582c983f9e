#pragma once

// Homology of the fibre sum X = M' u_phi N' from the data of the summands:
// Betti numbers, H_1(X), the rim tori group R(X), split classes S(X) and the
// action of the gluing map on the boundary Sigma x S^1.

#include "fibresum/abgroups.hpp"
#include "fibresum/errors.hpp"
#include "fibresum/intlat.hpp"
#include "fibresum/model.hpp"

#include <string>
#include <vector>

namespace fsum {

struct KernelData {
  int d = 0;
  /// Basis alpha_1..alpha_d of ker(i_M + i_N) in gamma-coordinates.
  IntBasis alpha_basis;
  /// a'_i = <C, alpha_i>.
  IntVector a_adapted;
};

struct ComplementInvariants {
  AbGroup h1;
  int h1_cohom_rank = 0;
  int h2_rank = 0;
  std::vector<Int> h2_torsion;
  int ker_i_rank = 0;
};

/// Element x_M B_M + x_N B_N + sum_i c_i alpha_i of S(X) = ker f.
struct SplitClass {
  Int x_m;
  Int x_n;
  IntVector alpha_coeffs;
  std::string label;
  friend bool operator==(const SplitClass&, const SplitClass&) = default;
};

struct SplitClassBasis {
  /// True when k_M = k_N = 1 and the basis is {B_M - B_N, S_1, ..., S_d}.
  bool normal_form = false;
  std::vector<SplitClass> classes;
};

inline KernelData kernel_data(const FibreSumProblem& p) {
  KernelData k;
  // Torsion rows are excluded: d is a dimension over the reals.
  k.alpha_basis = kernel_basis(stacked_free_embedding(p.m, p.n));
  k.d = static_cast<int>(k.alpha_basis.size());
  for (const auto& alpha : k.alpha_basis.vectors) k.a_adapted.push_back(dot(p.gluing.a, alpha));
  return k;
}

inline BettiNumbers betti_numbers(const FibreSumProblem& p) {
  const auto& m = p.m;
  const auto& n = p.n;
  const int g = p.genus();
  BettiNumbers b;
  b.d = kernel_dimension(m, n);
  b.b1 = b.b3 = m.b1 + n.b1 - 2 * g + b.d;
  b.b2 = m.b2() + n.b2() - 2 + 2 * b.d;
  b.b2_plus = m.b2_plus + n.b2_plus - 1 + b.d;
  b.b2_minus = m.b2_minus + n.b2_minus - 1 + b.d;
  b.e = 2 - 2 * b.b1 + b.b2;
  b.sigma = b.b2_plus - b.b2_minus;
  if (b.b2 != b.b2_plus + b.b2_minus) throw InternalError("b2 != b2+ + b2-");
  if (b.e != m.euler() + n.euler() + 4 * g - 4) throw InternalError("Euler characteristic not additive");
  if (b.sigma != m.signature() + n.signature()) throw InternalError("signature not additive");
  return b;
}

namespace detail {

struct SidePresentation {
  std::size_t free_gens = 0;
  std::vector<Int> torsion;
};

}  // namespace detail

/// H_1(X) = coker(i_M + i_N + r) with r(lambda) = <C, lambda> mod gcd(k_M, k_N).
///
/// Generators: free and torsion generators of H_1(M), then of H_1(N), then
/// one generator of Z/n_MN. Relations: the torsion orders, n_MN, and the image
/// of each gamma_i.
inline AbGroup first_homology(const FibreSumProblem& p) {
  const auto& m = p.m;
  const auto& n = p.n;
  const std::size_t two_g = 2 * static_cast<std::size_t>(p.genus());
  const Int n_mn = gcd(m.k, n.k);

  const std::size_t m_free = static_cast<std::size_t>(m.b1);
  const std::size_t m_tors = m.h1_torsion.size();
  const std::size_t n_free = static_cast<std::size_t>(n.b1);
  const std::size_t n_tors = n.h1_torsion.size();
  const std::size_t gens = m_free + m_tors + n_free + n_tors + 1;
  const std::size_t rels = m_tors + n_tors + 1 + two_g;

  const std::size_t m_tors_at = m_free;
  const std::size_t n_free_at = m_free + m_tors;
  const std::size_t n_tors_at = n_free_at + n_free;
  const std::size_t cyc_at = n_tors_at + n_tors;

  IntMatrix pres(gens, rels);
  std::size_t c = 0;
  for (std::size_t j = 0; j < m_tors; ++j) pres(m_tors_at + j, c++) = m.h1_torsion[j];
  for (std::size_t j = 0; j < n_tors; ++j) pres(n_tors_at + j, c++) = n.h1_torsion[j];
  pres(cyc_at, c++) = n_mn;
  for (std::size_t i = 0; i < two_g; ++i, ++c) {
    for (std::size_t r = 0; r < m_free; ++r) pres(r, c) = m.embedding_free(r, i);
    for (std::size_t r = 0; r < m.embedding_torsion.size(); ++r) pres(m_tors_at + r, c) = m.embedding_torsion[r].row[i];
    for (std::size_t r = 0; r < n_free; ++r) pres(n_free_at + r, c) = n.embedding_free(r, i);
    for (std::size_t r = 0; r < n.embedding_torsion.size(); ++r) pres(n_tors_at + r, c) = n.embedding_torsion[r].row[i];
    pres(cyc_at, c) = p.gluing.a[i];
  }
  return cokernel_presentation(pres);
}

/// rank ker(i_M^* + i_N^* : H^1(M) + H^1(N) -> H^1(Sigma)).
inline int first_cohomology_rank(const FibreSumProblem& p) {
  const IntMatrix dual = stacked_free_embedding(p.m, p.n).transpose();
  const int r = static_cast<int>(dual.cols() - rank(dual));
  if (r != betti_numbers(p).b1) throw InternalError("rank H^1(X) disagrees with b1 from the Betti formula");
  return r;
}

/// R(X) = coker(i_M^* + i_N^*); its free rank is d.
inline AbGroup rim_tori_group(const FibreSumProblem& p) {
  AbGroup r = cokernel_presentation(stacked_free_embedding(p.m, p.n).transpose());
  if (static_cast<int>(r.free_rank()) != kernel_dimension(p.m, p.n))
    throw InternalError("rank R(X) != d");
  return r;
}

namespace detail {

inline std::string term(const Int& c, const std::string& symbol, bool first) {
  if (c == 0) return {};
  std::string s;
  const Int mag = abs_value(c);
  if (first) s = c < 0 ? "-" : "";
  else s = c < 0 ? " - " : " + ";
  if (mag != 1) s += mag.str() + "*";
  return s + symbol;
}

inline std::string split_label(const Int& x_m, const Int& x_n, const IntVector& coeffs) {
  std::string s;
  auto add = [&](const Int& c, const std::string& sym) {
    s += term(c, sym, s.empty());
  };
  add(x_m, "B_M");
  add(x_n, "B_N");
  for (std::size_t i = 0; i < coeffs.size(); ++i) add(coeffs[i], "alpha_" + std::to_string(i + 1));
  return s.empty() ? "0" : s;
}

}  // namespace detail

/// Basis of S(X) = ker(f), f(x_M, x_N, alpha) = x_M k_M + x_N k_N - <C, alpha>,
/// of rank d + 1.
inline SplitClassBasis split_class_basis(const FibreSumProblem& p) {
  const KernelData kd = kernel_data(p);
  const std::size_t d = static_cast<std::size_t>(kd.d);
  SplitClassBasis out;
  if (p.m.k == 1 && p.n.k == 1) {
    out.normal_form = true;
    IntVector zero(d, Int(0));
    out.classes.push_back({Int(1), Int(-1), zero, "B_X = B_M - B_N"});
    for (std::size_t i = 0; i < d; ++i) {
      IntVector e(d, Int(0));
      e[i] = 1;
      std::string label = "S_" + std::to_string(i + 1) + " = " + detail::split_label(0, kd.a_adapted[i], e);
      out.classes.push_back({Int(0), kd.a_adapted[i], std::move(e), std::move(label)});
    }
  } else {
    IntMatrix f(1, 2 + d);
    f(0, 0) = p.m.k;
    f(0, 1) = p.n.k;
    for (std::size_t i = 0; i < d; ++i) f(0, 2 + i) = -kd.a_adapted[i];
    for (const auto& v : kernel_basis(f).vectors) {
      IntVector coeffs(v.begin() + 2, v.end());
      std::string label = detail::split_label(v[0], v[1], coeffs);
      out.classes.push_back({v[0], v[1], std::move(coeffs), std::move(label)});
    }
  }
  if (out.classes.size() != d + 1) throw InternalError("rank S(X) != d + 1");
  for (const auto& s : out.classes) {
    if (s.x_m * p.m.k + s.x_n * p.n.k - dot(kd.a_adapted, s.alpha_coeffs) != 0)
      throw InternalError("split class outside ker f");
  }
  return out;
}

/// phi_* on H_1 in the basis (gamma_1..gamma_2g, sigma); column j is the
/// image of the j-th basis element.
inline IntMatrix phi_action_h1(int g, const IntVector& a) {
  const std::size_t two_g = 2 * static_cast<std::size_t>(g);
  if (a.size() != two_g) throw std::invalid_argument("gluing vector must have length 2g");
  IntMatrix m = IntMatrix::identity(two_g + 1);
  for (std::size_t i = 0; i < two_g; ++i) m(two_g, i) = a[i];
  m(two_g, two_g) = -1;
  return m;
}

/// phi_* on H_2 in the basis (Gamma_1..Gamma_2g, Sigma).
inline IntMatrix phi_action_h2(int g, const IntVector& a) {
  const std::size_t two_g = 2 * static_cast<std::size_t>(g);
  if (a.size() != two_g) throw std::invalid_argument("gluing vector must have length 2g");
  IntMatrix m(two_g + 1, two_g + 1);
  for (std::size_t i = 0; i < two_g; ++i) {
    m(i, i) = -1;
    m(i, two_g) = -a[i];
  }
  m(two_g, two_g) = 1;
  return m;
}

inline ComplementInvariants complement_invariants(const ManifoldSide& side) {
  ComplementInvariants c;
  const Int k_order[] = {side.k};
  c.h1 = direct_sum(AbGroup(static_cast<std::size_t>(side.b1), side.h1_torsion),
                    AbGroup::from_cyclic_orders(0, k_order));
  c.h1_cohom_rank = side.b1;
  c.ker_i_rank = 2 * side.genus - static_cast<int>(rank(side.embedding_free));
  c.h2_rank = (side.b2() - 1) + c.ker_i_rank;
  c.h2_torsion = c.h1.torsion();
  return c;
}

}  // namespace fsum
