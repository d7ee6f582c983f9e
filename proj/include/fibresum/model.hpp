#pragma once

// Fibre-sum problem data: the two summands, the gluing class and the optional
// t-vector, with validation and the elliptic-surface catalog.

#include "fibresum/errors.hpp"
#include "fibresum/integer.hpp"
#include "fibresum/intlat.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace fsum {

enum class Parity { even, odd, unknown };

inline std::string to_string(Parity p) {
  switch (p) {
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    case Parity::unknown: break;
  }
  return "unknown";
}

/// Image of H_1(Sigma) in one cyclic torsion summand Z/modulus of H_1(M).
struct TorsionEmbeddingRow {
  Int modulus;
  IntVector row;
  friend bool operator==(const TorsionEmbeddingRow&, const TorsionEmbeddingRow&) = default;
};

/// One summand M of the fibre sum together with the embedded surface
/// Sigma_M, a dual class B_M (B_M . Sigma_M = 1) and the canonical class K_M.
///
/// K_M . Sigma_M is not stored: the adjunction formula fixes it at 2g - 2.
struct ManifoldSide {
  std::string name;
  int b1 = 0;
  std::vector<Int> h1_torsion;
  int b2_plus = 0;
  int b2_minus = 0;
  Int k_squared = 0;
  Int k_dot_b = 0;
  Int b_squared = 0;
  int genus = 0;
  /// Divisibility of [Sigma_M] in H_2(M).
  Int k = 1;
  /// b1 x 2g matrix of H_1(Sigma) -> free part of H_1(M), columns gamma_1..gamma_2g.
  IntMatrix embedding_free;
  /// Either empty (zero map into torsion) or one row per factor of h1_torsion.
  std::vector<TorsionEmbeddingRow> embedding_torsion;
  Parity p_parity = Parity::unknown;
  /// Divisibility of Kbar_M in P(M); 0 means Kbar_M = 0, nullopt means unknown.
  std::optional<Int> kbar_divisibility;

  int b2() const { return b2_plus + b2_minus; }
  int signature() const { return b2_plus - b2_minus; }
  int euler() const { return 2 - 2 * b1 + b2(); }

  /// Kbar_M^2 = K^2 - (4g-4) K.B + (2g-2)^2 B^2, the square of the component
  /// of K_M perpendicular to B_M and Sigma_M.
  Int kbar_square() const {
    const Int b = 2 * genus - 2;
    return k_squared - 2 * b * k_dot_b + b * b * b_squared;
  }

  friend bool operator==(const ManifoldSide&, const ManifoldSide&) = default;
};

struct GluingClass {
  /// a_i = <C, gamma_i>, length 2g.
  IntVector a;
  friend bool operator==(const GluingClass&, const GluingClass&) = default;
};

struct FibreSumProblem {
  ManifoldSide m;
  ManifoldSide n;
  GluingClass gluing;
  /// t_i = K_M . D_i^M - K_N . D_i^N in the alpha-basis order; length d.
  IntVector t;
  /// True when t was not supplied and was set to zero.
  bool t_defaulted = false;

  int genus() const { return m.genus; }
  friend bool operator==(const FibreSumProblem&, const FibreSumProblem&) = default;
};

struct BettiNumbers {
  int b0 = 1, b1 = 0, b2 = 0, b3 = 0, b4 = 1;
  int b2_plus = 0, b2_minus = 0;
  int e = 0;
  int sigma = 0;
  int d = 0;
  friend bool operator==(const BettiNumbers&, const BettiNumbers&) = default;
};

/// Stacked free parts of i_M and i_N: (b1(M) + b1(N)) x 2g.
inline IntMatrix stacked_free_embedding(const ManifoldSide& m, const ManifoldSide& n) {
  return vstack(m.embedding_free, n.embedding_free);
}

/// d = dim ker(i_M + i_N) over the reals.
inline int kernel_dimension(const ManifoldSide& m, const ManifoldSide& n) {
  const IntMatrix s = stacked_free_embedding(m, n);
  return static_cast<int>(s.cols() - rank(s));
}

/// Every violated side invariant; empty iff the side is valid.
inline std::vector<std::string> validate_side(const ManifoldSide& side) {
  std::vector<std::string> v;
  const std::string who = side.name.empty() ? std::string("side") : side.name;
  auto fail = [&](const std::string& msg) { v.push_back(who + ": " + msg); };

  if (side.b1 < 0 || side.b2_plus < 0 || side.b2_minus < 0 || side.genus < 0) {
    fail("counts b1, b2_plus, b2_minus, genus must be non-negative");
    return v;
  }
  if (side.b2() < 2) fail("b2 >= 2 violated (Sigma_M and B_M must exist), got b2 = " + std::to_string(side.b2()));
  if (side.b2_plus < 1 || side.b2_minus < 1)
    fail("b2_plus >= 1 and b2_minus >= 1 required (the block on B_M, Sigma_M is indefinite)");

  const Int expected_k2 = 2 * side.euler() + 3 * side.signature();
  if (side.k_squared != expected_k2)
    fail("K^2 != 2e+3sigma (needs " + expected_k2.str() + ", got " + side.k_squared.str() + ")");
  if ((side.b1 + side.b2_plus) % 2 == 0)
    fail("b1 + b2_plus must be odd for a characteristic K with K^2 = 2e+3sigma");
  if (mod_nonneg(side.k_dot_b - side.b_squared, 2) != 0)
    fail("K.B and B^2 must have the same parity (K is characteristic)");

  if (side.k < 1) fail("k must be a positive integer, got " + side.k.str());
  if (!AbGroup::is_normal_form(side.h1_torsion))
    fail("h1_torsion must be an invariant-factor chain of integers >= 2");

  const std::size_t two_g = 2 * static_cast<std::size_t>(side.genus);
  if (side.embedding_free.rows() != static_cast<std::size_t>(side.b1) || side.embedding_free.cols() != two_g)
    fail("embedding_free must be b1 x 2g = " + std::to_string(side.b1) + " x " + std::to_string(two_g) +
         ", got " + std::to_string(side.embedding_free.rows()) + " x " +
         std::to_string(side.embedding_free.cols()));
  if (!side.embedding_torsion.empty()) {
    if (side.embedding_torsion.size() != side.h1_torsion.size()) {
      fail("embedding_torsion needs one row per h1_torsion factor");
    } else {
      for (std::size_t i = 0; i < side.embedding_torsion.size(); ++i) {
        const auto& tr = side.embedding_torsion[i];
        if (tr.modulus != side.h1_torsion[i])
          fail("embedding_torsion[" + std::to_string(i) + "].modulus must equal h1_torsion[" + std::to_string(i) + "]");
        if (tr.row.size() != two_g)
          fail("embedding_torsion[" + std::to_string(i) + "].row must have length 2g = " + std::to_string(two_g));
      }
    }
  }

  // P(M) is unimodular of rank b2 - 2 and Kbar_M is characteristic for it.
  const int p_rank = side.b2() - 2;
  const Int kbar_sq = side.kbar_square();
  if (p_rank == 0 && side.p_parity == Parity::odd) fail("p_parity odd impossible when P(M) has rank 0");
  if (p_rank == 0 && kbar_sq != 0) fail("Kbar^2 must be 0 when P(M) has rank 0, got " + kbar_sq.str());
  if (side.p_parity == Parity::even && side.signature() % 8 != 0)
    fail("p_parity even requires signature divisible by 8");
  if (side.kbar_divisibility) {
    const Int& kd = *side.kbar_divisibility;
    if (kd < 0) {
      fail("kbar_divisibility must be non-negative");
    } else {
      if (kd == 0 && kbar_sq != 0) fail("kbar_divisibility 0 (Kbar = 0) requires Kbar^2 = 0, got " + kbar_sq.str());
      if (kd > 0 && kbar_sq % (kd * kd) != 0)
        fail("kbar_divisibility " + kd.str() + " must have its square dividing Kbar^2 = " + kbar_sq.str());
      if (p_rank == 0 && kd != 0) fail("kbar_divisibility must be 0 when P(M) has rank 0");
      if (side.p_parity != Parity::unknown) {
        const bool kd_even = kd % 2 == 0;
        if (kd_even != (side.p_parity == Parity::even))
          fail("kbar_divisibility parity must match p_parity (Kbar characteristic on P(M))");
      }
    }
  }
  return v;
}

/// The elliptic surface E(n) with a general fibre as Sigma and the section
/// sphere of the nucleus N(n) as B.
inline ManifoldSide elliptic_surface(int n) {
  if (n < 1) throw ValidationError("catalog E(n) requires n >= 1, got " + std::to_string(n));
  ManifoldSide s;
  s.name = "E(" + std::to_string(n) + ")";
  s.b1 = 0;
  s.b2_plus = 2 * n - 1;
  s.b2_minus = 10 * n - 1;
  s.k_squared = 0;
  s.k_dot_b = n - 2;
  s.b_squared = -n;
  s.genus = 1;
  s.k = 1;
  s.embedding_free = IntMatrix(0, 2);
  s.p_parity = Parity::even;
  // K = (n-2)T, so the perpendicular component vanishes.
  s.kbar_divisibility = Int(0);
  return s;
}

/// Problem-level violations, including those of both sides.
inline std::vector<std::string> validate_problem(const FibreSumProblem& p) {
  std::vector<std::string> v = validate_side(p.m);
  auto vn = validate_side(p.n);
  v.insert(v.end(), vn.begin(), vn.end());
  if (!v.empty()) return v;
  if (p.m.genus != p.n.genus) {
    v.push_back("genus mismatch: M has g = " + std::to_string(p.m.genus) + ", N has g = " + std::to_string(p.n.genus));
    return v;
  }
  const std::size_t two_g = 2 * static_cast<std::size_t>(p.genus());
  if (p.gluing.a.size() != two_g)
    v.push_back("gluing.a must have length 2g = " + std::to_string(two_g) + ", got " +
                std::to_string(p.gluing.a.size()));
  const int d = kernel_dimension(p.m, p.n);
  if (p.t.size() != static_cast<std::size_t>(d))
    v.push_back("t must have length d = " + std::to_string(d) + ", got " + std::to_string(p.t.size()));
  return v;
}

/// Assembles a problem, defaulting t to zeros of length d, and throws
/// ValidationError listing every violation.
inline FibreSumProblem make_problem(ManifoldSide m, ManifoldSide n, IntVector a,
                                    std::optional<IntVector> t = std::nullopt) {
  FibreSumProblem p{std::move(m), std::move(n), GluingClass{std::move(a)}, {}, !t.has_value()};
  auto v = validate_side(p.m);
  auto vn = validate_side(p.n);
  v.insert(v.end(), vn.begin(), vn.end());
  if (!v.empty()) throw ValidationError(std::move(v));
  if (t) {
    p.t = std::move(*t);
  } else if (p.m.genus == p.n.genus) {
    p.t.assign(static_cast<std::size_t>(kernel_dimension(p.m, p.n)), Int(0));
  }
  v = validate_problem(p);
  if (!v.empty()) throw ValidationError(std::move(v));
  return p;
}

}  // namespace fsum
