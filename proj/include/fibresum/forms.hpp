#pragma once

// Intersection form of X in the splitting
//   H^2(X) = P(M) + P(N) + (S_1, R_1) + ... + (S_d, R_d) + (B_X, Sigma_X)
// and the canonical class of the symplectic sum in that basis. Only valid for
// indivisible surfaces and torsion-free homology; scope_gate() checks this.

#include "fibresum/abgroups.hpp"
#include "fibresum/engine.hpp"
#include "fibresum/errors.hpp"
#include "fibresum/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fsum {

struct ScopeReport {
  bool ok = true;
  std::vector<std::string> violations;
};

inline ScopeReport scope_gate(const FibreSumProblem& p) {
  ScopeReport r;
  auto side = [&](const ManifoldSide& s, const char* tag) {
    if (s.k != 1) r.violations.push_back(std::string("Sigma_") + tag + " divisible (k_" + tag + " = " + s.k.str() + ")");
    if (!s.h1_torsion.empty()) r.violations.push_back(std::string("H1(") + tag + ") torsion");
  };
  side(p.m, "M");
  side(p.n, "N");
  const AbGroup h1 = first_homology(p);
  if (!is_torsion_free(h1)) r.violations.push_back("H1(X) torsion (H1(X) = " + h1.to_string() + ")");
  r.ok = r.violations.empty();
  return r;
}

inline void require_scope(const FibreSumProblem& p) {
  auto gate = scope_gate(p);
  if (!gate.ok) throw ScopeError(std::move(gate.violations));
}

/// K_X = Kbar_M + Kbar_N + sum s_i S_i + sum r_i R_i + b B_X + sigma Sigma_X
///     = Kbar_M + Kbar_N + sum t_i R_i + b B_X + eta Sigma_X + eta' Sigma'_X
/// with Sigma'_X = Sigma_X + R_C and R_C = -sum a'_i R_i.
struct CanonicalClass {
  Int kbar_m_sq;
  std::optional<Int> kbar_m_div;
  Int kbar_n_sq;
  std::optional<Int> kbar_n_div;
  IntVector s_coeffs;
  IntVector r_coeffs;
  IntVector t_coeffs;
  Int b_coeff;
  Int sigma_coeff;
  Int eta;
  Int eta_prime;
};

inline CanonicalClass canonical_class(const FibreSumProblem& p) {
  require_scope(p);
  const KernelData kd = kernel_data(p);
  const Int b = 2 * p.genus() - 2;
  const auto& m = p.m;
  const auto& n = p.n;

  CanonicalClass cc;
  cc.kbar_m_sq = m.kbar_square();
  cc.kbar_n_sq = n.kbar_square();
  cc.kbar_m_div = m.kbar_divisibility;
  cc.kbar_n_div = n.kbar_divisibility;
  cc.b_coeff = b;
  cc.eta = m.k_dot_b + 1 - b * m.b_squared;
  cc.eta_prime = n.k_dot_b + 1 - b * n.b_squared;
  cc.sigma_coeff = m.k_dot_b + n.k_dot_b + 2 - b * (m.b_squared + n.b_squared);
  cc.t_coeffs = p.t;
  cc.s_coeffs.assign(static_cast<std::size_t>(kd.d), Int(0));
  for (int i = 0; i < kd.d; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    cc.r_coeffs.push_back(p.t[ui] - kd.a_adapted[ui] * cc.eta_prime);
  }

  if (cc.sigma_coeff != cc.eta + cc.eta_prime) throw InternalError("sigma_X != eta_X + eta'_X");
  return cc;
}

/// Value of a 2x2 block [[top_left, 1], [1, 0]] on coefficient pairs.
inline Int hyperbolic_pairing(const Int& top_left, const Int& x1, const Int& y1, const Int& x2, const Int& y2) {
  return top_left * x1 * x2 + x1 * y2 + y1 * x2;
}

struct CanonicalSquare {
  Int value;
  Int expected;
  bool pass = false;
};

/// K_X^2 evaluated block by block, compared with K_M^2 + K_N^2 + 8g - 8.
inline CanonicalSquare canonical_square(const CanonicalClass& cc, const FibreSumProblem& p) {
  const Int b_sq = p.m.b_squared + p.n.b_squared;
  Int value = cc.kbar_m_sq + cc.kbar_n_sq;
  for (std::size_t i = 0; i < cc.r_coeffs.size(); ++i) {
    // S_i^2 is not determined by the input; it only ever meets s_i = 0.
    if (cc.s_coeffs[i] != 0) throw InternalError("nonzero S_i coefficient in K_X");
    value += hyperbolic_pairing(0, cc.s_coeffs[i], cc.r_coeffs[i], cc.s_coeffs[i], cc.r_coeffs[i]);
  }
  value += hyperbolic_pairing(b_sq, cc.b_coeff, cc.sigma_coeff, cc.b_coeff, cc.sigma_coeff);
  const Int expected = p.m.k_squared + p.n.k_squared + 8 * p.genus() - 8;
  return CanonicalSquare{value, expected, value == expected};
}

struct PerpBlock {
  int rank = 0;
  int signature = 0;
  Parity parity = Parity::unknown;
  friend bool operator==(const PerpBlock&, const PerpBlock&) = default;
};

/// [[S_i^2, 1], [1, 0]] on Z S_i + Z R_i. Only S_i^2 mod 2 is determined.
struct PairBlock {
  int s_sq_parity = 0;
  friend bool operator==(const PairBlock&, const PairBlock&) = default;
};

/// [[B_M^2 + B_N^2, 1], [1, 0]] on Z B_X + Z Sigma_X.
struct NucleusBlock {
  Int b_sq;
  friend bool operator==(const NucleusBlock&, const NucleusBlock&) = default;
};

struct BlockForm {
  PerpBlock pm;
  PerpBlock pn;
  std::vector<PairBlock> pair_blocks;
  NucleusBlock nucleus;

  int total_rank() const { return pm.rank + pn.rank + 2 * static_cast<int>(pair_blocks.size()) + 2; }
  int total_signature() const { return pm.signature + pn.signature; }
  friend bool operator==(const BlockForm&, const BlockForm&) = default;
};

inline BlockForm assemble_intersection_form(const FibreSumProblem& p, const CanonicalClass& cc) {
  require_scope(p);
  BlockForm bf;
  bf.pm = PerpBlock{p.m.b2() - 2, p.m.signature(), p.m.p_parity};
  bf.pn = PerpBlock{p.n.b2() - 2, p.n.signature(), p.n.p_parity};
  // K_X is characteristic, so S_i^2 = K_X . S_i = r_i (mod 2).
  for (const auto& r : cc.r_coeffs) bf.pair_blocks.push_back(PairBlock{static_cast<int>(mod_nonneg(r, 2))});
  bf.nucleus.b_sq = p.m.b_squared + p.n.b_squared;

  const BettiNumbers betti = betti_numbers(p);
  if (bf.total_rank() != betti.b2) throw InternalError("block form rank != b2(X)");
  if (bf.total_signature() != betti.sigma) throw InternalError("block form signature != sigma(X)");
  return bf;
}

enum class FormKind { odd_indefinite, even_indefinite, definite };

struct FormClass {
  int rank = 0;
  int signature = 0;
  Parity parity = Parity::unknown;
  FormKind kind = FormKind::definite;
  int plus_ones = 0;   // odd: p<+1>
  int minus_ones = 0;  // odd: q<-1>
  int hyperbolic = 0;  // even: aH
  int e8 = 0;          // even: b E8(+-1)
  int e8_sign = -1;

  /// "odd 7<+1> + 39<-1>", "even 7H + 4E8(-1)", "even H".
  std::string to_string() const {
    if (kind == FormKind::definite) return "definite: classification out of scope";
    auto count = [](int c, const std::string& sym) { return (c == 1 ? std::string() : std::to_string(c)) + sym; };
    std::vector<std::string> parts;
    if (kind == FormKind::odd_indefinite) {
      if (plus_ones) parts.push_back(count(plus_ones, "<+1>"));
      if (minus_ones) parts.push_back(count(minus_ones, "<-1>"));
    } else {
      if (hyperbolic) parts.push_back(count(hyperbolic, "H"));
      if (e8) parts.push_back(count(e8, e8_sign < 0 ? "E8(-1)" : "E8"));
    }
    std::string s = fsum::to_string(parity);
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " + " : " ") + parts[i];
    return s;
  }
};

inline FormClass classify_form(const BlockForm& bf, const CanonicalClass& cc) {
  if (bf.pm.parity == Parity::unknown || bf.pn.parity == Parity::unknown)
    throw ClassificationError("p_parity unknown: form parity cannot be decided");
  // K_X . B_X = b B_X^2 + sigma must agree with B_X^2 mod 2.
  const Int kx_bx = cc.b_coeff * bf.nucleus.b_sq + cc.sigma_coeff;
  if (mod_nonneg(kx_bx - bf.nucleus.b_sq, 2) != 0)
    throw InternalError("K_X . B_X and B_X^2 differ mod 2; K_X not characteristic");

  bool even = bf.pm.parity == Parity::even && bf.pn.parity == Parity::even && mod_nonneg(bf.nucleus.b_sq, 2) == 0;
  for (const auto& pb : bf.pair_blocks) even = even && pb.s_sq_parity == 0;

  FormClass fc;
  fc.rank = bf.total_rank();
  fc.signature = bf.total_signature();
  fc.parity = even ? Parity::even : Parity::odd;
  const int plus = (fc.rank + fc.signature) / 2;
  const int minus = (fc.rank - fc.signature) / 2;
  if (plus == 0 || minus == 0) {
    fc.kind = FormKind::definite;
    return fc;
  }
  if (!even) {
    fc.kind = FormKind::odd_indefinite;
    fc.plus_ones = plus;
    fc.minus_ones = minus;
    return fc;
  }
  if (fc.signature % 8 != 0)
    throw ClassificationError("even form with signature " + std::to_string(fc.signature) +
                              " not divisible by 8: inconsistent input");
  fc.kind = FormKind::even_indefinite;
  fc.e8 = (fc.signature < 0 ? -fc.signature : fc.signature) / 8;
  fc.e8_sign = fc.signature < 0 ? -1 : 1;
  fc.hyperbolic = (fc.rank - 8 * fc.e8) / 2;
  return fc;
}

struct Divisibility {
  Int value;
  /// False when a Kbar divisibility is unknown; value is then only a
  /// multiple of the true divisibility.
  bool exact = false;
};

inline Divisibility divisibility(const CanonicalClass& cc) {
  Int g = 0;
  if (cc.kbar_m_div) g = gcd(g, *cc.kbar_m_div);
  if (cc.kbar_n_div) g = gcd(g, *cc.kbar_n_div);
  for (const auto& r : cc.r_coeffs) g = gcd(g, r);
  g = gcd(g, cc.b_coeff);
  g = gcd(g, cc.sigma_coeff);
  return Divisibility{g, cc.kbar_m_div.has_value() && cc.kbar_n_div.has_value()};
}

struct IdentityCheck {
  std::string name;
  Int lhs;
  Int rhs;
  bool pass = false;
};

/// K_X . B_X, K_X . Sigma_X and K_X . R_i from the block pairings, against
/// K_M.B_M + K_N.B_N + 2, 2g - 2 and 0.
inline std::vector<IdentityCheck> ionel_parker_checks(const FibreSumProblem& p, const CanonicalClass& cc) {
  const Int b_sq = p.m.b_squared + p.n.b_squared;
  std::vector<IdentityCheck> out;
  auto add = [&](std::string name, Int lhs, Int rhs) {
    const bool ok = lhs == rhs;
    out.push_back(IdentityCheck{std::move(name), std::move(lhs), std::move(rhs), ok});
  };
  add("K_X.B_X = K_M.B_M + K_N.B_N + 2", hyperbolic_pairing(b_sq, cc.b_coeff, cc.sigma_coeff, 1, 0),
      p.m.k_dot_b + p.n.k_dot_b + 2);
  add("K_X.Sigma_X = 2g - 2", hyperbolic_pairing(b_sq, cc.b_coeff, cc.sigma_coeff, 0, 1), Int(2 * p.genus() - 2));
  for (std::size_t i = 0; i < cc.s_coeffs.size(); ++i) {
    // The S_i^2 entry never contributes when pairing with R_i = (0, 1).
    add("K_X.R_" + std::to_string(i + 1) + " = 0", hyperbolic_pairing(0, cc.s_coeffs[i], cc.r_coeffs[i], 0, 1), Int(0));
  }
  return out;
}

enum class Summand { m, n };

/// A class alpha in H^2(M) (or H^2(N)) given by its perpendicular part and
/// its pairings with Sigma and B.
struct SideClass {
  std::optional<Int> pbar_div;
  Int c_sigma;  // alpha . Sigma_M
  Int c_b;      // alpha . B_M
};

struct EmbeddedClass {
  std::optional<Int> pbar_div;
  Int b_coeff;
  /// Coefficient of Sigma_X for side M, of Sigma'_X for side N.
  Int sigma_coeff;
  bool on_sigma_prime = false;
  /// Rim coefficients after rewriting Sigma'_X = Sigma_X - sum a'_i R_i.
  IntVector rim_coeffs;
};

/// alpha -> alphabar + (alpha.Sigma) B_X + (alpha.B - B^2 (alpha.Sigma)) Sigma_X,
/// with Sigma'_X in place of Sigma_X for side N.
inline EmbeddedClass embed_h2(const FibreSumProblem& p, const SideClass& cls, Summand side) {
  require_scope(p);
  const ManifoldSide& s = side == Summand::m ? p.m : p.n;
  EmbeddedClass e;
  e.pbar_div = cls.pbar_div;
  e.b_coeff = cls.c_sigma;
  e.sigma_coeff = cls.c_b - s.b_squared * cls.c_sigma;
  e.on_sigma_prime = side == Summand::n;
  const KernelData kd = kernel_data(p);
  for (const auto& ai : kd.a_adapted) e.rim_coeffs.push_back(e.on_sigma_prime ? Int(-ai * e.sigma_coeff) : Int(0));
  return e;
}

}  // namespace fsum
