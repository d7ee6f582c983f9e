#pragma once

#include "fibresum/integer.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fsum {

/// Finitely generated abelian group Z^r + Z/t1 + ... + Z/tk in invariant-factor
/// normal form: every t_i >= 2 and t_i divides t_{i+1}.
class AbGroup {
 public:
  AbGroup() = default;

  /// Throws std::invalid_argument unless `torsion` is already a divisibility
  /// chain of factors >= 2.
  explicit AbGroup(std::size_t free_rank, std::vector<Int> torsion = {})
      : free_rank_(free_rank), torsion_(std::move(torsion)) {
    if (!is_normal_form(torsion_)) {
      throw std::invalid_argument("torsion " + render_list(torsion_) +
                                  " is not an invariant-factor chain");
    }
  }

  /// Normalizes Z^free + (+)_i Z/orders[i]. An order of 0 contributes a free
  /// summand, an order of 1 (or -1) contributes nothing.
  static AbGroup from_cyclic_orders(std::size_t free_rank, std::span<const Int> orders);

  static bool is_normal_form(std::span<const Int> torsion) {
    for (std::size_t i = 0; i < torsion.size(); ++i) {
      if (torsion[i] < 2) return false;
      if (i > 0 && torsion[i] % torsion[i - 1] != 0) return false;
    }
    return true;
  }

  std::size_t free_rank() const noexcept { return free_rank_; }
  const std::vector<Int>& torsion() const noexcept { return torsion_; }
  bool is_trivial() const noexcept { return free_rank_ == 0 && torsion_.empty(); }

  /// "Z^3 + Z/2 + Z/6"; the trivial group renders as "0".
  std::string to_string() const {
    if (is_trivial()) return "0";
    std::string out;
    if (free_rank_ == 1) out = "Z";
    if (free_rank_ > 1) out = "Z^" + std::to_string(free_rank_);
    for (const auto& t : torsion_) {
      if (!out.empty()) out += " + ";
      out += "Z/" + t.str();
    }
    return out;
  }

  friend bool operator==(const AbGroup&, const AbGroup&) = default;

 private:
  static std::string render_list(std::span<const Int> v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
    return s + "]";
  }

  std::size_t free_rank_ = 0;
  std::vector<Int> torsion_;
};

namespace detail {

/// Prime-power factorization by trial division; n >= 2.
inline std::map<Int, unsigned> factor(Int n) {
  std::map<Int, unsigned> out;
  for (Int p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

inline Int power(const Int& base, unsigned e) {
  Int r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace detail

inline AbGroup AbGroup::from_cyclic_orders(std::size_t free_rank, std::span<const Int> orders) {
  // Regroup through the primary decomposition: for each prime, sort the
  // exponents descending; the i-th largest invariant factor collects the
  // i-th largest power of every prime.
  std::map<Int, std::vector<unsigned>> primary;
  for (const auto& raw : orders) {
    Int order = abs_value(raw);
    if (order == 0) {
      ++free_rank;
      continue;
    }
    if (order == 1) continue;
    for (const auto& [p, e] : detail::factor(order)) primary[p].push_back(e);
  }
  std::size_t length = 0;
  for (auto& [p, exps] : primary) {
    std::sort(exps.begin(), exps.end(), std::greater<>());
    length = std::max(length, exps.size());
  }
  std::vector<Int> chain(length, Int(1));
  for (const auto& [p, exps] : primary) {
    for (std::size_t i = 0; i < exps.size(); ++i) chain[length - 1 - i] *= detail::power(p, exps[i]);
  }
  return AbGroup(free_rank, std::move(chain));
}

inline AbGroup direct_sum(const AbGroup& g, const AbGroup& h) {
  std::vector<Int> orders = g.torsion();
  orders.insert(orders.end(), h.torsion().begin(), h.torsion().end());
  return AbGroup::from_cyclic_orders(g.free_rank() + h.free_rank(), orders);
}

/// Both operands carry normal forms by construction, so isomorphism is
/// component-wise equality.
inline bool is_isomorphic(const AbGroup& g, const AbGroup& h) { return g == h; }

inline bool is_torsion_free(const AbGroup& g) { return g.torsion().empty(); }

}  // namespace fsum
