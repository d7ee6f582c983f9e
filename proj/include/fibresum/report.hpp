#pragma once

// Full pipeline report for one problem, as structured JSON and as text
// rendered from that JSON.

#include "fibresum/engine.hpp"
#include "fibresum/errors.hpp"
#include "fibresum/forms.hpp"
#include "fibresum/model.hpp"
#include "fibresum/model_json.hpp"

#include <sstream>
#include <string>

namespace fsum {

struct ReportOptions {
  bool forms = true;
};

namespace detail {

inline Json check_json(const std::string& name, const Int& lhs, const Int& rhs) {
  return Json{{"name", name}, {"lhs", int_to_json(lhs)}, {"rhs", int_to_json(rhs)}, {"pass", lhs == rhs}};
}

inline Json optional_int_json(const std::optional<Int>& x) { return x ? int_to_json(*x) : Json("unknown"); }

inline Json forms_section(const FibreSumProblem& p, std::vector<std::string>& warnings, bool& all_pass) {
  Json f;
  const ScopeReport gate = scope_gate(p);
  if (!gate.ok) {
    f["status"] = "gated";
    f["violations"] = gate.violations;
    return f;
  }
  f["status"] = "ok";
  const CanonicalClass cc = canonical_class(p);
  const BlockForm bf = assemble_intersection_form(p, cc);

  Json blocks;
  auto perp = [](const PerpBlock& b) {
    return Json{{"rank", b.rank}, {"signature", b.signature}, {"parity", to_string(b.parity)}};
  };
  blocks["P_M"] = perp(bf.pm);
  blocks["P_N"] = perp(bf.pn);
  Json pairs = Json::array();
  for (const auto& pb : bf.pair_blocks) pairs.push_back(pb.s_sq_parity);
  blocks["S_sq_parity"] = std::move(pairs);
  blocks["B_X_sq"] = int_to_json(bf.nucleus.b_sq);
  blocks["rank"] = bf.total_rank();
  blocks["signature"] = bf.total_signature();
  f["block_form"] = std::move(blocks);

  try {
    f["form_class"] = classify_form(bf, cc).to_string();
  } catch (const ClassificationError& e) {
    f["form_class"] = std::string("unavailable: ") + e.what();
  }

  Json k;
  k["Kbar_M_sq"] = int_to_json(cc.kbar_m_sq);
  k["Kbar_M_div"] = optional_int_json(cc.kbar_m_div);
  k["Kbar_N_sq"] = int_to_json(cc.kbar_n_sq);
  k["Kbar_N_div"] = optional_int_json(cc.kbar_n_div);
  k["sigma_basis"] = Json{{"s", vector_to_json(cc.s_coeffs)},
                          {"r", vector_to_json(cc.r_coeffs)},
                          {"b", int_to_json(cc.b_coeff)},
                          {"sigma", int_to_json(cc.sigma_coeff)}};
  k["symmetric_basis"] = Json{{"t", vector_to_json(cc.t_coeffs)},
                              {"b", int_to_json(cc.b_coeff)},
                              {"eta", int_to_json(cc.eta)},
                              {"eta_prime", int_to_json(cc.eta_prime)}};
  f["canonical_class"] = std::move(k);

  const Divisibility dv = divisibility(cc);
  std::string summary = dv.value == 1 ? std::string("K_X indivisible") : "divisibility " + dv.value.str();
  if (!dv.exact) {
    summary += " (upper bound: a Kbar divisibility is unknown)";
    warnings.push_back("divisibility of K_X is a necessary-condition bound because kbar_divisibility is unknown");
  }
  f["divisibility"] = Json{{"value", int_to_json(dv.value)}, {"exact", dv.exact}, {"summary", summary}};

  Json checks = Json::array();
  const CanonicalSquare sq = canonical_square(cc, p);
  checks.push_back(check_json("K_X^2 = K_M^2 + K_N^2 + 8g - 8", sq.value, sq.expected));
  all_pass = all_pass && sq.pass;
  for (const auto& c : ionel_parker_checks(p, cc)) {
    checks.push_back(check_json(c.name, c.lhs, c.rhs));
    all_pass = all_pass && c.pass;
  }
  f["checks"] = std::move(checks);
  return f;
}

}  // namespace detail

struct Report {
  Json data;
  /// False if any internal cross-check failed.
  bool checks_pass = true;
};

inline Report build_report(const FibreSumProblem& p, const ReportOptions& opts = {}) {
  Report rep;
  Json& j = rep.data;
  std::vector<std::string> warnings;

  j["problem"] = problem_to_json(p);

  const KernelData kd = kernel_data(p);
  Json basis = Json::array();
  for (const auto& v : kd.alpha_basis.vectors) basis.push_back(vector_to_json(v));
  j["kernel"] = Json{{"d", kd.d}, {"alpha_basis", std::move(basis)}, {"a_adapted", vector_to_json(kd.a_adapted)},
                     {"t", vector_to_json(p.t)}, {"t_defaulted", p.t_defaulted}};
  if (p.t_defaulted && kd.d > 0)
    warnings.push_back("t defaulted to 0: exact only when the alpha_i bound vanishing disks of cusp "
                       "neighbourhoods on both sides (K_M.D_i^M - K_N.D_i^N = 0)");

  const BettiNumbers b = betti_numbers(p);
  j["betti"] = Json{{"b0", b.b0}, {"b1", b.b1}, {"b2", b.b2}, {"b3", b.b3}, {"b4", b.b4}, {"b2_plus", b.b2_plus},
                    {"b2_minus", b.b2_minus}, {"e", b.e}, {"sigma", b.sigma}, {"d", b.d}};

  const AbGroup h1 = first_homology(p);
  const int h1_cohom = first_cohomology_rank(p);
  const AbGroup rim = rim_tori_group(p);
  j["homology"] = Json{{"H1", h1.to_string()}, {"H1_free_rank", h1.free_rank()}, {"H1_torsion", vector_to_json(h1.torsion())},
                       {"H1_cohomology_rank", h1_cohom}, {"rim_tori", rim.to_string()}};

  const SplitClassBasis sb = split_class_basis(p);
  Json split = Json::array();
  for (const auto& s : sb.classes)
    split.push_back(Json{{"label", s.label}, {"x_M", int_to_json(s.x_m)}, {"x_N", int_to_json(s.x_n)},
                         {"alpha", vector_to_json(s.alpha_coeffs)}});
  j["split_classes"] = std::move(split);

  auto comp = [](const ComplementInvariants& c) {
    return Json{{"H1", c.h1.to_string()}, {"H1_cohomology_rank", c.h1_cohom_rank}, {"H2_rank", c.h2_rank},
                {"H2_torsion", vector_to_json(c.h2_torsion)}, {"ker_i_rank", c.ker_i_rank}};
  };
  j["complements"] = Json{{"M", comp(complement_invariants(p.m))}, {"N", comp(complement_invariants(p.n))}};
  j["phi_action"] = Json{{"H1", matrix_to_json(phi_action_h1(p.genus(), p.gluing.a))},
                         {"H2", matrix_to_json(phi_action_h2(p.genus(), p.gluing.a))}};

  Json checks = Json::array();
  const int split_rank = (b.d + 1) + (b.d + 1) + (p.m.b2() - 2) + (p.n.b2() - 2);
  checks.push_back(detail::check_json("b2 from H2 splitting = b2 from Betti formula", split_rank, b.b2));
  checks.push_back(detail::check_json("rank H^1(X) = b1", h1_cohom, b.b1));
  checks.push_back(detail::check_json("rank R(X) = d", static_cast<int>(rim.free_rank()), b.d));
  for (const auto& c : checks) rep.checks_pass = rep.checks_pass && c["pass"].get<bool>();
  j["checks"] = std::move(checks);

  if (opts.forms) {
    j["forms"] = detail::forms_section(p, warnings, rep.checks_pass);
    if (j["forms"]["status"] == "gated") warnings.push_back("forms skipped: problem outside the torsion-free, indivisible scope");
  } else {
    j["forms"] = Json{{"status", "skipped"}};
  }
  j["warnings"] = warnings;
  return rep;
}

namespace detail {

inline bool is_scalar_array(const Json& j) {
  for (const auto& x : j)
    if (x.is_structured()) return false;
  return true;
}

inline std::string inline_json(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "yes" : "no";
  if (j.is_array()) {
    std::string s = "[";
    bool first = true;
    for (const auto& x : j) {
      s += (first ? "" : ", ") + inline_json(x);
      first = false;
    }
    return s + "]";
  }
  return j.dump();
}

inline void render_text(const Json& j, std::ostream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    if (v.is_object()) {
      os << pad << it.key() << ":\n";
      render_text(v, os, indent + 2);
    } else if (v.is_array() && !v.empty() && !is_scalar_array(v) && v.front().is_object()) {
      os << pad << it.key() << ":\n";
      for (const auto& item : v) {
        os << pad << "  -\n";
        render_text(item, os, indent + 4);
      }
    } else {
      os << pad << it.key() << ": " << inline_json(v) << "\n";
    }
  }
}

}  // namespace detail

/// Indented key: value rendering of a structured report; every leaf of the
/// JSON appears on the line of its key.
inline std::string render_text(const Json& report) {
  std::ostringstream os;
  detail::render_text(report, os, 0);
  return os.str();
}

}  // namespace fsum
