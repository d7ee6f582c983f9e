#pragma once

// Command implementations behind the fibresum tool. Each returns the process
// exit code: 0 ok, 1 I/O failure, 2 validation failure, 3 internal check.

#include "fibresum/errors.hpp"
#include "fibresum/intlat.hpp"
#include "fibresum/model_json.hpp"
#include "fibresum/report.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fsum::cli {

enum ExitCode : int { ok = 0, io_failure = 1, validation_failure = 2, internal_failure = 3 };

enum class Format { text, json };

struct Options {
  Format format = Format::text;
  bool forms = true;
  std::optional<IntVector> t_override;
};

/// "1,-2,3" -> {1, -2, 3}; the empty string is the empty vector.
inline IntVector parse_int_list(const std::string& s) {
  IntVector out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw ValidationError("--t: empty entry in '" + s + "'");
    Json tok = item.substr(b, e - b + 1);
    out.push_back(detail::json_to_int(tok, "--t"));
  }
  return out;
}

inline std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void emit(const Json& j, Format f, std::ostream& out) {
  if (f == Format::json) out << j.dump(2) << "\n";
  else out << render_text(j);
}

struct ComputeResult {
  int code = ok;
  Json report;
  std::string error;
};

/// Parse, validate and run the full pipeline on one document.
inline ComputeResult compute_document(const Json& doc, const Options& opts) {
  ComputeResult r;
  try {
    const FibreSumProblem p = parse_problem(doc, opts.t_override);
    Report rep = build_report(p, ReportOptions{opts.forms});
    r.report = std::move(rep.data);
    if (!rep.checks_pass) {
      r.code = internal_failure;
      r.error = "internal cross-check failed";
    }
  } catch (const ValidationError& e) {
    r.code = validation_failure;
    r.error = e.what();
    r.report = Json{{"violations", e.violations()}};
  } catch (const InternalError& e) {
    r.code = internal_failure;
    r.error = std::string("internal assertion: ") + e.what();
  }
  return r;
}

inline int run_compute(const std::string& path, const Options& opts, std::ostream& out, std::ostream& err) {
  const auto text = read_file(path);
  if (!text) {
    err << "error: cannot read " << path << "\n";
    return io_failure;
  }
  Json doc;
  try {
    doc = Json::parse(*text);
  } catch (const Json::parse_error& e) {
    err << "error: document: malformed JSON (" << e.what() << ")\n";
    return validation_failure;
  }
  ComputeResult r = compute_document(doc, opts);
  if (r.code == validation_failure) {
    err << "validation failed:\n";
    for (const auto& v : r.report["violations"]) err << "  - " << v.get<std::string>() << "\n";
    return r.code;
  }
  if (!r.report.is_null()) emit(r.report, opts.format, out);
  if (r.code != ok) err << "error: " << r.error << "\n";
  return r.code;
}

inline int run_validate(const std::string& path, const Options& opts, std::ostream& out, std::ostream& err) {
  const auto text = read_file(path);
  if (!text) {
    err << "error: cannot read " << path << "\n";
    return io_failure;
  }
  try {
    const FibreSumProblem p = parse_problem(*text, opts.t_override);
    const ScopeReport gate = scope_gate(p);
    if (opts.format == Format::json) {
      out << Json{{"valid", true}, {"forms_in_scope", gate.ok}, {"scope_violations", gate.violations}}.dump(2) << "\n";
    } else {
      out << "valid\n";
      if (!gate.ok)
        for (const auto& v : gate.violations) out << "forms out of scope: " << v << "\n";
    }
    return ok;
  } catch (const ValidationError& e) {
    if (opts.format == Format::json) {
      out << Json{{"valid", false}, {"violations", e.violations()}}.dump(2) << "\n";
    } else {
      out << "invalid\n";
      for (const auto& v : e.violations()) out << "  - " << v << "\n";
    }
    return validation_failure;
  }
}

inline int run_catalog(const std::string& name, const std::string& n_text, std::ostream& out, std::ostream& err) {
  if (name != "E") {
    err << "error: unknown catalog entry '" << name << "' (supported: E)\n";
    return validation_failure;
  }
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(n_text, &used);
    if (used != n_text.size()) throw std::invalid_argument(n_text);
  } catch (const std::exception&) {
    err << "error: catalog E expects an integer n, got '" << n_text << "'\n";
    return validation_failure;
  }
  try {
    out << side_to_json(elliptic_surface(n)).dump(2) << "\n";
    return ok;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return validation_failure;
  }
}

/// Runs every item (in parallel) and assembles results in input order.
inline Json batch_results(const Json& items, const Options& opts, bool& any_failed) {
  const std::size_t count = items.size();
  std::vector<ComputeResult> results(count);
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(count, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < count; i += workers) results[i] = compute_document(items[i], opts);
    }));
  }
  for (auto& f : pool) f.get();

  any_failed = false;
  Json out = Json::array();
  for (std::size_t i = 0; i < count; ++i) {
    Json item{{"index", i}};
    if (results[i].code == ok) {
      item["status"] = "ok";
      item["report"] = std::move(results[i].report);
    } else {
      any_failed = true;
      item["status"] = "error";
      item["exit_code"] = results[i].code;
      item["error"] = results[i].error;
    }
    out.push_back(std::move(item));
  }
  return out;
}

inline int run_batch(const std::string& path, const Options& opts, std::ostream& out, std::ostream& err) {
  const auto text = read_file(path);
  if (!text) {
    err << "error: cannot read " << path << "\n";
    return io_failure;
  }
  Json doc;
  try {
    doc = Json::parse(*text);
  } catch (const Json::parse_error& e) {
    err << "error: batch: malformed JSON (" << e.what() << ")\n";
    return validation_failure;
  }
  const Json* items = &doc;
  if (doc.is_object() && doc.contains("problems")) items = &doc["problems"];
  if (!items->is_array()) {
    err << "error: batch: expected an array of problems or {\"problems\": [...]}\n";
    return validation_failure;
  }
  bool any_failed = false;
  Json results = batch_results(*items, opts, any_failed);
  if (opts.format == Format::json) {
    out << Json{{"results", results}}.dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      out << "#" << r["index"].get<std::size_t>() << " ";
      if (r["status"] == "error") {
        out << "error: " << r["error"].get<std::string>() << "\n";
        continue;
      }
      const Json& rep = r["report"];
      out << "b1=" << rep["betti"]["b1"] << " b2=" << rep["betti"]["b2"] << " sigma=" << rep["betti"]["sigma"]
          << " H1=" << rep["homology"]["H1"].get<std::string>();
      const Json& f = rep["forms"];
      if (f["status"] == "ok") {
        out << " divisibility=" << f["divisibility"]["value"] << " form=" << f["form_class"].get<std::string>();
      } else {
        out << " forms=" << f["status"].get<std::string>();
      }
      out << "\n";
    }
  }
  return any_failed ? validation_failure : ok;
}

inline IntMatrix parse_matrix_document(const Json& doc) {
  const Json* rows = &doc;
  std::optional<std::size_t> cols;
  if (doc.is_object()) {
    if (!doc.contains("matrix")) throw ValidationError("matrix: missing field");
    rows = &doc["matrix"];
    if (doc.contains("cols")) cols = static_cast<std::size_t>(detail::json_to_count(doc["cols"], "cols"));
  }
  if (!rows->is_array()) throw ValidationError("matrix: expected an array of rows");
  const std::size_t c = cols ? *cols : (rows->empty() ? 0 : (*rows)[0].size());
  std::vector<IntVector> data;
  for (std::size_t i = 0; i < rows->size(); ++i) {
    auto r = detail::json_to_vector((*rows)[i], "matrix[" + std::to_string(i) + "]");
    if (r.size() != c) throw ValidationError("matrix[" + std::to_string(i) + "]: row length must be " + std::to_string(c));
    data.push_back(std::move(r));
  }
  return IntMatrix::from_rows(data, c);
}

inline int run_snf(const std::string& path, const Options& opts, std::ostream& out, std::ostream& err) {
  const auto text = read_file(path);
  if (!text) {
    err << "error: cannot read " << path << "\n";
    return io_failure;
  }
  try {
    const IntMatrix a = parse_matrix_document(Json::parse(*text));
    const SnfDecomposition snf = smith_normal_form(a);
    Json j;
    j["rows"] = a.rows();
    j["cols"] = a.cols();
    j["U"] = matrix_to_json(snf.U);
    j["D"] = matrix_to_json(snf.D);
    j["V"] = matrix_to_json(snf.V);
    j["invariant_factors"] = vector_to_json(snf.diagonal());
    j["rank"] = rank(a);
    j["cokernel"] = cokernel_presentation(a).to_string();
    Json kb = Json::array();
    for (const auto& v : kernel_basis(a).vectors) kb.push_back(vector_to_json(v));
    j["kernel_basis"] = std::move(kb);
    emit(j, opts.format, out);
    return ok;
  } catch (const Json::parse_error& e) {
    err << "error: matrix: malformed JSON (" << e.what() << ")\n";
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
  }
  return validation_failure;
}

}  // namespace fsum::cli
