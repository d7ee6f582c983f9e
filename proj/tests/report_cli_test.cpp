#include "fibresum/cli.hpp"
#include "fibresum/report.hpp"
#include "support/random_problems.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

namespace fsum {
namespace {

using namespace fsum::cli;

const std::string samples = FIBRESUM_SAMPLES;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

template <class Fn>
Outcome capture(Fn fn) {
  std::ostringstream out, err;
  const int code = fn(out, err);
  return Outcome{code, out.str(), err.str()};
}

Outcome compute(const std::string& path, Options opts = {}) {
  return capture([&](std::ostream& o, std::ostream& e) { return run_compute(path, opts, o, e); });
}

Options json_opts() {
  Options o;
  o.format = Format::json;
  return o;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("fibresum_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

TEST(Compute, TwistedPairIsIndivisibleAndOdd) {
  const Outcome r = compute(samples + "/e2_e2_a10.json");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "K_X indivisible"));
  EXPECT_TRUE(contains(r.out, "odd 7<+1> + 39<-1>"));
}

TEST(Compute, UntwistedPairIsDivisibleByTwoAndEven) {
  const Outcome r = compute(samples + "/e2_e2_a00.json");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "divisibility 2"));
  EXPECT_TRUE(contains(r.out, "even 7H + 4E8(-1)"));
}

TEST(Compute, InvalidDocumentNamesTheViolation) {
  const Outcome r = compute(samples + "/invalid_k2.json");
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "M: K^2 != 2e+3sigma (needs 0, got 1)")) << r.err;
}

TEST(Compute, MalformedDocumentNamesTheField) {
  const auto path = write_temp("malformed.json", R"({"M":{"catalog":"E","n":2},"N":{"catalog":"E","n":"two"},"gluing":{"a":[0,0]}})");
  const Outcome r = compute(path);
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "N.n")) << r.err;
  const Outcome bad = compute(write_temp("broken.json", "{\"M\": "));
  EXPECT_EQ(bad.code, 2);
  EXPECT_TRUE(contains(bad.err, "malformed JSON"));
}

TEST(Compute, MissingFileIsAnIoFailure) {
  const Outcome r = compute(samples + "/does_not_exist.json");
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(contains(r.err, "cannot read"));
}

TEST(Compute, JsonReportShape) {
  const Outcome r = compute(samples + "/x_2_3_1.json", json_opts());
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["kernel"]["alpha_basis"], Json::parse("[[1,0],[0,1]]"));
  EXPECT_EQ(j["homology"]["H1"], "0");
  EXPECT_EQ(j["homology"]["rim_tori"], "Z^2");
  EXPECT_EQ(j["forms"]["status"], "ok");
  EXPECT_EQ(j["forms"]["canonical_class"]["sigma_basis"]["r"], Json::parse("[-2,0]"));
  EXPECT_EQ(j["forms"]["canonical_class"]["sigma_basis"]["sigma"], 3);
  EXPECT_EQ(j["forms"]["canonical_class"]["symmetric_basis"]["eta_prime"], 2);
  for (const auto& c : j["checks"]) EXPECT_TRUE(c["pass"].get<bool>()) << c;
  for (const auto& c : j["forms"]["checks"]) EXPECT_TRUE(c["pass"].get<bool>()) << c;
  ASSERT_EQ(j["warnings"].size(), 1u);
  EXPECT_TRUE(contains(j["warnings"][0].get<std::string>(), "t defaulted to 0"));
}

TEST(Compute, JsonRoundTripsByteForByte) {
  for (const char* name : {"e2_e2_a10.json", "e2_e2_a00.json", "x_2_3_1.json"}) {
    const Outcome r = compute(samples + "/" + name, json_opts());
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(Json::parse(r.out).dump(2) + "\n", r.out) << name;
  }
}

std::vector<std::string> integer_tokens(const std::string& s) {
  static const std::regex re("-?[0-9]+");
  std::vector<std::string> out;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), re); it != std::sregex_iterator(); ++it)
    out.push_back(it->str());
  return out;
}

TEST(Compute, TextAndJsonCarryTheSameNumbers) {
  for (const char* name : {"e2_e2_a10.json", "e2_e2_a00.json", "x_2_3_1.json"}) {
    const Outcome text = compute(samples + "/" + name);
    const Outcome json = compute(samples + "/" + name, json_opts());
    EXPECT_EQ(integer_tokens(text.out), integer_tokens(json.out)) << name;
  }
}

TEST(Compute, NoFormsSkipsTheFormsModule) {
  Options o = json_opts();
  o.forms = false;
  const Outcome r = compute(samples + "/e2_e2_a10.json", o);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["forms"], Json::parse(R"({"status":"skipped"})"));
}

TEST(Compute, TOverride) {
  Options o = json_opts();
  o.t_override = parse_int_list("3,0");
  const Outcome r = compute(samples + "/e2_e2_a10.json", o);
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["kernel"]["t_defaulted"], false);
  // r_i = t_i - a'_i eta' with eta' = 1.
  EXPECT_EQ(j["forms"]["canonical_class"]["sigma_basis"]["r"], Json::parse("[2,0]"));
  EXPECT_TRUE(j["warnings"].empty());

  o.t_override = parse_int_list("3");
  EXPECT_EQ(compute(samples + "/e2_e2_a10.json", o).code, 2);
  EXPECT_THROW(parse_int_list("1,x"), ValidationError);
  EXPECT_EQ(parse_int_list(" -4, 5 "), (IntVector{-4, 5}));
}

TEST(Compute, GatedProblemReportsTheScopeViolation) {
  Json doc = Json::parse(R"({"M":{"catalog":"E","n":2},"N":{"catalog":"E","n":2},"gluing":{"a":[0,0]}})");
  Json side = side_to_json(elliptic_surface(2));
  side["k"] = 2;
  doc["M"] = side;
  const Outcome r = compute(write_temp("gated.json", doc.dump()), json_opts());
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["forms"]["status"], "gated");
  EXPECT_EQ(j["forms"]["violations"][0], "Sigma_M divisible (k_M = 2)");
  EXPECT_FALSE(j["forms"].contains("canonical_class"));
}

TEST(Compute, UnknownParityStillReportsTheCanonicalClass) {
  Json doc = Json::parse(R"({"M":{"catalog":"E","n":2},"N":{"catalog":"E","n":2},"gluing":{"a":[0,0]}})");
  Json side = side_to_json(elliptic_surface(2));
  side["p_parity"] = "unknown";
  side["kbar_divisibility"] = "unknown";
  doc["N"] = side;
  const Outcome r = compute(write_temp("unknown.json", doc.dump()), json_opts());
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_TRUE(contains(j["forms"]["form_class"].get<std::string>(), "unavailable"));
  EXPECT_EQ(j["forms"]["divisibility"]["exact"], false);
  EXPECT_EQ(j["warnings"].size(), 2u);
}

TEST(Validate, ValidAndInvalid) {
  Options o;
  const Outcome ok_run = capture([&](std::ostream& out, std::ostream& err) {
    return run_validate(samples + "/x_2_3_1.json", o, out, err);
  });
  EXPECT_EQ(ok_run.code, 0);
  EXPECT_EQ(ok_run.out, "valid\n");
  const Outcome bad = capture([&](std::ostream& out, std::ostream& err) {
    return run_validate(samples + "/invalid_k2.json", json_opts(), out, err);
  });
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(Json::parse(bad.out)["valid"], false);
}

Outcome catalog(const std::string& name, const std::string& n) {
  return capture([&](std::ostream& o, std::ostream& e) { return run_catalog(name, n, o, e); });
}

TEST(Catalog, Examples) {
  const Outcome e2 = catalog("E", "2");
  ASSERT_EQ(e2.code, 0);
  EXPECT_EQ(Json::parse(e2.out), side_to_json(elliptic_surface(2)));
  EXPECT_EQ(Json::parse(e2.out)["b2_minus"], 19);

  EXPECT_EQ(catalog("E", "0").code, 2);
  EXPECT_EQ(catalog("F", "2").code, 2);
  EXPECT_EQ(catalog("E", "2x").code, 2);

  const Json e4 = Json::parse(catalog("E", "4").out);
  EXPECT_EQ(e4["K_dot_B"], 2);
  EXPECT_EQ(e4["B_squared"], -4);
}

Outcome batch(const std::string& path, Options o = {}) {
  return capture([&](std::ostream& out, std::ostream& err) { return run_batch(path, o, out, err); });
}

TEST(Batch, DivisibilityScan) {
  const Outcome r = batch(samples + "/batch_x22p.json", json_opts());
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  std::vector<int> divs;
  for (const auto& item : j["results"]) divs.push_back(item["report"]["forms"]["divisibility"]["value"].get<int>());
  EXPECT_EQ(divs, (std::vector<int>{2, 1, 2, 1, 2}));

  const Outcome text = batch(samples + "/batch_x22p.json");
  EXPECT_TRUE(contains(text.out, "#1 b1=0 b2=46 sigma=-32 H1=0 divisibility=1 form=odd 7<+1> + 39<-1>"));
}

TEST(Batch, EmptyList) {
  const Outcome r = batch(write_temp("empty.json", "[]"), json_opts());
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out), Json::parse(R"({"results":[]})"));
}

TEST(Batch, OneInvalidEntry) {
  Json items = Json::parse(read_file(samples + "/batch_x22p.json").value());
  items[2]["gluing"]["a"] = Json::parse("[1]");
  const Outcome r = batch(write_temp("one_bad.json", Json{{"problems", items}}.dump()), json_opts());
  EXPECT_EQ(r.code, 2);
  const Json j = Json::parse(r.out);
  ASSERT_EQ(j["results"].size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(j["results"][i]["status"], i == 2 ? "error" : "ok");
  EXPECT_TRUE(contains(j["results"][2]["error"].get<std::string>(), "gluing.a"));
}

TEST(Batch, OrderIsStableUnderParallelism) {
  testkit::ProblemGenerator gen(109);
  Json items = Json::array();
  std::vector<Json> expected;
  for (int i = 0; i < 40; ++i) {
    const FibreSumProblem p = gen.problem(false);
    items.push_back(problem_to_json(p));
    expected.push_back(build_report(p).data);
  }
  bool failed = true;
  const Json out = batch_results(items, Options{}, failed);
  EXPECT_FALSE(failed);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_EQ(out[i]["index"], i);
    EXPECT_EQ(out[i]["report"], expected[i]);
  }
}

TEST(Snf, MatrixDocument) {
  const Outcome r = capture([&](std::ostream& o, std::ostream& e) {
    return run_snf(samples + "/matrix.json", json_opts(), o, e);
  });
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["invariant_factors"], Json::parse("[2,4]"));
  EXPECT_EQ(j["cokernel"], "Z/2 + Z/4");
  EXPECT_EQ(j["rank"], 2);

  const Outcome empty = capture([&](std::ostream& o, std::ostream& e) {
    return run_snf(write_temp("zero_rows.json", R"({"matrix": [], "cols": 3})"), json_opts(), o, e);
  });
  ASSERT_EQ(empty.code, 0) << empty.err;
  EXPECT_EQ(Json::parse(empty.out)["kernel_basis"].size(), 3u);
}

}  // namespace
}  // namespace fsum
