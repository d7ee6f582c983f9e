// fibresum: homological invariants of generalized fibre sums of 4-manifolds.

#include "fibresum/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace fsum::cli;

  CLI::App app{"Homology, intersection form and canonical class of a generalized fibre sum"};
  app.require_subcommand(1);

  Options opts;
  std::string format = "text";
  bool no_forms = false;
  std::string t_list;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    cmd->add_flag("--no-forms", no_forms, "Skip intersection form and canonical class");
    cmd->add_option("--t", t_list, "Override the t-vector, comma separated (alpha-basis order)");
  };

  std::string path;
  auto* compute = app.add_subcommand("compute", "Run the full pipeline on a problem document");
  compute->add_option("file", path, "Problem document (JSON)")->required();
  add_common(compute);

  auto* validate = app.add_subcommand("validate", "Validate a problem document");
  validate->add_option("file", path, "Problem document (JSON)")->required();
  add_common(validate);

  auto* batch = app.add_subcommand("batch", "Run a list of problem documents");
  batch->add_option("file", path, "JSON array of problem documents")->required();
  add_common(batch);

  std::string catalog_name;
  std::string catalog_n;
  auto* catalog = app.add_subcommand("catalog", "Print a catalog side, e.g. 'catalog E 2'");
  catalog->add_option("name", catalog_name, "Catalog family (E)")->required();
  catalog->add_option("n", catalog_n, "Family index")->required();

  auto* snf = app.add_subcommand("snf", "Smith normal form of an integer matrix");
  snf->add_option("file", path, "Matrix document: [[...], ...] or {\"matrix\": ..., \"cols\": n}")->required();
  snf->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : validation_failure;
  }

  opts.format = format == "json" ? Format::json : Format::text;
  opts.forms = !no_forms;
  try {
    if (compute->count("--t") + validate->count("--t") + batch->count("--t") > 0)
      opts.t_override = parse_int_list(t_list);
  } catch (const fsum::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return validation_failure;
  }

  try {
    if (app.got_subcommand(compute)) return run_compute(path, opts, std::cout, std::cerr);
    if (app.got_subcommand(validate)) return run_validate(path, opts, std::cout, std::cerr);
    if (app.got_subcommand(batch)) return run_batch(path, opts, std::cout, std::cerr);
    if (app.got_subcommand(catalog)) return run_catalog(catalog_name, catalog_n, std::cout, std::cerr);
    if (app.got_subcommand(snf)) return run_snf(path, opts, std::cout, std::cerr);
  } catch (const fsum::InternalError& e) {
    std::cerr << "internal assertion: " << e.what() << "\n";
    return internal_failure;
  }
  return ok;
}
