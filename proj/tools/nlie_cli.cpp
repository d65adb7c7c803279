#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "nlie/commands.hpp"

using namespace nlie;

namespace {

void add_common(CLI::App* app, RunConfig& c, std::string& field) {
  app->add_option("--n", c.n, "arity of the bracket");
  app->add_option("--window", c.window, "monomial degree window for polynomial carriers");
  app->add_option("--xwindow", c.xwindow, "x-degree window for realized superalgebras");
  app->add_option("--field", field, "q or fp:P");
  app->add_option("--json", c.json_path, "write the report as JSON");
  app->add_option("--seed", c.seed, "seed for sampling order");
  app->add_flag("--timings", c.timings, "include per-check timings in the JSON report");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"n-Lie (super)algebra verification"};
  app.require_subcommand(1);
  RunConfig c;
  std::string field = "q";
  std::optional<int> cap, s;
  std::optional<std::uint64_t> p;

  auto* verify = app.add_subcommand("verify", "run the verification suite on a catalog algebra or a bracket table");
  verify->add_option("algebra", c.selector, "O, S, W or SW");
  verify->add_option("--table", c.table, "bracket table file")->check(CLI::ExistingFile);
  verify->add_option("--form", c.form, "bilinear form file for O")->check(CLI::ExistingFile);
  verify->add_option("--cap", cap, "generation degree cap");
  add_common(verify, c, field);

  auto* pairs = app.add_subcommand("pairs", "check an admissible pair built from a realized superalgebra");
  pairs->add_option("which", c.selector, "i, ii, iii or iv")->required();
  add_common(pairs, c, field);

  auto* charp = app.add_subcommand("charp", "characteristic p laboratory");
  charp->add_option("--p", p, "characteristic")->required();
  charp->add_option("--s", s, "use n = s p + 1");
  charp->add_option("--cap", cap, "generation degree cap");
  add_common(charp, c, field);

  auto* report = app.add_subcommand("report", "run every suite at its default size");
  report->add_option("--p", p, "characteristic for the char-p part");
  report->add_option("--s", s, "n = s p + 1 for the char-p part");
  add_common(report, c, field);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    c.command = app.get_subcommands().front()->get_name();
    c.field = FieldSpec::parse(field);
    c.cap = cap;
    c.s = s;
    c.p = p;
    const Report r = run_command(c);
    std::cout << r.summary();
    if (!c.json_path.empty()) {
      std::ofstream out(c.json_path);
      if (!out) throw std::runtime_error("cannot write '" + c.json_path + "'");
      out << r.to_json(c.timings).dump(2) << "\n";
    }
    return r.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
