// Command-line front end: witt, ring-eval, euler, localize, selfcheck.

#include "bnloc/errors.hpp"
#include "bnloc/expr.hpp"
#include "bnloc/io.hpp"
#include "bnloc_checks/checks.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace {

using namespace bnloc;

struct GlobalOptions {
  std::optional<int> truncation;
  std::vector<std::int64_t> invert;
  std::optional<std::string> table;
  bool sign_flip = false;
  std::optional<std::string> field;
  std::optional<std::string> theory;
};

FieldSpec field_of(const GlobalOptions& g) { return FieldSpec::parse(g.field.value_or("Q")); }

EulerTable table_of(const GlobalOptions& g, const FieldSpec& field) {
  if (g.table) {
    EulerTable t = parse_euler_table(read_text_file(*g.table), field, g.sign_flip);
    if (g.theory && !(CoeffTheory::parse(*g.theory) == t.theory()))
      fail(ErrorCode::TheoryMismatch, "--theory " + *g.theory + " but the table declares " + t.theory().name());
    return t;
  }
  return EulerTable::builtin(CoeffTheory::parse(g.theory.value_or("HW")), field, g.sign_flip);
}

int run_witt(const GlobalOptions& g, const std::string& expr) {
  std::cout << eval_witt_command(expr, field_of(g)).to_string() << "\n";
  return 0;
}

int run_ring_eval(const GlobalOptions& g, const std::string& expr) {
  FieldSpec field = field_of(g);
  EulerTable table = table_of(g, field);
  int t = g.truncation.value_or(PowerSeries::kDefaultTruncation);
  std::cout << to_string(eval_ring(parse_expression(expr), table, t)) << "\n";
  return 0;
}

int run_euler(const GlobalOptions& g, const std::vector<std::string>& labels) {
  FieldSpec field = field_of(g);
  EulerTable table = table_of(g, field);
  int t = g.truncation.value_or(PowerSeries::kDefaultTruncation);
  std::vector<RepLabel> reps;
  for (const auto& l : labels) reps.push_back(RepLabel::parse(l));
  if (reps.empty()) {
    if (table.is_builtin())
      for (int m = 1; m <= 8; ++m) reps.push_back({m, true});
    else
      for (const auto& [rep, entry] : table.custom_entries()) reps.push_back(rep);
  }
  for (const auto& rep : reps) {
    EulerValue v = euler_class(rep, table, t);
    if (v.warning) std::cerr << "warning: " << *v.warning << "\n";
    std::string text = std::visit([](const auto& x) { return x.to_string(); }, v.value);
    std::cout << rep.to_string() << ": " << text << "\n";
  }
  return 0;
}

int run_localize(const GlobalOptions& g, const std::string& path) {
  LocalizationProblem problem = parse_problem(read_text_file(path));
  if (g.truncation) problem.truncation = *g.truncation;
  problem.invert.insert(problem.invert.end(), g.invert.begin(), g.invert.end());
  if (g.sign_flip) problem.sign_flip = true;
  if (g.field && !(FieldSpec::parse(*g.field) == problem.field))
    fail(ErrorCode::FieldMismatch, "--field " + *g.field + " but the problem is over " + problem.field.name());
  if (g.theory && !(CoeffTheory::parse(*g.theory) == problem.theory))
    fail(ErrorCode::TheoryMismatch, "--theory " + *g.theory + " but the problem uses " + problem.theory.name());
  if (g.table) problem.custom_table = std::filesystem::absolute(*g.table).string();
  EulerTable table = resolve_table(problem, std::filesystem::path(path).parent_path());
  LocalizeOutcome out = bnloc::run_localize(problem, table);
  std::cout << dump(out.report);
  if (out.report.contains("diagnostic") && !out.report["diagnostic"].is_null())
    std::cerr << "error: " << out.report["diagnostic"].get<std::string>() << "\n";
  return out.exit_code;
}

int run_selfcheck(std::uint64_t seed) {
  bool ok = true;
  for (const auto& r : checks::run_selfcheck(seed)) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    ok = ok && r.passed;
  }
  return ok ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Localization calculator for cohomology of BN with Witt-ring coefficients"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--truncation", g.truncation, "Number of known power-series terms")->check(CLI::Range(1, 4096));
  app.add_option("--invert", g.invert, "Extra integer folded into the localizing integer M")->check(CLI::PositiveNumber);
  app.add_option("--table", g.table, "Custom Euler table file");
  app.add_flag("--sign-flip", g.sign_flip, "Negate every Euler table entry");
  app.add_option("--field", g.field, "Q, R, C or F<p>");
  app.add_option("--theory", g.theory, "HW or KW");

  std::string expr, path;
  std::vector<std::string> labels;
  std::uint64_t seed = 20240601;
  auto* witt = app.add_subcommand("witt", "Evaluate a Witt-ring expression, e.g. \"<2>+<2*d>; d=-1\"");
  witt->add_option("expr", expr)->required();
  auto* ring = app.add_subcommand("ring-eval", "Evaluate an expression in q0, e, et, q1");
  ring->add_option("expr", expr)->required();
  auto* euler = app.add_subcommand("euler", "Print Euler classes of labels such as 3,+ or 4,-");
  euler->add_option("labels", labels);
  auto* localize = app.add_subcommand("localize", "Assemble a problem file and extract its degree");
  localize->add_option("problem", path)->required();
  auto* selfcheck = app.add_subcommand("selfcheck", "Run the invariant suites");
  selfcheck->add_option("--seed", seed, "Seed for the random generators");
  app.fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*witt) return run_witt(g, expr);
    if (*ring) return run_ring_eval(g, expr);
    if (*euler) return run_euler(g, labels);
    if (*localize) return run_localize(g, path);
    if (*selfcheck) return run_selfcheck(seed);
  } catch (const Error& e) {
    std::cerr << "error: " << error_name(e.code()) << ": " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 4;
}
