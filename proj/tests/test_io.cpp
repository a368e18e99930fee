#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bnloc/errors.hpp"
#include "bnloc/expr.hpp"
#include "bnloc/io.hpp"

#include <filesystem>

using namespace bnloc;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const std::filesystem::path kRoot = BNLOC_SOURCE_DIR;

std::string minimal(const std::string& component, const std::string& extra = "") {
  return R"({"version": 1, "field": "Q", "theory": "HW", )" + extra + R"("components": [)" + component + "]}";
}

/// Message of the Error thrown by `f`, with its code.
template <class F>
std::pair<ErrorCode, std::string> error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return {e.code(), e.what()};
  }
  return {ErrorCode::Internal, "no error"};
}

std::string ring(const std::string& text, const CoeffTheory& theory = CoeffTheory::hw()) {
  return to_string(eval_ring(parse_expression(text), EulerTable::builtin(theory, Q), 16));
}

}  // namespace

TEST_CASE("minimal problem gets defaults") {
  LocalizationProblem p = parse_problem(minimal(R"({"id": "pt", "kind": "n_fixed", "class": "e", "tangent": [[1, "+"]]})"));
  CHECK(p.truncation == 16);
  CHECK(p.char_p == 0);
  CHECK(p.invert.empty());
  CHECK_FALSE(p.sign_flip);
  REQUIRE(p.components.size() == 1);
  CHECK(p.components[0].tangent_moving == std::vector<RepLabel>{{1, true}});
  LocalizationProblem f = parse_problem(R"({"version": 1, "field": "F7", "theory": "KW",
      "components": [{"id": "pt", "kind": "n_fixed", "class": "e", "tangent": [[1, "−"]]}]})");
  CHECK(f.char_p == 7);
  CHECK(f.components[0].tangent_moving[0].plus == false);
}

TEST_CASE("case c- with even weight is rejected") {
  auto [code, msg] = error_of([] { parse_problem(minimal(R"({"id": "x", "kind": "induced:c-", "m": 2})")); });
  CHECK(code == ErrorCode::SchemaError);
  CHECK(msg.find("/components/0/m") != std::string::npos);
}

TEST_CASE("rank-one label in E1 is rejected") {
  auto [code, msg] = error_of([] {
    parse_problem(minimal(R"({"id": "v", "kind": "n_fixed", "class": "1", "virtual": {"E0": [[1, "+"]], "E1": [[0, "+"]]}})"));
  });
  CHECK(code == ErrorCode::SchemaError);
  CHECK(msg.find("/components/0/virtual/E1/0") != std::string::npos);
}

TEST_CASE("all schema errors are reported together") {
  auto [code, msg] = error_of([] {
    parse_problem(R"({"version": 2, "field": "Q", "theory": "XW", "colour": 1,
        "components": [{"id": "a", "kind": "n_fixed", "class": "e", "shape": 1},
                       {"id": "a", "kind": "banana", "class": "e"}]})");
  });
  CHECK(code == ErrorCode::SchemaError);
  for (const char* where : {"/version", "/theory", "/colour", "/components/0/shape", "/components/1/id", "/components/1/kind"})
    CHECK_MESSAGE(msg.find(where) != std::string::npos, where);
}

TEST_CASE("malformed JSON reports line and column") {
  auto [code, msg] = error_of([] { parse_problem("{\n  \"version\": 1,\n  \"field\": \"Q\" \"theory\": 2\n}"); });
  CHECK(code == ErrorCode::ParseError);
  CHECK(msg.find("line 3") != std::string::npos);
}

TEST_CASE("further schema rejections") {
  auto rejects = [](const std::string& text) { return error_of([&] { parse_problem(text); }).first == ErrorCode::SchemaError; };
  CHECK(rejects(minimal(R"({"id": "x", "kind": "n_fixed"})")));
  CHECK(rejects(minimal(R"({"id": "x", "kind": "induced:a", "m": 1, "class": "e"})")));
  CHECK(rejects(minimal(R"({"id": "x", "kind": "n_fixed", "class": "e", "m": 3})")));
  CHECK(rejects(minimal(R"({"id": "x", "kind": "n_fixed", "class": "e", "tangent": [[1, "*"]]})")));
  CHECK(rejects(minimal(R"({"id": "x", "kind": "n_fixed", "class": "e"})", R"("char_p": 4, )")));
  CHECK(rejects(minimal(R"({"id": "x", "kind": "n_fixed", "class": "e"})", R"("expected_degree": "e", )")));
  CHECK(rejects(R"({"version": 1, "field": "Q", "theory": "HW", "components": []})"));
  CHECK(rejects(R"({"version": 1, "field": "F5", "theory": "HW", "char_p": 3,
      "components": [{"id": "x", "kind": "n_fixed", "class": "e"}]})"));
  CHECK(rejects(R"({"version": 1, "field": "Q", "theory": "custom:Z",
      "components": [{"id": "x", "kind": "n_fixed", "class": "e"}]})"));
}

TEST_CASE("round trip on every fixture") {
  int n = 0;
  for (const auto& entry : std::filesystem::directory_iterator(kRoot / "tests/fixtures")) {
    if (entry.path().extension() != ".json") continue;
    LocalizationProblem p = parse_problem(read_text_file(entry.path()));
    std::string text = serialize_problem(p);
    LocalizationProblem back = parse_problem(text);
    INFO(entry.path().filename().string());
    CHECK(back == p);
    CHECK(serialize_problem(back) == text);
    ++n;
  }
  CHECK(n >= 8);
}

TEST_CASE("golden reports") {
  int n = 0;
  for (const auto& entry : std::filesystem::directory_iterator(kRoot / "tests/fixtures")) {
    if (entry.path().extension() != ".json") continue;
    std::filesystem::path golden = kRoot / "tests/golden" / entry.path().filename();
    INFO(entry.path().filename().string());
    REQUIRE(std::filesystem::exists(golden));
    LocalizationProblem p = parse_problem(read_text_file(entry.path()));
    EulerTable table = resolve_table(p, entry.path().parent_path());
    CHECK(dump(run_localize(p, table).report) == read_text_file(golden));
    ++n;
  }
  CHECK(n >= 8);
}

TEST_CASE("localize report contents") {
  std::filesystem::path path = kRoot / "tests/fixtures/single_point.json";
  LocalizationProblem p = parse_problem(read_text_file(path));
  LocalizeOutcome out = run_localize(p, resolve_table(p, path.parent_path()));
  CHECK(out.exit_code == 0);
  CHECK(out.report["degree_form"] == "<1>");
  CHECK(out.report["inverted"] == "1");

  std::filesystem::path pole = kRoot / "tests/fixtures/pole.json";
  LocalizationProblem pp = parse_problem(read_text_file(pole));
  LocalizeOutcome po = run_localize(pp, resolve_table(pp, pole.parent_path()));
  CHECK(po.exit_code == 3);
  CHECK(po.report["diagnostic"].get<std::string>().find("PolePresent") == 0);
}

TEST_CASE("custom Euler tables") {
  EulerTable t = parse_euler_table(read_text_file(kRoot / "tests/tables/hw_signed.json"), Q, false);
  CHECK(t.theory().name() == "HWs");
  CHECK(t.entry({4, false}).tag == TwistParity::Twisted);
  CHECK(t.entry({3, true}).value.at(3) == witt_class(QForm(Q, {2, -1})));
  auto bad = error_of([] {
    parse_euler_table(R"({"version": 1, "theory": "HW", "entries": {"3,+": [[1, "2"]]}, "etilde_square": [[1, "-4"]]})", Q, false);
  });
  CHECK(bad.first == ErrorCode::SchemaError);
  auto mislabeled = error_of([] {
    parse_euler_table(R"({"version": 1, "theory": "HW", "entries": {"three": [[1, "3"]]}, "etilde_square": []})", Q, false);
  });
  CHECK(mislabeled.first == ErrorCode::SchemaError);
}

TEST_CASE("witt command examples") {
  CHECK(eval_witt_command("<2>+<2*d>; d=-1", Q).is_zero());
  CHECK(eval_witt_command("⟨2⟩ + ⟨−2⟩", Q).is_zero());
  CHECK(eval_witt_command("<2>*<2>", Q) == WittClass::one(Q));
  CHECK(eval_witt_command("<2,6> - <2> - <6>", Q).is_zero());
  CHECK(eval_witt_command("<x/4>; x=3", Q) == WittClass::symbol(Q, 3));
  CHECK(eval_witt_command("<2>*<3>", FieldSpec::finite_prime(5)) == WittClass::one(FieldSpec::finite_prime(5)));
  CHECK(error_of([] { eval_witt_command("<0>", Q); }).first == ErrorCode::DegenerateForm);
  CHECK(error_of([] { eval_witt_command("<1", Q); }).first == ErrorCode::ParseError);
  CHECK(error_of([] { eval_witt_command("<d>", Q); }).first == ErrorCode::ParseError);
}

TEST_CASE("ring-eval examples") {
  CHECK(ring("(1+q0)*e") == "0");
  CHECK(ring("q0^2") == "1");
  CHECK(ring("(1+q0)*et") == "0");
  CHECK(ring("(1 + q0) q1") == "0");
  CHECK(ring("et*et") == "-4*e");
  CHECK(ring("q0*e^3") == "-e^3");
  CHECK(ring("e + q0 + e - q0") == "2*e");
  CHECK(ring("<2>*e^2 + <-2>*e^2") == "0");
  CHECK(ring("3 + q0") == "3 + q0");
  CHECK(ring("e*ẽ") == "e*et");
  CHECK(error_of([] { ring("e*q1"); }).first == ErrorCode::UnreducedQ1Product);
  CHECK(error_of([] { ring("e + et"); }).first == ErrorCode::TagMismatch);
  CHECK(error_of([] { ring("q1*q1"); }).first == ErrorCode::UnreducedQ1Product);
  CHECK(exit_code(ErrorCode::TagMismatch) == 2);
  CHECK(exit_code(ErrorCode::PolePresent) == 3);
  CHECK(exit_code(ErrorCode::Internal) == 4);
}

TEST_CASE("Laurent literals round trip through text") {
  for (const char* text : {"e", "1/3*e^-1", "(<2,-1>)/3*e", "e*et", "0", "3*e^2 - e + 2", "e^-2/5 + <3>*e^4", "-et"}) {
    LaurentLiteral lit = parse_laurent_literal(text, Q);
    INFO(text << " -> " << to_string(lit));
    CHECK(parse_laurent_literal(to_string(lit), Q) == lit);
  }
  CHECK(parse_laurent_literal("e*et", Q).tag == TwistParity::Twisted);
  CHECK(error_of([] { parse_laurent_literal("et*et", Q); }).first == ErrorCode::ParseError);
  CHECK(error_of([] { parse_laurent_literal("q0", Q); }).first == ErrorCode::ParseError);
}
