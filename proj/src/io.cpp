#include "bnloc/io.hpp"

#include "bnloc/errors.hpp"
#include "bnloc/expr.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace bnloc {

namespace {

constexpr int kMaxTruncation = 4096;

Json sorted_object(std::vector<std::pair<std::string, Json>> fields) {
  std::sort(fields.begin(), fields.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Json out = Json::object();
  for (auto& [k, v] : fields) out[k] = std::move(v);
  return out;
}

class Issues {
 public:
  void add(const std::string& where, const std::string& what) { list_.push_back((where.empty() ? "/" : where) + ": " + what); }
  bool empty() const { return list_.empty(); }
  [[noreturn]] void raise() const {
    std::string msg = std::to_string(list_.size()) + " schema error(s):";
    for (const auto& s : list_) msg += "\n  " + s;
    fail(ErrorCode::SchemaError, msg);
  }

 private:
  std::vector<std::string> list_;
};

void check_keys(const Json& obj, const std::string& where, const std::set<std::string>& allowed, Issues& issues) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) issues.add(where + "/" + it.key(), "unknown key");
}

std::optional<long long> get_int(const Json& obj, const std::string& key, const std::string& where, Issues& issues) {
  if (!obj.contains(key)) return std::nullopt;
  const Json& v = obj.at(key);
  if (!v.is_number_integer()) {
    issues.add(where + "/" + key, "expected an integer");
    return std::nullopt;
  }
  return v.get<long long>();
}

std::optional<std::string> get_string(const Json& obj, const std::string& key, const std::string& where, Issues& issues) {
  if (!obj.contains(key)) return std::nullopt;
  const Json& v = obj.at(key);
  if (!v.is_string()) {
    issues.add(where + "/" + key, "expected a string");
    return std::nullopt;
  }
  return v.get<std::string>();
}

std::optional<bool> get_bool(const Json& obj, const std::string& key, const std::string& where, Issues& issues) {
  if (!obj.contains(key)) return std::nullopt;
  const Json& v = obj.at(key);
  if (!v.is_boolean()) {
    issues.add(where + "/" + key, "expected true or false");
    return std::nullopt;
  }
  return v.get<bool>();
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
}

std::vector<RepLabel> parse_reps(const Json& obj, const std::string& key, const std::string& where, Issues& issues) {
  std::vector<RepLabel> out;
  if (!obj.contains(key)) return out;
  const Json& arr = obj.at(key);
  std::string path = where + "/" + key;
  if (!arr.is_array()) {
    issues.add(path, "expected a list of [m, sign] pairs");
    return out;
  }
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const Json& r = arr[i];
    std::string at = path + "/" + std::to_string(i);
    if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() || !r[1].is_string()) {
      issues.add(at, "expected [m, \"+\"|\"-\"]");
      continue;
    }
    long long m = r[0].get<long long>();
    auto sign = parse_sign(r[1].get<std::string>());
    if (m < 0 || m > 1000000 || !sign) {
      issues.add(at, "weight must be in [0, 10^6] and sign one of + -");
      continue;
    }
    if (m == 0) {
      issues.add(at, "rank-one labels have zero Euler class and cannot occur in a normal bundle");
      continue;
    }
    out.push_back(RepLabel{static_cast<int>(m), *sign});
  }
  return out;
}

Json reps_to_json(const std::vector<RepLabel>& reps) {
  Json out = Json::array();
  for (const auto& r : reps) out.push_back(Json::array({r.weight, r.plus ? "+" : "-"}));
  return out;
}

std::string kind_to_string(const FixedComponent& c) {
  switch (c.kind) {
    case ComponentKind::NFixed: return "n_fixed";
    case ComponentKind::FreePair: return "free_pair";
    case ComponentKind::Induced: return "induced:" + c.induced_case->kind_name();
  }
  return "?";
}

std::string theory_to_string(const CoeffTheory& t) {
  return t.kind() == CoeffTheory::Kind::Custom ? "custom:" + t.name() : t.name();
}

std::optional<CoeffTheory> parse_theory_name(const std::string& text) {
  if (text == "HW") return CoeffTheory::hw();
  if (text == "KW") return CoeffTheory::kw();
  if (text.rfind("custom:", 0) == 0 && text.size() > 7) return CoeffTheory::custom(text.substr(7), 0, {0});
  return std::nullopt;
}

FixedComponent parse_component(const Json& c, const std::string& where, const FieldSpec& field, Issues& issues) {
  FixedComponent out;
  if (!c.is_object()) {
    issues.add(where, "expected an object");
    return out;
  }
  check_keys(c, where, {"id", "kind", "m", "class", "flagged", "tangent", "virtual"}, issues);
  auto id = get_string(c, "id", where, issues);
  if (!id || id->empty())
    issues.add(where + "/id", "missing component id");
  else
    out.id = *id;

  auto kind = get_string(c, "kind", where, issues);
  auto m = get_int(c, "m", where, issues);
  if (!kind) {
    issues.add(where + "/kind", "missing kind");
  } else if (*kind == "n_fixed" || *kind == "free_pair") {
    out.kind = *kind == "n_fixed" ? ComponentKind::NFixed : ComponentKind::FreePair;
    if (c.contains("m")) issues.add(where + "/m", "only induced components carry a case weight");
    if (c.contains("flagged")) issues.add(where + "/flagged", "only induced components can be flagged");
  } else if (kind->rfind("induced:", 0) == 0) {
    out.kind = ComponentKind::Induced;
    try {
      auto k = CaseType::parse_kind(kind->substr(8));
      if (!m)
        issues.add(where + "/m", "induced components need a case weight m");
      else if (*m < 1 || *m > 1000000)
        issues.add(where + "/m", "case weight must be in [1, 10^6]");
      else
        out.induced_case = CaseType(k, static_cast<int>(*m));
    } catch (const Error& e) {
      issues.add(where + (e.code() == ErrorCode::ParseError ? "/kind" : "/m"), e.what());
    }
    out.flagged = get_bool(c, "flagged", where, issues).value_or(false);
  } else {
    issues.add(where + "/kind", "unknown kind '" + *kind + "'");
  }

  if (auto cls = get_string(c, "class", where, issues)) {
    try {
      out.local_class = parse_laurent_literal(*cls, field);
    } catch (const Error& e) {
      issues.add(where + "/class", e.what());
    }
  } else if (out.kind != ComponentKind::Induced && !c.contains("class")) {
    issues.add(where + "/class", "missing class literal");
  }
  if (out.kind == ComponentKind::Induced && !out.local_class.is_zero() && !out.flagged)
    issues.add(where + "/class", "an induced component needs class 0 or \"flagged\": true");

  out.tangent_moving = parse_reps(c, "tangent", where, issues);
  if (c.contains("virtual")) {
    const Json& v = c.at("virtual");
    std::string vw = where + "/virtual";
    if (!v.is_object()) {
      issues.add(vw, "expected an object with E0 and E1");
    } else {
      check_keys(v, vw, {"E0", "E1"}, issues);
      out.virtual_data = VirtualData{parse_reps(v, "E0", vw, issues), parse_reps(v, "E1", vw, issues)};
    }
  }
  return out;
}

}  // namespace

LocalizationProblem parse_problem(const std::string& text) {
  Json doc = parse_json(text);
  Issues issues;
  if (!doc.is_object()) {
    issues.add("", "a problem file is a JSON object");
    issues.raise();
  }
  check_keys(doc, "", {"version", "field", "theory", "truncation", "char_p", "invert", "sign_flip", "custom_table",
                       "expected_degree", "components"},
             issues);
  LocalizationProblem p;

  auto version = get_int(doc, "version", "", issues);
  if (!version)
    issues.add("/version", "missing version");
  else if (*version != 1)
    issues.add("/version", "unsupported version " + std::to_string(*version));

  if (auto field = get_string(doc, "field", "", issues)) {
    try {
      p.field = FieldSpec::parse(*field);
    } catch (const Error& e) {
      issues.add("/field", e.what());
    }
  } else if (!doc.contains("field")) {
    issues.add("/field", "missing field");
  }

  if (auto theory = get_string(doc, "theory", "", issues)) {
    if (auto t = parse_theory_name(*theory))
      p.theory = *t;
    else
      issues.add("/theory", "unknown theory '" + *theory + "' (HW, KW or custom:NAME)");
  } else if (!doc.contains("theory")) {
    issues.add("/theory", "missing theory");
  }

  if (auto t = get_int(doc, "truncation", "", issues)) {
    if (*t < 1 || *t > kMaxTruncation)
      issues.add("/truncation", "truncation must be in [1, " + std::to_string(kMaxTruncation) + "]");
    else
      p.truncation = static_cast<int>(*t);
  }

  p.char_p = p.field.characteristic();
  if (auto cp = get_int(doc, "char_p", "", issues)) {
    if (p.field.kind() == FieldSpec::Kind::FinitePrime && *cp != p.field.prime())
      issues.add("/char_p", "char_p must equal the characteristic of " + p.field.name());
    else if (*cp != 0 && (*cp < 0 || !is_prime(Integer(*cp))))
      issues.add("/char_p", "char_p must be 0 or a prime");
    else
      p.char_p = *cp;
  }

  if (doc.contains("invert")) {
    const Json& inv = doc.at("invert");
    if (!inv.is_array()) issues.add("/invert", "expected a list of positive integers");
    for (std::size_t i = 0; inv.is_array() && i < inv.size(); ++i) {
      if (!inv[i].is_number_integer() || inv[i].get<long long>() < 1)
        issues.add("/invert/" + std::to_string(i), "expected a positive integer");
      else
        p.invert.push_back(inv[i].get<long long>());
    }
  }

  p.sign_flip = get_bool(doc, "sign_flip", "", issues).value_or(false);
  p.custom_table = get_string(doc, "custom_table", "", issues);
  if (p.theory.kind() == CoeffTheory::Kind::Custom && !p.custom_table)
    issues.add("/theory", "a custom theory needs custom_table");

  if (auto expected = get_string(doc, "expected_degree", "", issues)) {
    try {
      LaurentLiteral lit = parse_laurent_literal(*expected, p.field);
      bool constant = lit.tag == TwistParity::Untwisted &&
                      std::all_of(lit.terms.begin(), lit.terms.end(), [](const auto& kv) { return kv.first == 0; });
      if (!constant)
        issues.add("/expected_degree", "expected degree must be an untwisted constant");
      else
        p.expected_degree = lit;
    } catch (const Error& e) {
      issues.add("/expected_degree", e.what());
    }
  }

  if (!doc.contains("components") || !doc.at("components").is_array() || doc.at("components").empty()) {
    issues.add("/components", "expected a nonempty list of components");
  } else {
    std::set<std::string> ids;
    const Json& comps = doc.at("components");
    for (std::size_t i = 0; i < comps.size(); ++i) {
      std::string where = "/components/" + std::to_string(i);
      FixedComponent c = parse_component(comps[i], where, p.field, issues);
      if (!c.id.empty() && !ids.insert(c.id).second) issues.add(where + "/id", "duplicate id '" + c.id + "'");
      p.components.push_back(std::move(c));
    }
  }

  if (!issues.empty()) issues.raise();
  return p;
}

Json problem_to_json(const LocalizationProblem& p) {
  Json comps = Json::array();
  for (const auto& c : p.components) {
    std::vector<std::pair<std::string, Json>> f = {
        {"class", to_string(c.local_class)},
        {"id", c.id},
        {"kind", kind_to_string(c)},
        {"tangent", reps_to_json(c.tangent_moving)},
    };
    if (c.induced_case) f.emplace_back("m", c.induced_case->weight);
    if (c.flagged) f.emplace_back("flagged", true);
    if (c.virtual_data)
      f.emplace_back("virtual", sorted_object({{"E0", reps_to_json(c.virtual_data->e0_moving)},
                                               {"E1", reps_to_json(c.virtual_data->e1_moving)}}));
    comps.push_back(sorted_object(std::move(f)));
  }
  std::vector<std::pair<std::string, Json>> f = {
      {"char_p", p.char_p},
      {"components", comps},
      {"field", p.field.name()},
      {"invert", p.invert},
      {"sign_flip", p.sign_flip},
      {"theory", theory_to_string(p.theory)},
      {"truncation", p.truncation},
      {"version", 1},
  };
  if (p.custom_table) f.emplace_back("custom_table", *p.custom_table);
  if (p.expected_degree) f.emplace_back("expected_degree", to_string(*p.expected_degree));
  return sorted_object(std::move(f));
}

std::string serialize_problem(const LocalizationProblem& problem) { return dump(problem_to_json(problem)); }

namespace {

bool is_flat(const Json& j) {
  if (!j.is_array()) return false;
  return std::none_of(j.begin(), j.end(), [](const Json& x) { return x.is_structured(); });
}

void write_json(std::ostringstream& out, const Json& j, int indent) {
  std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  if (is_flat(j) && !j.empty()) {
    out << "[";
    for (std::size_t i = 0; i < j.size(); ++i) out << (i ? ", " : "") << j[i].dump();
    out << "]";
    return;
  }
  if (!j.is_structured() || j.empty()) {
    out << j.dump();
    return;
  }
  out << (j.is_object() ? "{\n" : "[\n");
  std::size_t i = 0;
  for (auto it = j.begin(); it != j.end(); ++it, ++i) {
    out << pad;
    if (j.is_object()) out << Json(it.key()).dump() << ": ";
    write_json(out, *it, indent + 2);
    out << (i + 1 < j.size() ? ",\n" : "\n");
  }
  out << std::string(static_cast<std::size_t>(indent), ' ') << (j.is_object() ? "}" : "]");
}

}  // namespace

std::string dump(const Json& j) {
  std::ostringstream out;
  write_json(out, j, 0);
  out << "\n";
  return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------- Euler tables

namespace {

WittPolynomial parse_terms(const Json& arr, const std::string& where, const FieldSpec& field, Issues& issues) {
  WittPolynomial out;
  if (!arr.is_array()) {
    issues.add(where, "expected a list of [exponent, literal] pairs");
    return out;
  }
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const Json& t = arr[i];
    std::string at = where + "/" + std::to_string(i);
    if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer() || !t[1].is_string()) {
      issues.add(at, "expected [exponent, \"literal\"]");
      continue;
    }
    long long k = t[0].get<long long>();
    if (k < 0 || k > kMaxTruncation) {
      issues.add(at, "exponent out of range");
      continue;
    }
    try {
      WittClass c = eval_witt(parse_expression(t[1].get<std::string>()), field);
      auto [it, fresh] = out.emplace(static_cast<int>(k), c);
      if (!fresh) it->second = it->second + c;
    } catch (const Error& e) {
      issues.add(at, e.what());
    }
  }
  return out;
}

}  // namespace

EulerTable parse_euler_table(const std::string& text, const FieldSpec& field, bool sign_flip) {
  Json doc = parse_json(text);
  Issues issues;
  if (!doc.is_object()) {
    issues.add("", "an Euler table file is a JSON object");
    issues.raise();
  }
  check_keys(doc, "", {"version", "theory", "entries", "etilde_square"}, issues);
  auto version = get_int(doc, "version", "", issues);
  if (!version || *version != 1) issues.add("/version", "version 1 required");

  CoeffTheory theory = CoeffTheory::hw();
  if (!doc.contains("theory")) {
    issues.add("/theory", "missing theory");
  } else if (doc.at("theory").is_string()) {
    std::string name = doc.at("theory").get<std::string>();
    if (name == "HW" || name == "KW")
      theory = CoeffTheory::parse(name);
    else
      issues.add("/theory", "expected HW, KW or {name, modulus, residues}");
  } else if (doc.at("theory").is_object()) {
    const Json& t = doc.at("theory");
    check_keys(t, "/theory", {"name", "modulus", "residues"}, issues);
    auto name = get_string(t, "name", "/theory", issues);
    auto modulus = get_int(t, "modulus", "/theory", issues);
    std::vector<int> residues;
    if (t.contains("residues") && t.at("residues").is_array())
      for (const auto& r : t.at("residues"))
        if (r.is_number_integer()) residues.push_back(r.get<int>());
    if (!name || name->empty() || !modulus || *modulus < 0 || residues.empty())
      issues.add("/theory", "custom theory needs name, modulus >= 0 and a nonempty residues list");
    else
      theory = CoeffTheory::custom(*name, static_cast<int>(*modulus), residues);
  } else {
    issues.add("/theory", "expected a string or an object");
  }

  std::map<RepLabel, EulerEntry> entries;
  if (!doc.contains("entries") || !doc.at("entries").is_object()) {
    issues.add("/entries", "expected an object keyed by \"m,sign\"");
  } else {
    for (auto it = doc.at("entries").begin(); it != doc.at("entries").end(); ++it) {
      std::string where = "/entries/" + it.key();
      RepLabel rep;
      try {
        rep = RepLabel::parse(it.key());
      } catch (const Error& e) {
        issues.add(where, e.what());
        continue;
      }
      EulerEntry entry{rep.weight % 2 == 1 ? TwistParity::Untwisted : TwistParity::Twisted, {}};
      const Json& v = it.value();
      if (v.is_object()) {
        check_keys(v, where, {"tag", "terms"}, issues);
        auto tag = get_string(v, "tag", where, issues);
        if (tag && *tag != "twisted" && *tag != "untwisted")
          issues.add(where + "/tag", "tag must be twisted or untwisted");
        else if (tag)
          entry.tag = *tag == "twisted" ? TwistParity::Twisted : TwistParity::Untwisted;
        entry.value = parse_terms(v.contains("terms") ? v.at("terms") : Json::array(), where + "/terms", field, issues);
      } else {
        entry.value = parse_terms(v, where, field, issues);
      }
      entries.emplace(rep, std::move(entry));
    }
  }

  WittPolynomial etilde_square;
  if (!doc.contains("etilde_square"))
    issues.add("/etilde_square", "missing etilde_square");
  else
    etilde_square = parse_terms(doc.at("etilde_square"), "/etilde_square", field, issues);

  if (!issues.empty()) issues.raise();
  return EulerTable::custom(theory, field, std::move(entries), std::move(etilde_square), sign_flip);
}

EulerTable resolve_table(LocalizationProblem& problem, const std::filesystem::path& base_dir) {
  if (!problem.custom_table) return EulerTable::builtin(problem.theory, problem.field, problem.sign_flip);
  std::filesystem::path path = *problem.custom_table;
  if (path.is_relative()) path = base_dir / path;
  EulerTable table = parse_euler_table(read_text_file(path), problem.field, problem.sign_flip);
  const CoeffTheory& t = table.theory();
  if (problem.theory.kind() == CoeffTheory::Kind::Custom) {
    if (t.kind() != CoeffTheory::Kind::Custom || t.name() != problem.theory.name())
      fail(ErrorCode::SchemaError, "problem theory " + theory_to_string(problem.theory) + " but table declares " +
                                       theory_to_string(t));
    problem.theory = t;
  } else if (!(t == problem.theory)) {
    fail(ErrorCode::SchemaError, "problem theory " + theory_to_string(problem.theory) + " but table declares " +
                                     theory_to_string(t));
  }
  return table;
}

// ---------------------------------------------------------------- reports

Json coeff_to_json(const LocalCoeff& c) { return c.to_string(); }

Json class_to_json(const LocalizedClass& x) {
  Json laurent = Json::object();
  for (const auto& [k, c] : x.series().terms()) laurent[std::to_string(k)] = coeff_to_json(c);
  Json precision = x.precision() ? Json(*x.precision()) : Json("exact");
  return sorted_object({{"laurent", laurent}, {"precision", precision}, {"tag", to_string(x.tag())}});
}

namespace {

std::string diagnostic_of(const Error& e) { return std::string(error_name(e.code())) + ": " + e.what(); }

/// Whether dropping induced components leaves the assembled class unchanged.
Json induced_check(const LocalizationProblem& problem, const EulerTable& table, const Assembly& full) {
  LocalizationProblem reduced = problem;
  reduced.components.clear();
  for (const auto& c : problem.components)
    if (c.kind != ComponentKind::Induced) reduced.components.push_back(c);
  if (reduced.components.size() == problem.components.size() || reduced.components.empty()) return nullptr;
  reduced.invert.push_back(static_cast<std::int64_t>(full.inverted));
  try {
    Assembly a = assemble(reduced, table);
    if (a.inverted != full.inverted) return false;
    return a.total.series().equals_up_to_precision(full.total.series()) &&
           (a.total.tag() == full.total.tag() || full.total.is_zero());
  } catch (const Error&) {
    return false;
  }
}

/// Whether the degree is unchanged when the expansion length doubles.
Json truncation_check(const LocalizationProblem& problem, const EulerTable& table, const LocalCoeff& d) {
  LocalizationProblem longer = problem;
  longer.truncation = std::min(problem.truncation * 2, kMaxTruncation);
  try {
    return degree(assemble(longer, table).total) == d;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

LocalizeOutcome run_localize(const LocalizationProblem& problem, const EulerTable& table) {
  Json assembled = nullptr, components = Json::array(), degree_json = nullptr, degree_form = nullptr;
  Json diagnostic = nullptr, inverted = nullptr, expected_match = nullptr;
  Json induced = nullptr, stable = nullptr;
  int code = 0;
  try {
    Assembly a = assemble(problem, table);
    inverted = to_string(a.inverted);
    for (const auto& c : a.components) {
      const auto& comp = *std::find_if(problem.components.begin(), problem.components.end(),
                                       [&](const FixedComponent& f) { return f.id == c.id; });
      components.push_back(
          sorted_object({{"contribution", class_to_json(c.contribution)}, {"id", c.id}, {"kind", kind_to_string(comp)}}));
    }
    assembled = class_to_json(a.total);
    induced = induced_check(problem, table, a);
    try {
      LocalCoeff d = degree(a.total);
      degree_json = d.to_string();
      if (d.is_integral()) degree_form = d.to_witt().representative().to_string();
      stable = truncation_check(problem, table, d);
      if (problem.expected_degree) {
        LocalCoeff want = problem.expected_degree->realize(a.context).series().coefficient(0);
        expected_match = want == d;
      }
    } catch (const Error& e) {
      diagnostic = diagnostic_of(e);
      code = exit_code(e.code());
      if (problem.expected_degree) expected_match = false;
    }
  } catch (const Error& e) {
    diagnostic = diagnostic_of(e);
    code = exit_code(e.code());
  }
  std::vector<std::pair<std::string, Json>> f = {
      {"assembled", assembled},
      {"checks", sorted_object({{"induced_insensitive", induced}, {"truncation_stable", stable}})},
      {"command", "localize"},
      {"components", components},
      {"degree", degree_json},
      {"degree_form", degree_form},
      {"diagnostic", diagnostic},
      {"input", problem_to_json(problem)},
      {"inverted", inverted},
      {"table", table.is_builtin() ? "builtin" : "custom"},
  };
  if (problem.expected_degree) {
    f.emplace_back("expected_degree", to_string(*problem.expected_degree));
    f.emplace_back("expected_match", expected_match);
  }
  return {sorted_object(std::move(f)), code};
}

}  // namespace bnloc
