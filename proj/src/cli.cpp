#include "hgk/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hgk/hom.hpp"
#include "hgk/io.hpp"
#include "hgk/kan.hpp"

namespace hgk::cli {

namespace {

using io::Json;
using io::Kind;

struct Options {
  std::string format = "human";
  std::string file;
  std::string kind;
  std::string what;
  std::optional<int> n;
  std::optional<int> upto;
  std::optional<std::string> coeff;
  std::optional<std::string> out_path;
};

// Raised for precondition problems detected by the frontend itself.
class Precondition : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Precondition("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Precondition("cannot write file '" + path + "'");
  out << text;
}

Json group_json(const FGAbelianGroup& g) {
  Json j = io::to_json(g);
  j["group"] = g.to_string();
  return j;
}

Json groups_json(const std::vector<FGAbelianGroup>& gs) {
  Json a = Json::array();
  for (std::size_t i = 0; i < gs.size(); ++i) {
    Json j = Json::object();
    j["degree"] = i;
    const Json g = group_json(gs[i]);
    for (auto it = g.begin(); it != g.end(); ++it) j[it.key()] = it.value();
    a.push_back(std::move(j));
  }
  return a;
}

Json level_sizes(const SimplicialSet& X) {
  Json a = Json::array();
  for (int l = 0; l <= X.truncation(); ++l) a.push_back(X.size(l));
  return a;
}

Json failures_json(const CheckReport& rep, const SimplicialSet* fiber_space) {
  Json a = Json::array();
  for (const auto& f : rep.failures) {
    Json j = Json::object();
    j["level"] = f.level;
    j["index"] = f.index;
    j["kind"] = to_string(f.kind);
    j["description"] = f.description;
    Json fiber = Json::array();
    for (Index x : f.fiber) {
      if (fiber_space && f.level <= fiber_space->truncation() && x < fiber_space->size(f.level))
        fiber.push_back(fiber_space->name(f.level, x));
      else
        fiber.push_back(x);
    }
    j["fiber"] = std::move(fiber);
    a.push_back(std::move(j));
  }
  return a;
}

Json statistics_json(const CheckReport& rep) {
  Json a = Json::array();
  for (const auto& s : rep.statistics) {
    a.push_back(Json{{"map", s.map},
                     {"level", s.level},
                     {"index", s.index},
                     {"source_size", s.source_size},
                     {"target_size", s.target_size},
                     {"min_fiber", s.min_fiber},
                     {"max_fiber", s.max_fiber}});
  }
  return a;
}

Json command_echo(const std::string& name, const Options& o) {
  Json j = Json::object();
  j["name"] = name;
  j["file"] = o.file;
  if (!o.kind.empty()) j["kind"] = o.kind;
  if (!o.what.empty()) j["what"] = o.what;
  if (o.n) j["n"] = *o.n;
  if (o.upto) j["upto"] = *o.upto;
  if (o.coeff) j["coeff"] = *o.coeff;
  if (o.out_path) j["out"] = *o.out_path;
  return j;
}

template <class T>
const T& expect(const io::Document& doc, std::initializer_list<Kind> kinds, const std::string& use) {
  const T* p = std::get_if<T>(&doc.body);
  bool ok = p != nullptr;
  if (ok) {
    ok = false;
    for (Kind k : kinds) ok = ok || k == doc.kind;
  }
  if (!ok) throw Precondition(use + " does not apply to a " + io::to_string(doc.kind) + " document");
  return *p;
}

int nonnegative(const std::optional<int>& v, int fallback, const char* name) {
  const int x = v.value_or(fallback);
  if (x < 0) throw Precondition(std::string("--") + name + " must be nonnegative");
  return x;
}

// ---- report emission ----

struct Report {
  Json body = Json::object();
  std::vector<std::string> human;
  std::optional<std::string> document;  // printed in human mode when not written to a file
};

void emit(const Options& o, const Report& r, int code, double millis, std::ostream& out) {
  if (o.format == "json") {
    Json j = r.body;
    j["exit_code"] = code;
    out << io::dump(j);
    return;
  }
  for (const auto& line : r.human) out << line << "\n";
  if (r.document && !o.out_path) out << *r.document;
  std::ostringstream t;
  t.setf(std::ios::fixed);
  t.precision(1);
  t << millis;
  out << "wall time: " << t.str() << " ms\n";
}

// ---- validate ----

int cmd_validate(const Options& o, Report& r) {
  r.body["command"] = command_echo("validate", o);
  io::Document doc;
  try {
    doc = io::parse_document_text(read_file(o.file));
  } catch (const Precondition&) {
    throw;
  } catch (const io::ParseError& e) {
    r.body["verdict"] = "parse-error";
    r.body["error"] = e.what();
    r.human = {"parse error: " + std::string(e.what())};
    return kParse;
  } catch (const InvariantViolation& e) {
    r.body["verdict"] = "fail";
    r.body["violation"] = e.what();
    r.human = {"FAIL: " + std::string(e.what())};
    return kFail;
  }
  r.body["document_kind"] = io::to_string(doc.kind);
  const auto v = io::validate_document(doc);
  if (v) {
    r.body["verdict"] = "fail";
    r.body["violation"] = *v;
    r.human = {io::to_string(doc.kind) + ": FAIL", "  " + *v};
    return kFail;
  }
  r.body["verdict"] = "pass";
  r.human = {io::to_string(doc.kind) + ": PASS"};
  return kPass;
}

// Parses and validates; invalid documents are a precondition error for
// check and compute.
io::Document load_valid(const Options& o) {
  io::Document doc = io::parse_document_text(read_file(o.file));
  if (auto v = io::validate_document(doc))
    throw Precondition("invalid " + io::to_string(doc.kind) + " document: " + *v);
  return doc;
}

// ---- check ----

int cmd_check(const Options& o, Report& r) {
  r.body["command"] = command_echo("check", o);
  const io::Document doc = load_valid(o);
  CheckReport rep;
  const SimplicialSet* fiber_space = nullptr;
  const auto& site = finite_set_site();
  const int n = nonnegative(o.n, 1, "n");
  if (o.kind == "kan") {
    const auto& X = *expect<SSetPtr>(doc, {Kind::simplicial_set}, "kan");
    rep = is_kan(X, nonnegative(o.upto, X.truncation(), "upto"));
    fiber_space = &X;
  } else if (o.kind == "hypergroupoid") {
    if (doc.kind == Kind::simplicial_abelian_group) {
      rep = is_abelian_hypergroupoid(std::get<SimplicialAbelianGroup>(doc.body), n);
    } else {
      const auto& X = *expect<SSetPtr>(doc, {Kind::simplicial_set}, "hypergroupoid");
      rep = is_n_hypergroupoid(X, n);
      fiber_space = &X;
    }
  } else if (o.kind == "cartesian") {
    const auto& f = expect<SimplicialMorphism>(doc, {Kind::morphism}, "cartesian");
    rep = is_cartesian(f);
    fiber_space = &f.source();
  } else if (o.kind == "trivial-relative") {
    if (doc.kind == Kind::cover) {
      rep = verify_nerve_trivial(std::get<FiniteCover>(doc.body), nonnegative(o.upto, 3, "upto"));
    } else {
      const auto& f = expect<SimplicialMorphism>(doc, {Kind::morphism}, "trivial-relative");
      rep = is_trivial_relative(f, n, site);
      fiber_space = &f.source();
    }
  } else if (o.kind == "relative-hypergroupoid") {
    const auto& f = expect<SimplicialMorphism>(doc, {Kind::morphism}, "relative-hypergroupoid");
    rep = is_relative_hypergroupoid(f, n, site);
    fiber_space = &f.source();
  } else {
    throw Precondition("unknown check kind '" + o.kind + "'");
  }
  const bool ok = rep.passed();
  r.body["check"] = rep.check;
  r.body["verdict"] = ok ? "pass" : "fail";
  r.body["failures"] = failures_json(rep, fiber_space);
  r.body["statistics"] = statistics_json(rep);
  r.human.push_back(rep.check + ": " + (ok ? "PASS" : "FAIL"));
  for (const auto& f : rep.failures)
    r.human.push_back("  level " + std::to_string(f.level) + (f.index >= 0 ? ", index " + std::to_string(f.index) : "") +
                      " [" + to_string(f.kind) + "]: " + f.description);
  r.human.push_back("  " + std::to_string(rep.statistics.size()) + " matching maps examined");
  return ok ? kPass : kFail;
}

// ---- compute ----

void attach_document(const Options& o, Report& r, Kind kind, io::Body body) {
  const Json doc = io::serialize(io::make_document(kind, std::move(body)));
  const std::string text = io::dump(doc);
  if (o.out_path) {
    write_file(*o.out_path, text);
    r.body["result"]["written_to"] = *o.out_path;
    r.human.push_back("document written to " + *o.out_path);
  } else {
    r.body["result"]["document"] = doc;
    r.document = text;
  }
}

std::string sizes_line(const Json& sizes) {
  std::string s;
  for (const auto& x : sizes) s += (s.empty() ? "" : ", ") + std::to_string(x.get<std::size_t>());
  return "level sizes: " + s;
}

std::string groups_line(const std::string& label, const std::vector<FGAbelianGroup>& gs) {
  std::string s = label + ":";
  for (std::size_t i = 0; i < gs.size(); ++i) s += " [" + std::to_string(i) + "] " + gs[i].to_string();
  return s;
}

const char* module_of(const std::string& what) {
  if (what == "nerve" || what == "pi") return "groupoids";
  if (what == "cech") return "cech";
  if (what == "cosk") return "ssets-core";
  if (what == "hom-count") return "matching-kan";
  return "abelian";
}

void compute_body(const Options& o, Report& r) {
  const std::string& w = o.what;
  r.body["result"] = Json::object();
  if (w == "em") {
    // The document is optional: a group document is not needed, only --coeff.
    const FGAbelianGroup A = io::parse_group(o.coeff.value_or("Z/2"));
    const int n = nonnegative(o.n, 1, "n");
    const int N = nonnegative(o.upto, n + 2, "upto");
    const auto K = em_space(A, n, N);
    Json gs = Json::array();
    for (int l = 0; l <= N; ++l) gs.push_back(K.level(l).to_string());
    r.body["result"]["levels"] = gs;
    r.human.push_back("K(" + A.to_string() + ", " + std::to_string(n) + ") truncated at " + std::to_string(N));
    std::string line = "levels:";
    for (const auto& g : gs) line += " " + g.get<std::string>();
    r.human.push_back(line);
    attach_document(o, r, Kind::simplicial_abelian_group, K);
    return;
  }
  const io::Document doc = load_valid(o);
  if (w == "nerve") {
    const auto& g = expect<FiniteGroupoid>(doc, {Kind::groupoid}, "nerve");
    const auto X = nerve(g, nonnegative(o.upto ? o.upto : o.n, 3, "upto"));
    r.body["result"]["level_sizes"] = level_sizes(X);
    r.human.push_back(sizes_line(r.body["result"]["level_sizes"]));
    attach_document(o, r, Kind::simplicial_set, make_sset(X));
  } else if (w == "pi") {
    const auto& X = *expect<SSetPtr>(doc, {Kind::simplicial_set}, "pi");
    const auto g = fundamental_groupoid(X);
    r.body["result"]["objects"] = g.object_count();
    r.body["result"]["arrows"] = g.arrow_count();
    r.body["result"]["components"] = connected_components(g).size();
    r.human.push_back(std::to_string(g.object_count()) + " objects, " + std::to_string(g.arrow_count()) +
                      " arrows, " + std::to_string(connected_components(g).size()) + " components");
    attach_document(o, r, Kind::groupoid, g);
  } else if (w == "homology") {
    std::vector<FGAbelianGroup> H;
    if (doc.kind == Kind::simplicial_abelian_group)
      H = homotopy_groups(std::get<SimplicialAbelianGroup>(doc.body));
    else
      H = homology(expect<ChainComplex>(doc, {Kind::chain_complex}, "homology"));
    r.body["result"]["homology"] = groups_json(H);
    r.human.push_back(groups_line("homology", H));
  } else if (w == "cech") {
    const int D = nonnegative(o.upto ? o.upto : o.n, 2, "upto");
    std::vector<FGAbelianGroup> H;
    if (doc.kind == Kind::presheaf) {
      if (o.coeff) throw Precondition("--coeff does not apply to a presheaf document");
      const auto& p = std::get<io::PresheafDocument>(doc.body);
      H = cech_cohomology(p.cover, p.presheaf, D);
    } else {
      const auto& c = expect<FiniteCover>(doc, {Kind::cover}, "cech");
      const auto A = io::parse_group(o.coeff.value_or("Z"));
      r.body["result"]["coefficients"] = A.to_string();
      H = cech_cohomology(c, constant_presheaf(c, A), D);
    }
    r.body["result"]["cohomology"] = groups_json(H);
    r.human.push_back(groups_line("cohomology", H));
  } else if (w == "cosk") {
    const auto& X = *expect<SSetPtr>(doc, {Kind::simplicial_set}, "cosk");
    const int m = nonnegative(o.n, X.truncation(), "n");
    const int N = nonnegative(o.upto, X.truncation() + 1, "upto");
    const auto C = coskeleton(X, m, N);
    r.body["result"]["level_sizes"] = level_sizes(C);
    r.human.push_back(sizes_line(r.body["result"]["level_sizes"]));
    attach_document(o, r, Kind::simplicial_set, make_sset(C));
  } else if (w == "hom-count") {
    if (doc.kind == Kind::morphism) {
      const auto& f = std::get<SimplicialMorphism>(doc.body);
      const auto count = count_homs(f.source(), f.target());
      r.body["result"]["count"] = count;
      r.human.push_back("|Hom(source, target)| = " + std::to_string(count));
    } else {
      const auto& X = *expect<SSetPtr>(doc, {Kind::simplicial_set}, "hom-count");
      const int N = X.truncation();
      Json rows = Json::array();
      auto row = [&](const std::string& shape, int m, int k, const SimplicialSet& K) {
        const auto c = count_homs(K, X);
        Json j = Json{{"shape", shape}, {"m", m}};
        if (k >= 0) j["k"] = k;
        j["count"] = c;
        rows.push_back(std::move(j));
        r.human.push_back(shape + " m=" + std::to_string(m) + (k >= 0 ? " k=" + std::to_string(k) : "") + ": " +
                          std::to_string(c));
      };
      const int top = nonnegative(o.upto, N, "upto");
      if (top > N) throw TruncationTooSmall(N, top);
      for (int m = 0; m <= top; ++m) {
        row("simplex", m, -1, standard_simplex(m, N));
        if (m >= 1) row("boundary", m, -1, boundary(m, N));
        if (m >= 1)
          for (int k = 0; k <= m; ++k) row("horn", m, k, horn(m, k, N));
      }
      r.body["result"]["counts"] = std::move(rows);
    }
  } else if (w == "normalize") {
    const auto& A = expect<SimplicialAbelianGroup>(doc, {Kind::simplicial_abelian_group}, "normalize");
    const auto C = normalized_complex(A);
    Json gs = Json::array();
    for (const auto& g : C.groups) gs.push_back(g.to_string());
    r.body["result"]["groups"] = gs;
    r.human.push_back(groups_line("normalized", C.groups));
    attach_document(o, r, Kind::chain_complex, C);
  } else if (w == "denormalize") {
    const auto& C = expect<ChainComplex>(doc, {Kind::chain_complex}, "denormalize");
    const int N = nonnegative(o.upto ? o.upto : o.n, static_cast<int>(C.groups.size()) + 1, "upto");
    const auto A = denormalize(C, N);
    Json gs = Json::array();
    for (int l = 0; l <= N; ++l) gs.push_back(A.level(l).to_string());
    r.body["result"]["levels"] = gs;
    std::vector<FGAbelianGroup> levels;
    for (int l = 0; l <= N; ++l) levels.push_back(A.level(l));
    r.human.push_back(groups_line("levels", levels));
    attach_document(o, r, Kind::simplicial_abelian_group, A);
  } else {
    throw Precondition("unknown computation '" + w + "'");
  }
}

int cmd_compute(const Options& o, Report& r) {
  r.body["command"] = command_echo("compute", o);
  try {
    compute_body(o, r);
  } catch (const io::ParseError&) {
    throw;
  } catch (const Precondition&) {
    throw;
  } catch (const TruncationTooSmall&) {
    throw;
  } catch (const EnumerationLimitExceeded&) {
    throw;
  } catch (const Error& e) {
    throw Precondition(std::string(module_of(o.what)) + ": " + e.what());
  }
  r.body["verdict"] = "ok";
  return kPass;
}

// HGK_MAX_ENUM: a positive integer (0 disables the cap).
std::optional<std::string> apply_environment() {
  const char* v = std::getenv("HGK_MAX_ENUM");
  if (!v) return std::nullopt;
  const std::string s(v);
  std::size_t used = 0;
  unsigned long long x = 0;
  try {
    x = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size() || s[0] == '-') return "HGK_MAX_ENUM must be a nonnegative integer, got '" + s + "'";
  set_enumeration_limit(static_cast<std::size_t>(x));
  return std::nullopt;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"hgk: finite hypergroupoid verifier and calculator", "hgk"};
  app.require_subcommand(1);
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"human", "json"}));

  auto* validate = app.add_subcommand("validate", "check a document against its schema and invariants");
  validate->add_option("file", o.file, "document path")->required();

  auto* check = app.add_subcommand("check", "run a Kan, hypergroupoid or relative check");
  check->add_option("file", o.file, "document path")->required();
  check->add_option("--kind", o.kind, "check to run")
      ->required()
      ->check(CLI::IsMember({"kan", "hypergroupoid", "cartesian", "trivial-relative", "relative-hypergroupoid"}));
  check->add_option("--n", o.n, "hypergroupoid degree");
  check->add_option("--upto", o.upto, "highest level examined");

  auto* compute = app.add_subcommand("compute", "compute a derived object");
  compute->add_option("file", o.file, "document path (optional for em)");
  compute->add_option("--what", o.what, "computation")
      ->required()
      ->check(CLI::IsMember(
          {"nerve", "pi", "homology", "em", "cech", "cosk", "hom-count", "normalize", "denormalize"}));
  compute->add_option("--n", o.n, "degree parameter");
  compute->add_option("--upto", o.upto, "truncation level or top degree");
  compute->add_option("--coeff", o.coeff, "coefficient group, e.g. Z, Z/2, Z^2+Z/3");
  compute->add_option("--out", o.out_path, "write the computed document here");

  for (auto* sub : {validate, check, compute}) sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"human", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }
  if (auto bad = apply_environment()) {
    err << "hgk: " << *bad << "\n";
    return kUsage;
  }
  if (compute->parsed() && o.file.empty() && o.what != "em") {
    err << "hgk: compute --what " << o.what << " needs a document\n";
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  Report r;
  int code = kPass;
  std::string command = validate->parsed() ? "validate" : check->parsed() ? "check" : "compute";
  try {
    if (validate->parsed())
      code = cmd_validate(o, r);
    else if (check->parsed())
      code = cmd_check(o, r);
    else
      code = cmd_compute(o, r);
  } catch (const io::ParseError& e) {
    code = kParse;
    r.body["verdict"] = "parse-error";
    r.body["error"] = e.what();
    r.human = {"parse error: " + std::string(e.what())};
    err << "hgk: parse error: " << e.what() << "\n";
  } catch (const Error& e) {
    // Preconditions, truncation, enumeration limits and library errors.
    code = kUsage;
    r.body["verdict"] = "error";
    r.body["error"] = e.what();
    r.human = {"error: " + std::string(e.what())};
    err << "hgk: " << e.what() << "\n";
  }
  if (!r.body.contains("command")) r.body["command"] = command_echo(command, o);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  emit(o, r, code, ms, out);
  return code;
}

}  // namespace hgk::cli
