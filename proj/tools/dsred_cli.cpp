// dsred: command-line front end for the reduction, table verification and screening suites.
//
// Exit codes: 0 all checks pass, 1 some check fails, 2 usage or configuration error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <regex>
#include <sstream>

#include "dsred/checks.hpp"
#include "dsred/freefield.hpp"

using namespace dsred;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr const char* kSchema = "dsred-report/1";

struct Config {
  std::string command;
  std::string alpha, k;  // rational or "symbolic"; empty means the command default
  std::string c, epsilon;
  std::string cutoff;
  std::string format = "text";
  std::string out;
  std::string table;
  std::string basis = "sw";
  std::uint64_t seed = 1;
  int points = 0;
};

struct Record {
  std::string id;
  std::string status = "pass";  // pass, fail, reduced-to-ideal
  std::string detail;
  std::string residual;
  json certificate;
  double seconds = 0;
};

struct Report {
  std::string suite;
  std::vector<Record> checks;
  json data = json::object();
  bool ok() const {
    for (auto& r : checks)
      if (r.status == "fail") return false;
    return true;
  }
};

class Stopwatch {
 public:
  double lap() {
    auto now = std::chrono::steady_clock::now();
    double s = std::chrono::duration<double>(now - t_).count();
    t_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point t_ = std::chrono::steady_clock::now();
};

Rational parse_rational(const std::string& s, const std::string& what) {
  try {
    Rational q(s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::ConfigParse, what + ": '" + s + "' is not an exact rational");
  }
}

// A parameter given as a rational, or symbolic (the variable itself).
Scalar parameter(const std::string& s, const std::string& fallback, Var v, const std::string& what) {
  const std::string& t = s.empty() ? fallback : s;
  if (t == "symbolic") return Scalar::var(v);
  return Scalar(parse_rational(t, what));
}

Rational rational_parameter(const std::string& s, const std::string& fallback, const std::string& what) {
  const std::string& t = s.empty() ? fallback : s;
  if (t == "symbolic") throw Error(ErrorCode::ConfigParse, what + " must be rational for this command");
  return parse_rational(t, what);
}

Rational cutoff_of(const Config& cfg, const Rational& fallback) {
  if (cfg.cutoff.empty()) return fallback;
  Rational q = parse_rational(cfg.cutoff, "--cutoff");
  if (q < Rational(1, 2) || q > 5 || sgn(Rational(q * 2).get_den() - 1) != 0)
    throw Error(ErrorCode::ConfigParse, "--cutoff must be a half-integer in [1/2, 5]");
  return q;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigParse, "cannot open " + path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// FNV-1a; only used to fingerprint inputs in reports.
std::string digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return "fnv1a64:" + os.str();
}

json config_json(const Config& cfg) {
  json j;
  j["alpha"] = cfg.alpha;
  j["k"] = cfg.k;
  j["c"] = cfg.c;
  j["epsilon"] = cfg.epsilon;
  j["cutoff"] = cfg.cutoff;
  j["basis"] = cfg.basis;
  j["table"] = cfg.table;
  j["seed"] = cfg.seed;
  j["points"] = cfg.points;
  return j;
}

// Radicands of the named radicals occurring in the given renderings (SQRT<p> and I are
// self-explanatory and left out).
json radical_legend(const std::vector<std::string>& texts) {
  json out = json::object();
  auto& reg = RadicalRegistry::instance();
  for (int i = 0; i < reg.size(); ++i) {
    const auto& r = reg.info(i);
    if (r.prime > 0 || i == kI) continue;
    std::regex word("\\b" + r.name + "\\b");
    for (auto& t : texts)
      if (std::regex_search(t, word)) {
        out[r.name] = r.den == Poly(1) ? to_string(r.num) : "(" + to_string(r.num) + ") / (" + to_string(r.den) + ")";
        break;
      }
  }
  return out;
}

std::string pair_id(const PairCheck& p) { return "[" + p.a + " _ " + p.b + "]"; }

void add_pairs(Report& rep, const VerifyReport& v, const Ambient<Scalar>& amb, const std::string& prefix,
               Stopwatch& sw) {
  for (auto& p : v.pairs) {
    Record r;
    r.id = prefix + pair_id(p);
    r.status = status_name(p.status);
    if (!p.residual.is_zero()) r.residual = to_string(amb, p.residual);
    for (std::size_t n = 0; n < p.certificates.size(); ++n)
      for (auto& [desc, c] : p.certificates[n])
        r.certificate.push_back({{"lambda_power", n}, {"element", desc}, {"coefficient", to_string(c)}});
    r.seconds = sw.lap();
    rep.checks.push_back(std::move(r));
  }
}

BracketTable table_or(const Config& cfg, const std::string& shipped) {
  return parse_table_file(cfg.table.empty() ? data_path(shipped) : cfg.table);
}

// ---------------------------------------------------------------------------

Report run_central_charge(const Config& cfg) {
  Report rep{"central-charge"};
  Stopwatch sw;
  Scalar a = parameter(cfg.alpha, "symbolic", kA, "--alpha"), k = parameter(cfg.k, "symbolic", kK, "--k");
  Reduction R(a, k);
  Scalar c = R.central_charge_formula();
  Record r{"formula-equals-closed-form"};
  if (!(c == central_charge_closed(a, k))) r.status = "fail";
  r.detail = "c = " + to_string(c);
  r.seconds = sw.lap();
  rep.checks.push_back(r);
  rep.data["c"] = to_string(c);
  try {
    auto gs = build_generators(R);
    rep.data["epsilon"] = to_string(gs.eps);
    rep.data["mu"] = to_string(gs.mu);
    auto legend = radical_legend({rep.data["epsilon"], rep.data["mu"]});
    if (!legend.empty()) rep.data["radicals"] = legend;
  } catch (const Error& e) {
    rep.data["epsilon"] = nullptr;
    rep.data["note"] = e.what();
  }
  return rep;
}

Report run_reduce(const Config& cfg) {
  Report rep{"reduce"};
  Stopwatch sw;
  Scalar a = parameter(cfg.alpha, "symbolic", kA, "--alpha"), k = parameter(cfg.k, "symbolic", kK, "--k");
  if (cfg.basis != "sw" && cfg.basis != "sv") throw Error(ErrorCode::ConfigParse, "--basis must be sw or sv");
  Reduction R(a, k);
  auto gs = build_generators(R);
  Assignment sw_gens = sw_images(gs);
  std::vector<std::string> order{"G", "L", "H", "Mt", "W", "U"};
  Assignment shown = sw_gens;
  if (cfg.basis == "sv") {
    if (!(gs.c == Scalar(Rational(21, 2))) || !gs.eps.is_zero())
      throw Error(ErrorCode::ConfigParse, "--basis sv needs c = 21/2 and eps = 0, here c = " + to_string(gs.c));
    shown = sv_images(R.small(), sw_gens, gs.mu);
    order = {"L", "G", "Phi", "K", "X", "M"};
  }
  sw.lap();
  const auto& amb = R.small().ambient();
  rep.data["c"] = to_string(gs.c);
  rep.data["epsilon"] = to_string(gs.eps);
  rep.data["mu"] = to_string(gs.mu);
  json gens = json::object();
  for (auto& n : order) {
    Record r{n + " d-closed"};
    if (!R.d0(R.embed(shown.at(n))).is_zero()) r.status = "fail";
    r.detail = to_string(amb, shown.at(n));
    r.seconds = sw.lap();
    gens[n] = r.detail;
    rep.checks.push_back(std::move(r));
  }
  rep.data["generators"] = gens;
  std::vector<std::string> texts{rep.data["epsilon"], rep.data["mu"]};
  for (auto& [n, t] : gens.items()) texts.push_back(t);
  auto legend = radical_legend(texts);
  if (!legend.empty()) rep.data["radicals"] = legend;
  return rep;
}

Report run_verify_sw(const Config& cfg) {
  Report rep{"verify-sw"};
  Stopwatch sw;
  std::vector<std::pair<Scalar, Scalar>> pts;
  if (cfg.points > 0) {
    if (!cfg.alpha.empty() || !cfg.k.empty()) throw Error(ErrorCode::ConfigParse, "--points excludes --alpha/--k");
    for (auto& [a, k] : random_parameter_points(cfg.seed, cfg.points)) pts.emplace_back(Scalar(a), Scalar(k));
  } else {
    pts.emplace_back(parameter(cfg.alpha, "symbolic", kA, "--alpha"), parameter(cfg.k, "symbolic", kK, "--k"));
  }
  BracketTable formal = table_or(cfg, "tables/sw.table");
  json used = json::array();
  for (auto& [a, k] : pts) {
    Reduction R(a, k);
    auto gs = build_generators(R);
    Scalar c = cfg.c.empty() ? gs.c : Scalar(parse_rational(cfg.c, "--c"));
    Scalar eps = cfg.epsilon.empty() ? gs.eps : Scalar(parse_rational(cfg.epsilon, "--epsilon"));
    std::string prefix = pts.size() > 1 ? "(" + to_string(a) + ", " + to_string(k) + ") " : "";
    used.push_back({{"alpha", to_string(a)}, {"k", to_string(k)}, {"c", to_string(c)}, {"epsilon", to_string(eps)}});
    auto v = verify_homomorphism(sw_table(formal, c, eps), sw_images(gs), R.small());
    add_pairs(rep, v, R.small().ambient(), prefix, sw);
  }
  rep.data["points"] = used;
  return rep;
}

Report run_verify_sv(const Config& cfg) {
  Report rep{"verify-sv"};
  Stopwatch sw;
  Scalar a(rational_parameter(cfg.alpha, "1", "--alpha")), k(rational_parameter(cfg.k, "-2/3", "--k"));
  Reduction R(a, k);
  auto gs = build_generators(R);
  if (!(gs.c == Scalar(Rational(21, 2))) || !gs.eps.is_zero())
    throw Error(ErrorCode::ConfigParse, "verify-sv needs c = 21/2 and eps = 0, here c = " + to_string(gs.c));
  FreeField F(R, gs.sqrt_k);
  Assignment sw_free = project_images(F, sw_images(gs));
  Assignment sv = sv_images(F.engine(), sw_free, gs.mu);
  IdealComponents ideal(sv_ideal(cutoff_of(cfg, 5)), sw_table(gs.c, gs.eps), sw_free, F.engine());
  Record gen{"ideal-generator-nonzero"};
  if (ideal.generator().is_zero()) gen.status = "fail";
  gen.detail = to_string(F.ambient(), ideal.generator());
  gen.seconds = sw.lap();
  rep.checks.push_back(gen);
  json dims = json::object();
  for (auto& w : ideal.weights()) dims[w.get_str()] = ideal.dim(w);
  rep.data["ideal_dims"] = dims;
  auto v = verify_homomorphism(table_or(cfg, "tables/sv_g2.table"), sv, F.engine(), &ideal);
  add_pairs(rep, v, F.ambient(), "", sw);
  return rep;
}

Report run_screenings(const Config& cfg) {
  Report rep{"screenings"};
  Stopwatch sw;
  Scalar a(rational_parameter(cfg.alpha, "1", "--alpha")), k(rational_parameter(cfg.k, "-2/3", "--k"));
  Reduction R(a, k);
  auto gs = build_generators(R);
  FreeField F(R, gs.sqrt_k);
  sw.lap();
  for (auto& [n, e] : project_images(F, sw_images(gs)))
    for (int i = 0; i < 3; ++i) {
      Record r{"Q" + std::to_string(i + 1) + " " + n};
      SExpr z = F.screen(i, e);
      if (!z.is_zero()) {
        r.status = "fail";
        r.residual = to_string(F.ambient(), z);
      }
      r.seconds = sw.lap();
      rep.checks.push_back(std::move(r));
    }
  return rep;
}

Report run_kernel_dims(const Config& cfg) {
  Report rep{"kernel-dims"};
  Stopwatch sw;
  Scalar a(rational_parameter(cfg.alpha, "3/7", "--alpha")), k(rational_parameter(cfg.k, "5/11", "--k"));
  Reduction R(a, k);
  auto gs = build_generators(R);
  FreeField F(R, gs.sqrt_k);
  auto rows = F.kernel_dims(cutoff_of(cfg, 3), sw_table(gs.c, gs.eps), project_images(F, sw_images(gs)));
  json out = json::array();
  for (auto& row : rows) {
    Record r{"weight " + row.weight.get_str()};
    if (row.kernel_dim != row.generated_dim) r.status = "fail";
    r.detail = "space " + std::to_string(row.space_dim) + ", kernel " + std::to_string(row.kernel_dim) +
               ", generated " + std::to_string(row.generated_dim);
    r.seconds = sw.lap();
    rep.checks.push_back(std::move(r));
    out.push_back({{"weight", row.weight.get_str()},
                   {"space", row.space_dim},
                   {"kernel", row.kernel_dim},
                   {"generated", row.generated_dim}});
  }
  rep.data["rows"] = out;
  return rep;
}

Report run_axioms(const Config& cfg) {
  Report rep{"axioms"};
  Stopwatch sw;
  Scalar a = parameter(cfg.alpha, "symbolic", kA, "--alpha"), k = parameter(cfg.k, "symbolic", kK, "--k");
  auto add = [&](const std::string& prefix, const std::vector<CheckRecord>& recs) {
    for (auto& c : recs) rep.checks.push_back({prefix + c.id, c.pass ? "pass" : "fail", c.detail, "", {}, c.seconds});
  };
  add("structure/", structure_checks(SuperAlgebra(a)));
  Reduction R(a, k);
  add("small/", AxiomSuite<Scalar>(R.small(), cfg.seed).run());
  add("complex/", AxiomSuite<Scalar>(R.full(), cfg.seed).run());
  sw.lap();
  Record d{"complex/d-squared"};
  if (!R.full().bracket(R.d(), R.d()).is_zero()) d.status = "fail";
  d.seconds = sw.lap();
  rep.checks.push_back(d);
  return rep;
}

// ---------------------------------------------------------------------------

std::string timestamp() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

std::string render(const Report& rep, const Config& cfg, const std::string& input_digest) {
  if (cfg.format == "json") {
    json j;
    j["schema"] = kSchema;
    j["suite"] = rep.suite;
    j["tool_version"] = kVersion;
    j["input_digest"] = input_digest;
    j["config"] = config_json(cfg);
    j["timestamp"] = timestamp();
    j["status"] = rep.ok() ? "pass" : "fail";
    json checks = json::array();
    for (auto& r : rep.checks) {
      json c;
      c["id"] = r.id;
      c["status"] = r.status;
      if (!r.detail.empty()) c["detail"] = r.detail;
      if (!r.residual.empty()) c["residual"] = r.residual;
      if (!r.certificate.is_null()) c["certificate"] = r.certificate;
      c["seconds"] = r.seconds;
      checks.push_back(c);
    }
    j["checks"] = checks;
    j["data"] = rep.data;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "suite: " << rep.suite << "\n";
  if (rep.suite == "central-charge")
    for (auto& [key, v] : rep.data.items())
      if (v.is_string()) os << key << " = " << v.get<std::string>() << "\n";
  if (rep.data.contains("radicals"))
    for (auto& [n, v] : rep.data["radicals"].items()) os << n << "^2 = " << v.get<std::string>() << "\n";
  for (auto& r : rep.checks) {
    os << r.status << "  " << r.id;
    if (rep.suite == "reduce")
      os << " = " << r.detail;
    else if (!r.detail.empty())
      os << "  (" << r.detail << ")";
    os << "\n";
    if (!r.residual.empty()) os << "    residual: " << r.residual << "\n";
  }
  if (rep.data.contains("ideal_dims")) {
    os << "ideal dimensions:";
    for (auto& [w, d] : rep.data["ideal_dims"].items()) os << " " << w << ":" << d.get<int>();
    os << "\n";
  }
  os << "status: " << (rep.ok() ? "pass" : "fail") << "\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduction of D(2,1;alpha), W-algebra tables and screenings"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub, bool params) {
    if (params) {
      sub->add_option("--alpha", cfg.alpha, "alpha as an exact rational, or 'symbolic'");
      sub->add_option("--k", cfg.k, "level as an exact rational, or 'symbolic'");
    }
    sub->add_option("--format", cfg.format, "report format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out", cfg.out, "write the report to this file");
    return sub;
  };
  common(app.add_subcommand("central-charge", "central charge, eps and mu at (alpha, k)"), true);
  auto reduce = common(app.add_subcommand("reduce", "build and print the W-algebra generators"), true);
  reduce->add_option("--basis", cfg.basis, "sw (G L H Mt W U) or sv (L G Phi K X M)");
  auto vsw = common(app.add_subcommand("verify-sw", "check the SW(3/2,3/2,2) brackets of the generators"), true);
  vsw->add_option("--c", cfg.c, "override the table's c");
  vsw->add_option("--epsilon", cfg.epsilon, "override the table's eps");
  vsw->add_option("--table", cfg.table, "bracket table file in c, eps, MU");
  vsw->add_option("--points", cfg.points, "verify at this many seeded random rational points instead");
  vsw->add_option("--seed", cfg.seed, "seed for --points");
  auto vsv = common(app.add_subcommand("verify-sv", "check the G2 brackets modulo the weight 7/2 ideal"), true);
  vsv->add_option("--cutoff", cfg.cutoff, "weight cutoff of the ideal (default 5)");
  vsv->add_option("--table", cfg.table, "bracket table file for L G Phi K X M");
  common(app.add_subcommand("screenings", "apply the screening zero modes to the projected generators"), true);
  auto kd = common(app.add_subcommand("kernel-dims", "screening kernel against generated subspace by weight"), true);
  kd->add_option("--cutoff", cfg.cutoff, "highest weight (default 3)");
  auto ax = common(app.add_subcommand("axioms", "structure and engine property suites"), true);
  ax->add_option("--seed", cfg.seed, "seed for the random words");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    std::string inputs = cfg.command + "\n" + config_json(cfg).dump();
    if (!cfg.table.empty()) inputs += "\n" + read_file(cfg.table);
    Report rep;
    if (cfg.command == "central-charge") rep = run_central_charge(cfg);
    else if (cfg.command == "reduce") rep = run_reduce(cfg);
    else if (cfg.command == "verify-sw") rep = run_verify_sw(cfg);
    else if (cfg.command == "verify-sv") rep = run_verify_sv(cfg);
    else if (cfg.command == "screenings") rep = run_screenings(cfg);
    else if (cfg.command == "kernel-dims") rep = run_kernel_dims(cfg);
    else rep = run_axioms(cfg);
    std::string text = render(rep, cfg, digest(inputs));
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream o(cfg.out);
      if (!o) throw Error(ErrorCode::ConfigParse, "cannot write " + cfg.out);
      o << text;
    }
    return rep.ok() ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "dsred: " << e.what() << "\n";
    return 2;
  }
}
