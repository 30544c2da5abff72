// plturb: command-line front end for the certified analysis of
// piecewise-linear interval maps.
//
//   plturb analyze MAP [--out FILE] [detector flags]
//   plturb witness MAP --c C --n N [--tower K] [--out FILE]
//   plturb verify MAP CERT
//   plturb orbit MAP --x0 X --n N [--format csv] [--decimal]
//
// Exit status: 0 success or verified, 1 mathematical refutation, 2 input
// error.

#include "plturb/analysis.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace plturb;

constexpr int kOk = 0;
constexpr int kRefuted = 1;
constexpr int kInputError = 2;

struct Refutation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational rational_arg(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const RationalSyntaxError& e) {
    throw InputError(std::string(flag) + ": " + e.what());
  }
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw InputError(out + ": cannot write file");
  f << text;
}

std::string decimal(const Rational& q) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", to_double(q));
  return buf;
}

struct AnalyzeArgs {
  std::string map, out;
  std::size_t horizon = 10000, resolution = 1024, max_odd = 7, tower = 0, pairs = 32;
  std::string epsilon = "1/1024";
  std::uint64_t seed = 1;
  std::vector<std::string> x0;
};

int run_analyze(const AnalyzeArgs& a) {
  const PLMap f = load_map(a.map);
  AnalysisOptions opt;
  opt.horizon = a.horizon;
  opt.resolution = a.resolution;
  opt.epsilon = rational_arg(a.epsilon, "--epsilon");
  if (sgn(opt.epsilon) <= 0) throw InputError("--epsilon: must be positive");
  if (a.resolution < 2) throw InputError("--resolution: must be at least 2");
  if (a.max_odd < 3 || a.max_odd % 2 == 0) throw InputError("--max-odd: must be odd and at least 3");
  opt.max_odd = a.max_odd;
  opt.tower = a.tower;
  opt.seed = a.seed;
  opt.ly_pairs = a.pairs;
  for (const auto& s : a.x0) {
    Rational x = rational_arg(s, "--x0");
    if (!f.domain().contains(x)) throw InputError("--x0: " + s + " lies outside the domain");
    opt.orbit_seeds.push_back(std::move(x));
  }
  emit(canonical(analyze(f, opt)), a.out);
  return kOk;
}

struct WitnessArgs {
  std::string map, out, c;
  std::size_t n = 0, tower = 0;
};

int run_witness(const WitnessArgs& a) {
  const PLMap f = load_map(a.map);
  const Rational c = rational_arg(a.c, "--c");
  if (!f.domain().contains(c)) throw InputError("--c: " + a.c + " lies outside the domain");
  if (a.n < 2) throw InputError("--n: must be at least 2");
  auto h = check_hypothesis_A(f, c, a.n);
  if (!h) {
    const Rational fc = f(c), fnc = iterate(f, c, a.n);
    throw Refutation("hypothesis A fails at c = " + to_string(c) + ", n = " + std::to_string(a.n) + ": f(c) = " +
                     to_string(fc) + ", f^n(c) = " + to_string(fnc) +
                     "; need f(c) > c >= f^n(c) or f(c) < c <= f^n(c)");
  }
  WitnessResult res = build_witness(f, *h);
  if (res.is_boundary()) {
    throw Refutation("c = " + to_string(c) + " lies on the 2-cycle {" + to_string(c) + ", " +
                     to_string(std::get<TwoCycleBoundary>(res.outcome).partner) +
                     "}; the construction degenerates and no certificate exists");
  }
  Certificate cert = res.is_trap() ? Certificate(std::get<TrapCertificate>(res.outcome))
                                   : Certificate(std::get<DoubleTurbulenceCertificate>(res.outcome));
  if (a.tower > 0) {
    if (res.trace.case_id != 3) throw Refutation("--tower needs a case 3 witness; this one is case " + std::to_string(res.trace.case_id));
    res.trace.tower = periodic_tower(f, res.trace, a.tower);
  }
  if (const Verdict v = verify(f, cert); !v) throw std::logic_error("emitted certificate fails verification: " + v.detail);
  emit(canonical(certificate_file_to_json({cert, res.trace, fingerprint(f)})), a.out);
  std::cerr << kind_tag(cert) << " certificate, case " << res.trace.case_id << ", side " << to_string(h->side) << "\n";
  return kOk;
}

int run_verify(const std::string& map_path, const std::string& cert_path) {
  const PLMap f = load_map(map_path);
  const CertificateFile file = parse_certificate(io::read_file(cert_path), cert_path);
  if (!file.map_fingerprint.empty() && file.map_fingerprint != fingerprint(f)) {
    std::cerr << "warning: certificate was issued for map " << file.map_fingerprint << ", this map is "
              << fingerprint(f) << "\n";
  }
  Verdict v = verify(f, file.certificate);
  if (v && file.trace && !file.trace->tower.empty()) v = verify_tower(f, file.trace->tower);
  if (!v) {
    std::cout << "refuted: " << to_string(v.clause);
    if (v.inner != Clause::none) std::cout << " (" << to_string(v.inner) << ")";
    if (v.endpoint) std::cout << " at " << to_string(*v.endpoint);
    std::cout << ": " << v.detail << "\n";
    return kRefuted;
  }
  std::cout << "verified: " << kind_tag(file.certificate) << "\n";
  return kOk;
}

struct OrbitArgs {
  std::string map, x0, format = "csv";
  std::size_t n = 10;
  bool decimal = false;
};

int run_orbit(const OrbitArgs& a) {
  const PLMap f = load_map(a.map);
  const Rational x0 = rational_arg(a.x0, "--x0");
  if (!f.domain().contains(x0)) throw InputError("--x0: " + a.x0 + " lies outside the domain");
  auto show = [&](const Rational& q) { return a.decimal ? decimal(q) : to_string(q); };
  const std::vector<Rational> xs = orbit(f, x0, a.n);
  std::ostringstream out;
  out << "i,x_i\n";
  for (std::size_t i = 0; i < xs.size(); ++i) out << i << "," << show(xs[i]) << "\n";
  // cobweb: vertical to the graph, horizontal to the diagonal
  out << "\nx,y,x2,y2\n";
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const std::string x = show(xs[i]), y = show(xs[i + 1]);
    out << x << "," << x << "," << x << "," << y << "\n";
    out << x << "," << y << "," << y << "," << y << "\n";
  }
  std::cout << out.str();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified analysis of continuous piecewise-linear interval maps"};
  app.require_subcommand(1);

  AnalyzeArgs an;
  auto* analyze_cmd = app.add_subcommand("analyze", "Run all detectors and certify every hypothesis-A point found");
  analyze_cmd->add_option("map", an.map, "Map file")->required();
  analyze_cmd->add_option("--out", an.out, "Write the report here instead of stdout");
  analyze_cmd->add_option("--horizon", an.horizon, "Iterations for sampled detectors")->capture_default_str();
  analyze_cmd->add_option("--resolution", an.resolution, "Cells in the chain graph and samplers")->capture_default_str();
  analyze_cmd->add_option("--epsilon", an.epsilon, "Chain step size, as p/q")->capture_default_str();
  analyze_cmd->add_option("--max-odd", an.max_odd, "Largest odd period searched")->capture_default_str();
  analyze_cmd->add_option("--tower", an.tower, "Levels of the periodic tower to attach")->capture_default_str();
  analyze_cmd->add_option("--seed", an.seed, "Seed for sampled pairs")->capture_default_str();
  analyze_cmd->add_option("--pairs", an.pairs, "Number of sampled Li-Yorke pairs")->capture_default_str();
  analyze_cmd->add_option("--x0", an.x0, "Orbit seeds to classify (repeatable)");

  WitnessArgs wi;
  auto* witness_cmd = app.add_subcommand("witness", "Build a certificate from a hypothesis-A point");
  witness_cmd->add_option("map", wi.map, "Map file")->required();
  witness_cmd->add_option("--c", wi.c, "The point c, as p/q")->required();
  witness_cmd->add_option("--n", wi.n, "The iterate n >= 2")->required();
  witness_cmd->add_option("--tower", wi.tower, "Levels of the periodic tower to include in the trace");
  witness_cmd->add_option("--out", wi.out, "Write the certificate here instead of stdout");

  std::string vmap, vcert;
  auto* verify_cmd = app.add_subcommand("verify", "Check a certificate file exactly");
  verify_cmd->add_option("map", vmap, "Map file")->required();
  verify_cmd->add_option("certificate", vcert, "Certificate file")->required();

  OrbitArgs ob;
  auto* orbit_cmd = app.add_subcommand("orbit", "Emit an orbit and its cobweb segments as CSV");
  orbit_cmd->add_option("map", ob.map, "Map file")->required();
  orbit_cmd->add_option("--x0", ob.x0, "Starting point, as p/q")->required();
  orbit_cmd->add_option("--n", ob.n, "Number of iterations")->capture_default_str();
  orbit_cmd->add_option("--format", ob.format, "Output format")->check(CLI::IsMember({"csv"}))->capture_default_str();
  orbit_cmd->add_flag("--decimal", ob.decimal, "Print decimal approximations instead of exact rationals");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*analyze_cmd) return run_analyze(an);
    if (*witness_cmd) return run_witness(wi);
    if (*verify_cmd) return run_verify(vmap, vcert);
    if (*orbit_cmd) return run_orbit(ob);
  } catch (const Refutation& e) {
    std::cerr << "refuted: " << e.what() << "\n";
    return kRefuted;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ComplexityLimit& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
