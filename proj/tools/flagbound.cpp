#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "flagbound/certificate.hpp"
#include "flagbound/enumerate.hpp"
#include "flagbound/error.hpp"
#include "flagbound/io.hpp"
#include "flagbound/jump.hpp"
#include "flagbound/lagrangian.hpp"
#include "flagbound/parallel.hpp"
#include "flagbound/presets.hpp"
#include "flagbound/sdp.hpp"
#include "flagbound/symmetry.hpp"

using namespace flagbound;

namespace {

constexpr const char* kFormats = R"(File formats

Hypergraph file (--family-file, --graph, enumerate output). Vertices are
1-based; '---' separates graphs; '#' starts a comment:
  3 4
  1 2 3
  1 2 4
  1 3 4

Inline graph (types, certificates): "r n : e1, e2, ...", e.g. "3 5 : 1 2 3, 1 2 4".
Type spec (--type): an inline graph, optionally "@ m" for the flag order:
  --type "3 3 : 1 2 3 @ 5"      (m defaults to floor((l + s) / 2))

Certificate (round output, verify/jump input). Matrices are lower triangles,
1-based "i j value" lines; block coordinates use Q+ and Q- per type:
  # flagbound certificate
  family: K4-minus
  member: 3 4 : 1 2 3, 1 2 4, 1 3 4
  l: 4
  coords: raw
  type: 3 2 :
  m: 3
  Q: 2
  1 1 1/3
  2 1 -2/3
  2 2 4/3
  end
  claimed_bound: 1/3

Lagrangian witnesses (--lagrangians, --witnesses); blocks separated by '---',
values are recomputed when read:
  graph: 3 4 : 1 2 3, 1 2 4, 1 3 4
  witness: 1/3 2/9 2/9 2/9

SDP export: sparse SDPA (.dat-s), minimize c^T x s.t. sum x_i F_i - F_0 PSD,
one variable per admissible graph. Solutions are read in the CSDP layout:
the dual vector on the first line, then "matno block i j value" lines with
matno 2 holding the primal matrix.
)";

struct ProblemArgs {
  std::string family;
  std::string family_file;
  int l = 0;
  std::vector<std::string> types;
  std::string preset;
  std::string coords = "raw";
};

void add_problem_options(CLI::App* app, ProblemArgs& a, bool with_types = true) {
  app->add_option("--family", a.family, "builtin family: K4-minus, F-star, F-prime");
  app->add_option("--family-file", a.family_file, "forbidden graphs in hypergraph file format");
  app->add_option("--l", a.l, "order of the admissible graphs");
  if (!with_types) return;
  app->add_option("--type,--types", a.types, "type spec \"r s : edges [@ m]\" (repeatable)");
  app->add_option("--preset", a.preset, "k4-minus-l4, f-prime-l7 or k4-minus-l7");
  app->add_option("--coords", a.coords, "raw or block")->check(CLI::IsMember({"raw", "block"}));
}

ForbiddenFamily resolve_family(const ProblemArgs& a) {
  std::string name = a.family;
  if (name.empty() && !a.preset.empty()) name = preset(a.preset).family;
  if (!a.family_file.empty()) {
    if (!name.empty()) throw CLI::ValidationError("--family and --family-file are exclusive");
    auto graphs = read_hypergraph_file(a.family_file);
    return ForbiddenFamily(std::move(graphs), std::filesystem::path(a.family_file).stem().string());
  }
  if (name.empty()) throw CLI::ValidationError("one of --family, --family-file or --preset is required");
  return builtin_family(name);
}

int resolve_l(const ProblemArgs& a) {
  if (a.l > 0) return a.l;
  if (!a.preset.empty()) return preset(a.preset).l;
  throw CLI::ValidationError("--l is required");
}

std::vector<TypeSpec> resolve_specs(const ProblemArgs& a, int l) {
  std::vector<TypeSpec> specs;
  if (!a.preset.empty()) specs = preset(a.preset).specs;
  for (const auto& t : a.types) specs.push_back(parse_type_spec(t, l));
  if (specs.empty()) throw CLI::ValidationError("no types given (use --type or --preset)");
  return specs;
}

SDPProblem resolve_problem(const ProblemArgs& a) {
  auto family = resolve_family(a);
  int l = resolve_l(a);
  return assemble(family, l, resolve_specs(a, l), parse_coordinates(a.coords));
}

void kv(const std::string& key, const std::string& value) { std::cout << key << ": " << value << "\n"; }
void kv(const std::string& key, long long value) { kv(key, std::to_string(value)); }
void kv_rational(const std::string& key, const Rational& v) {
  kv(key, format_rational(v));
  kv(key + "_decimal", format_decimal(v, 10));
}
std::string fixed(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  return out;
}

void problem_summary(const SDPProblem& p) {
  kv("family", p.family.name());
  kv("l", p.l);
  kv("graphs", static_cast<long long>(p.graphs.size()));
  kv("coords", to_string(p.coords));
  for (std::size_t i = 0; i < p.specs.size(); ++i) {
    const auto& s = p.specs[i];
    std::string blocks;
    for (auto b : s.tensor.block_sizes) blocks += (blocks.empty() ? "" : " ") + std::to_string(b);
    kv("type." + std::to_string(i + 1), format_type_spec(s.spec) + " flags " + std::to_string(s.basis.size()) +
                                           " blocks " + blocks);
  }
  kv("psd_dimension", static_cast<long long>(p.psd_dimension()));
  kv_rational("averaging_bound", averaging_bound(p.graphs));
}

struct Timer {
  bool enabled = false;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  void lap(const std::string& stage) {
    if (!enabled) return;
    auto now = std::chrono::steady_clock::now();
    std::cerr << "time." << stage << ": " << std::chrono::duration<double>(now - start).count() << "s\n";
    start = now;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified flag-algebra upper bounds on Turan densities of 3-graphs"};
  app.footer(kFormats);
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (default: all cores)");
  std::string stage;

  // enumerate
  ProblemArgs en;
  bool count_only = false;
  std::string en_out;
  auto* enumerate = app.add_subcommand("enumerate", "admissible graphs on l vertices up to isomorphism");
  add_problem_options(enumerate, en, false);
  enumerate->add_flag("--count-only", count_only, "print only the count");
  enumerate->add_option("--output", en_out, "write the graphs to a file");

  // flags
  ProblemArgs fl;
  bool list_flags = false;
  auto* flags = app.add_subcommand("flags", "flag bases and symmetry blocks per type");
  add_problem_options(flags, fl);
  flags->add_flag("--list", list_flags, "print every flag");

  // assemble / export
  ProblemArgs as;
  auto* assemble_cmd = app.add_subcommand("assemble", "build the SDP and print its shape");
  add_problem_options(assemble_cmd, as);
  ProblemArgs ex;
  std::string ex_out;
  auto* export_cmd = app.add_subcommand("export", "write the SDP in sparse SDPA format");
  add_problem_options(export_cmd, ex);
  export_cmd->add_option("--output", ex_out, "destination .dat-s")->required();

  // solve
  ProblemArgs so;
  SolverOptions solver;
  std::string so_out;
  auto* solve = app.add_subcommand("solve", "solve the SDP with the embedded interior point method");
  add_problem_options(solve, so);
  solve->add_option("--tolerance", solver.tolerance, "relative gap and infeasibility tolerance");
  solve->add_option("--psd-cap", solver.psd_cap, "largest total PSD dimension accepted");
  solve->add_option("--max-iterations", solver.max_iterations);
  solve->add_flag("--verbose", solver.verbose, "log iterations to stderr");
  solve->add_option("--solution-out", so_out, "write the solution (CSDP layout)");

  // round
  ProblemArgs ro;
  std::string ro_solution, ro_out;
  RoundingOptions rounding;
  auto* round = app.add_subcommand("round", "rationalize a float solution into a certificate");
  add_problem_options(round, ro);
  round->add_option("--solution", ro_solution, "solution file (CSDP layout)")->required();
  round->add_option("--denominator-bound", rounding.denominator_bound);
  round->add_option("--certificate-out", ro_out, "certificate destination")->required();

  // verify
  std::string ve_cert;
  auto* verify = app.add_subcommand("verify", "exact verification of a certificate (no floating point)");
  verify->add_option("--certificate", ve_cert)->required();

  // lagrangian
  std::string la_graph, la_family, la_out;
  MaximizeOptions maxopt;
  auto* lagrangian = app.add_subcommand("lagrangian", "search for Lagrangian witnesses");
  lagrangian->add_option("--graph", la_graph, "hypergraph file (one or more graphs)");
  lagrangian->add_option("--family", la_family, "every member of a builtin family");
  lagrangian->add_option("--restarts", maxopt.restarts);
  lagrangian->add_option("--iterations", maxopt.iterations);
  lagrangian->add_option("--seed", maxopt.seed);
  lagrangian->add_option("--denominator-bound", maxopt.denominator_bound);
  lagrangian->add_option("--output", la_out, "write the witnesses");

  // verify-lagrangian
  std::string vl_file, vl_target;
  auto* verify_lag = app.add_subcommand("verify-lagrangian", "exact check of Lagrangian witnesses");
  verify_lag->add_option("--witnesses", vl_file)->required();
  verify_lag->add_option("--target", vl_target, "require every value >= this rational");

  // jump
  std::string ju_cert, ju_lags, ju_threshold, ju_family;
  auto* jump = app.add_subcommand("jump", "jump interval from a verified threshold and Lagrangian witnesses");
  jump->add_option("--certificate", ju_cert);
  jump->add_option("--threshold", ju_threshold, "known threshold instead of a certificate");
  jump->add_option("--family", ju_family, "family for --threshold");
  jump->add_option("--lagrangians", ju_lags)->required();

  // bound
  ProblemArgs bo;
  SolverOptions bsolver;
  RoundingOptions brounding;
  std::string bo_mode = "embedded", bo_solution, bo_export, bo_cert, bo_solution_out;
  bool bo_round = false, bo_verify = false, bo_timings = false;
  auto* bound = app.add_subcommand("bound", "assemble, solve, round and verify in one run");
  add_problem_options(bound, bo);
  bound->add_option("--solve", bo_mode, "embedded, export or import")
      ->check(CLI::IsMember({"embedded", "export", "import"}));
  bound->add_option("--solution", bo_solution, "solution to import");
  bound->add_option("--export", bo_export, "also write the SDP here");
  bound->add_option("--solution-out", bo_solution_out);
  bound->add_option("--tolerance", bsolver.tolerance);
  bound->add_option("--psd-cap", bsolver.psd_cap);
  bound->add_option("--max-iterations", bsolver.max_iterations);
  bound->add_flag("--verbose", bsolver.verbose);
  bound->add_flag("--round", bo_round);
  bound->add_flag("--verify", bo_verify);
  bound->add_option("--denominator-bound", brounding.denominator_bound);
  bound->add_option("--certificate-out", bo_cert);
  bound->add_flag("--timings", bo_timings, "wall-clock times per stage on stderr");

  CLI11_PARSE(app, argc, argv);
  if (threads > 0) set_thread_count(threads);

  try {
    if (*enumerate) {
      stage = "enumerate";
      auto family = resolve_family(en);
      auto graphs = enumerate_admissible(family, resolve_l(en));
      if (count_only) {
        kv("count", static_cast<long long>(graphs.size()));
      } else if (!en_out.empty()) {
        auto out = open_out(en_out);
        write_hypergraphs(out, graphs);
        kv("count", static_cast<long long>(graphs.size()));
        kv("output", en_out);
      } else {
        write_hypergraphs(std::cout, graphs);
      }
    } else if (*flags) {
      stage = "flags";
      auto family = resolve_family(fl);
      int l = resolve_l(fl);
      for (const auto& spec : resolve_specs(fl, l)) {
        auto basis = enumerate_flags(spec.sigma, spec.m, family);
        auto group = type_automorphisms(spec.sigma);
        auto orbits = flag_orbits(basis, group);
        kv("type", format_type_spec(spec));
        kv("flags", static_cast<long long>(basis.size()));
        kv("automorphisms", static_cast<long long>(group.size()));
        kv("plus", static_cast<long long>(orbits.plus.size()));
        kv("minus", static_cast<long long>(orbits.minus.size()));
        if (list_flags)
          for (std::size_t i = 0; i < basis.size(); ++i)
            kv("flag." + std::to_string(i + 1), format_inline(basis[i].graph()));
      }
    } else if (*assemble_cmd) {
      stage = "assemble";
      problem_summary(resolve_problem(as));
    } else if (*export_cmd) {
      stage = "export";
      auto p = resolve_problem(ex);
      export_standard(p, ex_out);
      kv("constraints", static_cast<long long>(p.graphs.size()));
      kv("output", ex_out);
    } else if (*solve) {
      stage = "assemble";
      auto p = resolve_problem(so);
      stage = "solve";
      auto s = solve_embedded(p, solver);
      kv("float_bound", fixed(s.bound));
      kv("gap", fixed(s.gap));
      kv("iterations", s.iterations);
      if (!so_out.empty()) {
        auto out = open_out(so_out);
        write_solution(p, s, out);
        kv("solution", so_out);
      }
    } else if (*round) {
      stage = "assemble";
      auto p = resolve_problem(ro);
      stage = "round";
      std::istringstream in(read_file(ro_solution));
      auto s = read_solution(p, in);
      auto report = round_certificate(p, s, rounding);
      write_certificate_file(report.certificate, ro_out);
      kv_rational("claimed_bound", report.certificate.claimed_bound);
      kv("denominator_bound", static_cast<long long>(report.denominator_bound));
      kv_rational("shift", report.shift);
      kv("certificate", ro_out);
    } else if (*verify) {
      stage = "verify";
      auto cert = read_certificate_file(ve_cert);
      auto b = verify_certificate(cert);
      kv("family", cert.family.name());
      kv("l", cert.l);
      kv("status", "verified");
      kv_rational("verified_bound", b);
    } else if (*lagrangian) {
      stage = "lagrangian";
      std::vector<Hypergraph> graphs;
      if (!la_graph.empty()) graphs = read_hypergraph_file(la_graph);
      if (!la_family.empty()) {
        const auto family = builtin_family(la_family);
        graphs.insert(graphs.end(), family.members().begin(), family.members().end());
      }
      if (graphs.empty()) throw CLI::ValidationError("give --graph or --family");
      std::vector<LagrangianBound> found;
      for (std::size_t i = 0; i < graphs.size(); ++i) {
        found.push_back(maximize(graphs[i], maxopt));
        kv_rational("lambda." + std::to_string(i + 1), found.back().value);
      }
      if (!la_out.empty()) {
        auto out = open_out(la_out);
        write_lagrangian_bounds(out, found);
        kv("output", la_out);
      }
    } else if (*verify_lag) {
      stage = "verify-lagrangian";
      auto bounds = read_lagrangian_file(vl_file);
      std::optional<Rational> target;
      if (!vl_target.empty()) target = parse_rational(vl_target);
      bool ok = true;
      for (std::size_t i = 0; i < bounds.size(); ++i) {
        kv_rational("lambda." + std::to_string(i + 1), bounds[i].value);
        if (target && !verify_lower_bound(bounds[i].graph, bounds[i].witness, *target)) ok = false;
      }
      kv("status", ok ? "verified" : "below-target");
      return ok ? 0 : 1;
    } else if (*jump) {
      stage = "jump";
      auto bounds = read_lagrangian_file(ju_lags);
      if (ju_cert.empty() && (ju_threshold.empty() || ju_family.empty()))
        throw CLI::ValidationError("give --certificate, or --threshold with --family");
      auto iv = !ju_cert.empty() ? jump_interval(read_certificate_file(ju_cert), bounds)
                                 : jump_interval(builtin_family(ju_family), parse_rational(ju_threshold), bounds,
                                                 {"threshold " + ju_threshold + " given"});
      kv("r", iv.r);
      kv("family", iv.family.name());
      kv_rational("lo", iv.lo);
      kv_rational("hi", iv.hi);
      kv("interval", "[" + format_rational(iv.lo) + ", " + format_rational(iv.hi) + ")");
      for (std::size_t i = 0; i < iv.provenance.size(); ++i) kv("provenance." + std::to_string(i + 1), iv.provenance[i]);
    } else if (*bound) {
      Timer timer{bo_timings};
      stage = "assemble";
      auto p = resolve_problem(bo);
      timer.lap("assemble");
      problem_summary(p);
      if (!bo_export.empty() || bo_mode == "export") {
        stage = "export";
        if (bo_export.empty()) throw CLI::ValidationError("--solve export needs --export FILE");
        export_standard(p, bo_export);
        kv("export", bo_export);
        timer.lap("export");
      }
      if (bo_mode == "export") return 0;
      SdpSolution s;
      if (bo_mode == "import") {
        stage = "import";
        if (bo_solution.empty()) throw CLI::ValidationError("--solve import needs --solution FILE");
        std::istringstream in(read_file(bo_solution));
        s = read_solution(p, in);
      } else {
        stage = "solve";
        s = solve_embedded(p, bsolver);
        kv("float_bound", fixed(s.bound));
        kv("iterations", s.iterations);
        if (!bo_solution_out.empty()) {
          auto out = open_out(bo_solution_out);
          write_solution(p, s, out);
        }
      }
      timer.lap(stage);
      if (!bo_round && !bo_verify) return 0;
      stage = "round";
      auto report = round_certificate(p, s, brounding);
      timer.lap("round");
      kv_rational("claimed_bound", report.certificate.claimed_bound);
      kv("denominator_bound", static_cast<long long>(report.denominator_bound));
      kv_rational("shift", report.shift);
      if (!bo_cert.empty()) {
        write_certificate_file(report.certificate, bo_cert);
        kv("certificate", bo_cert);
      }
      if (bo_verify) {
        stage = "verify";
        auto b = verify_certificate(report.certificate);
        timer.lap("verify");
        kv("status", "verified");
        kv_rational("verified_bound", b);
      }
    }
  } catch (const Error& e) {
    std::cerr << "flagbound " << stage << ": " << e.what() << "\n";
    return 1;
  } catch (const CLI::Error& e) {
    return app.exit(e);
  }
  return 0;
}
