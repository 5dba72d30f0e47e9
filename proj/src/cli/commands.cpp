// Copyright 2026 The psgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "psgate/achievability.hpp"
#include "psgate/cli.hpp"
#include "psgate/dilation.hpp"
#include "psgate/error.hpp"
#include "psgate/gatemap.hpp"
#include "psgate/probability.hpp"
#include "psgate/solver.hpp"

namespace psgate::cli {

namespace {

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotAchievable:
      return kExitNotAchievable;
    case ErrorCode::DimensionMismatch:
    case ErrorCode::NonFinite:
    case ErrorCode::NonSquare:
    case ErrorCode::NonUnitary:
    case ErrorCode::InvalidPair:
    case ErrorCode::InvalidBranch:
    case ErrorCode::MalformedNetwork:
    case ErrorCode::InvalidArgument:
    case ErrorCode::ParseError:
    case ErrorCode::NotContraction:
      return kExitInvalidInput;
    default:
      return kExitInternal;
  }
}

double default_tolerance() {
  const char *env = std::getenv("PSGATE_DEFAULT_TOL");
  if (env == nullptr || *env == '\0') return kDecisionTol;
  const double v = parse_angle(env);
  if (!(v > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "PSGATE_DEFAULT_TOL must be positive");
  }
  return v;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json triple_json(const CanonicalTriple &t) {
  return {{"alpha", t.alpha}, {"beta", t.beta}, {"gamma", t.gamma}};
}

json weights_json(const CanonicalWeights &w) {
  return {
      {"w1", complex_json(w.w1)},
      {"w2", complex_json(w.w2)},
      {"w3", complex_json(w.w3)},
      {"w4", complex_json(w.w4)}};
}

json witness_json(const Witness &w) {
  if (const auto *a = std::get_if<AngleWitness>(&w)) {
    return {
        {"type", "angle"},
        {"condition", to_string(a->condition)},
        {"value", a->value},
        {"lattice_point", a->lattice_point}};
  }
  if (const auto *s = std::get_if<SignWitness>(&w)) {
    return {{"type", "signs"}, {"signs", json::array({s->s2, s->s3, s->s4})}};
  }
  return {{"type", "zero_weight"}, {"index", std::get<ZeroWeightWitness>(w).index}};
}

json verdict_json(const AchievabilityVerdict &v) {
  return {
      {"achievable", v.achievable},
      {"witness", witness_json(v.witness)},
      {"description", describe(v.witness)},
      {"residual", v.residual},
      {"tolerance", v.tolerance}};
}

const char *kind_name(SolutionKind k) {
  switch (k) {
    case SolutionKind::NonZero:
      return "nonzero";
    case SolutionKind::ZeroCase:
      return "zero_case";
    case SolutionKind::Shortcut:
      return "shortcut";
  }
  return "unknown";
}

json point_json(const SolutionPoint &p) {
  json j{{"kind", kind_name(p.kind)}};
  if (p.kind == SolutionKind::NonZero) {
    j["branch"] = p.branch.label();
    j["u23"] = complex_json(p.u23);
    j["u30"] = complex_json(p.u30);
  } else {
    j["zero_index"] = p.zero.zero_index;
    j["root"] = p.zero.root;
    j["u30"] = complex_json(p.zero.u30);
    j["u32"] = complex_json(p.zero.u32);
  }
  j["canonical_submatrix"] = matrix_to_json(p.submatrix);
  return j;
}

json header(const std::string &command, const GateSpec *spec) {
  json j{{"schema", kReportSchema}, {"command", command}};
  if (spec != nullptr) j["gate"] = spec->describe();
  return j;
}

json target_json(const CanonicalTarget &t) {
  return {
      {"triple", triple_json(t.kak.triple)},
      {"snapped_triple", triple_json(t.snapped)},
      {"weights", weights_json(t.weights)},
      {"zero_case", t.zero_case},
      {"verdict", verdict_json(t.verdict)},
      {"kak_residual", reconstruction_residual(t.kak, t.kak.reconstruct())}};
}

std::string fmt(double v, int precision = 6) {
  std::ostringstream s;
  s << std::setprecision(precision) << v;
  return s.str();
}

std::string triple_text(const CanonicalTriple &t) {
  return "alpha=" + fmt(t.alpha, 10) + " beta=" + fmt(t.beta, 10) +
         " gamma=" + fmt(t.gamma, 10);
}

std::string weights_text(const CanonicalWeights &w) {
  return "w1=" + format_complex(w.w1) + " w2=" + format_complex(w.w2) +
         " w3=" + format_complex(w.w3) + " w4=" + format_complex(w.w4);
}

std::string verdict_text(const AchievabilityVerdict &v) {
  return std::string(v.achievable ? "achievable" : "not achievable") + " (" +
         describe(v.witness) + ", residual " + fmt(v.residual) + ", tol " +
         fmt(v.tolerance) + ")";
}

void emit(std::ostream &out, const json &j) { out << j.dump(2) << '\n'; }

/// Options shared by the gate-taking commands.
struct GateArgs {
  std::vector<std::string> words;
  std::optional<std::string> matrix;
  double tol = kDecisionTol;
  bool json_out = false;

  void attach(CLI::App *cmd) {
    cmd->add_option("gate", words, "Gate name followed by its parameters (radians)");
    cmd->add_option("--matrix", matrix, "4x4 gate matrix file {\"rows\": ...}");
    cmd->add_option("--tol", tol, "Decision tolerance")->check(CLI::PositiveNumber);
    cmd->add_flag("--json", json_out, "Print the report as JSON");
  }
};

int cmd_check(const GateArgs &g, std::ostream &out) {
  const GateSpec spec = make_gate_spec(g.words, g.matrix);
  const Matrix4 w = resolve_gate(spec);
  const auto [verdict, kak] = check_gate(w, g.tol);
  const CanonicalWeights weights = weights_from_triple(kak.triple);
  const AchievabilityVerdict by_weights = check_weights(weights, g.tol);
  const double kak_res = reconstruction_residual(kak, w);
  if (g.json_out) {
    json j = header("check", &spec);
    j["verdict"] = verdict_json(verdict);
    j["weight_verdict"] = verdict_json(by_weights);
    j["triple"] = triple_json(kak.triple);
    j["weights"] = weights_json(weights);
    j["diagnostics"] = {{"kak_residual", kak_res}, {"tolerance", g.tol}};
    emit(out, j);
  } else {
    out << "gate      " << spec.describe() << '\n'
        << "triple    " << triple_text(kak.triple) << '\n'
        << "weights   " << weights_text(weights) << '\n'
        << "verdict   " << verdict_text(verdict) << '\n'
        << "weights   " << verdict_text(by_weights) << '\n'
        << "kak       residual " << fmt(kak_res) << '\n';
  }
  return verdict.achievable ? kExitSuccess : kExitNotAchievable;
}

struct SolveArgs {
  GateArgs gate;
  std::string u23 = "1";
  std::string u30 = "1";
  std::optional<std::string> branch;
};

int cmd_solve(const SolveArgs &a, std::ostream &out) {
  const GateSpec spec = make_gate_spec(a.gate.words, a.gate.matrix);
  const Matrix4 w = resolve_gate(spec);
  SolveOptions opts;
  opts.tol = a.gate.tol;
  opts.u23 = parse_complex(a.u23);
  opts.u30 = parse_complex(a.u30);
  opts.zero.u30 = opts.u30;
  if (a.branch) opts.branch = SignBranch::parse(*a.branch);
  const GateSolution s = solve_gate(w, opts);
  if (a.gate.json_out) {
    json j = header("solve", &spec);
    j["target"] = target_json(s.target);
    j["point"] = point_json(s.point);
    j["unscaled"] = matrix_to_json(s.unscaled);
    j["submatrix"] = matrix_to_json(s.submatrix);
    j["s1"] = s.s1;
    j["p"] = s.p;
    j["diagnostics"] = {{"f_residual", s.f_residual}, {"tolerance", opts.tol}};
    emit(out, j);
  } else {
    out << "gate        " << spec.describe() << '\n'
        << "triple      " << triple_text(s.target.kak.triple) << '\n'
        << "verdict     " << verdict_text(s.target.verdict) << '\n'
        << "path        " << kind_name(s.point.kind);
    if (s.point.kind == SolutionKind::NonZero) {
      out << " branch " << s.point.branch.label();
    }
    out << '\n'
        << "s1          " << fmt(s.s1, 10) << '\n'
        << "p           " << fmt(s.p, 10) << '\n'
        << "f residual  " << fmt(s.f_residual) << '\n'
        << "U~ (f(U~) = W)\n"
        << format_matrix(s.unscaled);
  }
  return kExitSuccess;
}

struct OptimizeArgs {
  GateArgs gate;
  int restarts = 64;
  std::uint64_t seed = 0;
  int threads = 1;
  int max_iterations = 500;
  bool dilate_out = false;
};

OptimizationConfig make_config(const OptimizeArgs &a) {
  OptimizationConfig cfg;
  cfg.restarts = a.restarts;
  cfg.seed = a.seed;
  cfg.threads = a.threads;
  cfg.max_iterations = a.max_iterations;
  cfg.tol = a.gate.tol;
  return cfg;
}

json branches_json(const OptimizationReport &r) {
  json rows = json::array();
  for (const BranchResult &b : r.per_branch_best) {
    rows.push_back(
        {{"label", b.label},
         {"kind", kind_name(b.kind)},
         {"best_p", b.best_p},
         {"best_s1", std::isfinite(b.best_s1) ? json(b.best_s1) : json(nullptr)},
         {"starts", b.starts},
         {"converged", b.converged}});
  }
  return rows;
}

void branches_text(const OptimizationReport &r, std::ostream &out) {
  out << "  component            best p        starts  converged\n";
  for (const BranchResult &b : r.per_branch_best) {
    out << "  " << std::left << std::setw(20) << b.label << ' ' << std::setw(13)
        << fmt(b.best_p, 8) << ' ' << std::right << std::setw(6) << b.starts
        << "  " << std::setw(9) << b.converged << '\n';
  }
}

int cmd_optimize(const OptimizeArgs &a, std::ostream &out) {
  const GateSpec spec = make_gate_spec(a.gate.words, a.gate.matrix);
  const Matrix4 w = resolve_gate(spec);
  const GateOptimization g = optimize_gate(w, make_config(a));
  const OptimizationReport &r = g.report;
  if (a.gate.json_out) {
    json j = header("optimize", &spec);
    j["config"] = {
        {"restarts", a.restarts},
        {"seed", a.seed},
        {"max_iterations", a.max_iterations},
        {"tolerance", a.gate.tol}};
    j["target"] = target_json(g.target);
    j["best_p"] = r.best_p;
    j["best_point"] = point_json(r.best_point);
    j["branches"] = branches_json(r);
    j["starts_total"] = r.starts_total;
    j["starts_converged"] = r.starts_converged;
    j["converged"] = r.converged;
    j["submatrix"] = matrix_to_json(g.submatrix);
    j["diagnostics"] = {{"f_residual", g.f_residual}, {"tolerance", a.gate.tol}};
    if (a.dilate_out) j["dilation"] = matrix_to_json(dilate(g.submatrix));
    emit(out, j);
  } else {
    out << "gate        " << spec.describe() << '\n'
        << "triple      " << triple_text(g.target.kak.triple) << '\n'
        << "best p      " << fmt(r.best_p, 10) << '\n'
        << "starts      " << r.starts_converged << " of " << r.starts_total
        << " converged\n"
        << "f residual  " << fmt(g.f_residual) << '\n';
    branches_text(r, out);
    out << "submatrix (s1 <= 1)\n" << format_matrix(g.submatrix);
    if (a.dilate_out) out << "dilation\n" << format_matrix(dilate(g.submatrix), 4);
  }
  return kExitSuccess;
}

struct CompileArgs {
  OptimizeArgs opt;
  std::optional<std::string> out_path;
};

int cmd_compile(const CompileArgs &a, std::ostream &out) {
  const GateSpec spec = make_gate_spec(a.opt.gate.words, a.opt.gate.matrix);
  const Matrix4 w = resolve_gate(spec);
  const GateOptimization g = optimize_gate(w, make_config(a.opt));
  const ComplexMatrix u8 = dilate(g.submatrix);
  const OpticalNetwork net = reck_decompose(u8);
  const ComplexMatrix rebuilt = network_to_unitary(net);
  const double network_residual = max_abs_diff(rebuilt, u8);
  if (network_residual > 1e-9) {
    throw Error(
        ErrorCode::NumericalFailure,
        "network reproduces the dilation only to " + fmt(network_residual));
  }
  const NetworkCheck check = check_network(rebuilt, w);
  if (check.residual > 1e-7) {
    throw Error(
        ErrorCode::NumericalFailure,
        "compiled network is not proportional to the gate (residual " +
            fmt(check.residual) + ")");
  }
  const json doc = network_to_json(net);
  if (a.out_path) {
    std::ofstream f(*a.out_path, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidArgument, *a.out_path + ": cannot write");
    f << doc.dump(2) << '\n';
  }
  if (a.opt.gate.json_out || !a.out_path) {
    json j = header("compile", &spec);
    j["best_p"] = g.report.best_p;
    j["measured_p"] = check.p;
    j["beam_splitters"] = net.beam_splitter_count();
    j["network"] = doc;
    j["diagnostics"] = {
        {"network_residual", network_residual},
        {"proportionality_residual", check.residual},
        {"f_residual", g.f_residual},
        {"tolerance", a.opt.gate.tol}};
    if (a.out_path) j.erase("network");
    emit(out, j);
  } else {
    out << "gate            " << spec.describe() << '\n'
        << "best p          " << fmt(g.report.best_p, 10) << '\n'
        << "measured p      " << fmt(check.p, 10) << '\n'
        << "beam splitters  " << net.beam_splitter_count() << '\n'
        << "elements        " << net.elements.size() << '\n'
        << "residuals       network " << fmt(network_residual)
        << ", proportionality " << fmt(check.residual) << '\n'
        << "written to      " << *a.out_path << '\n';
  }
  return kExitSuccess;
}

struct SimulateArgs {
  std::optional<std::string> network;
  std::optional<std::string> unitary;
  std::string input = "all";
  std::optional<std::string> target;
  bool json_out = false;
};

/// Target given as "name" or "name:p1,p2,..." or a matrix file path.
Matrix4 resolve_target(const std::string &text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const auto names = gate_names();
  if (std::find(names.begin(), names.end(), name) != names.end()) {
    std::vector<std::string> words{name};
    if (colon != std::string::npos) {
      std::stringstream s(text.substr(colon + 1));
      std::string item;
      while (std::getline(s, item, ',')) words.push_back(item);
    }
    return resolve_gate(make_gate_spec(words, std::nullopt));
  }
  return resolve_gate(make_gate_spec({}, text));
}

const char *kBasisLabels[4] = {"00", "01", "10", "11"};

int cmd_simulate(const SimulateArgs &a, std::ostream &out) {
  if (a.network.has_value() == a.unitary.has_value()) {
    throw Error(ErrorCode::InvalidArgument, "give exactly one of --network or --unitary");
  }
  ComplexMatrix u;
  if (a.network) {
    u = network_to_unitary(read_network_file(*a.network));
  } else {
    u = read_matrix_file(*a.unitary);
    require_unitary(u, kInputUnitaryTol, "mode unitary");
  }
  if (u.rows() < 4 || u.rows() > kMaxSimulatedModes) {
    throw Error(ErrorCode::InvalidArgument, "mode count must be in 4..16");
  }

  // Which inputs: all, a logical state, or a raw mode pair "i,j".
  std::vector<ModePair> inputs;
  std::vector<std::string> labels;
  std::string in = a.input;
  if (in.size() >= 3 && in.front() == '|' && in.back() == '>') {
    in = in.substr(1, in.size() - 2);
  }
  if (in == "all") {
    for (int c = 0; c < 4; ++c) {
      inputs.push_back(kComputationalPairs[c]);
      labels.emplace_back(kBasisLabels[c]);
    }
  } else if (const auto comma = in.find(','); comma != std::string::npos) {
    const double i = parse_angle(in.substr(0, comma));
    const double j = parse_angle(in.substr(comma + 1));
    if (i != std::floor(i) || j != std::floor(j)) {
      throw Error(ErrorCode::InvalidArgument, "mode indices must be integers");
    }
    inputs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    labels.push_back("modes " + in);
  } else {
    int c = 0;
    while (c < 4 && in != kBasisLabels[c]) ++c;
    if (c == 4) {
      throw Error(ErrorCode::InvalidArgument, "unknown input '" + a.input + "'");
    }
    inputs.push_back(kComputationalPairs[c]);
    labels.emplace_back(kBasisLabels[c]);
  }

  json rows = json::array();
  std::ostringstream text;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    const TwoPhotonState st = evolve_two_photons(u, inputs[k].first, inputs[k].second);
    const PostselectedOutput po = postselect_computational(st);
    json amps = json::array();
    for (int c = 0; c < 4; ++c) amps.push_back(complex_json(po.amplitudes(c)));
    rows.push_back(
        {{"input", labels[k]},
         {"amplitudes", amps},
         {"success_probability", po.success_probability}});
    text << "  " << std::left << std::setw(10) << labels[k] << std::right
         << " p = " << fmt(po.success_probability, 10) << "  ->";
    for (int c = 0; c < 4; ++c) text << ' ' << format_complex(po.amplitudes(c), 5);
    text << '\n';
  }

  json j = header("simulate", nullptr);
  j["modes"] = u.rows();
  j["outputs"] = rows;
  std::ostringstream tail;
  if (a.input == "all") {
    const PostselectedBlock block = transfer_matrix(u);
    j["block"] = matrix_to_json(block.block);
    tail << "block\n" << format_matrix(block.block);
  }
  if (a.target) {
    const Matrix4 t = resolve_target(*a.target);
    const NetworkCheck c = check_network(u, t);
    j["target"] = {
        {"gate", *a.target},
        {"scale", complex_json(c.scale)},
        {"p", c.p},
        {"proportionality_residual", c.residual},
        {"tolerance", 1e-7},
        {"proportional", c.residual <= 1e-7}};
    tail << "target " << *a.target << ": p = " << fmt(c.p, 10)
         << ", proportionality residual " << fmt(c.residual) << '\n';
  }
  if (a.json_out) {
    emit(out, j);
  } else {
    out << "modes  " << u.rows() << '\n' << text.str() << tail.str();
  }
  return kExitSuccess;
}

}  // namespace

int run_cli(
    const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Post-selected two-photon gate synthesis", "psgate"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "psgate 0.1.0");

  double tol = kDecisionTol;
  try {
    tol = default_tolerance();
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }

  GateArgs check;
  check.tol = tol;
  auto *c_check = app.add_subcommand("check", "Decide whether a gate is achievable");
  check.attach(c_check);

  SolveArgs solve;
  solve.gate.tol = tol;
  auto *c_solve = app.add_subcommand("solve", "Construct one solution of f(U~) = W");
  solve.gate.attach(c_solve);
  c_solve->add_option("--u23", solve.u23, "Free parameter u23 as re,im");
  c_solve->add_option("--u30", solve.u30, "Free parameter u30 as re,im");
  c_solve->add_option("--branch", solve.branch, "Sign branch such as ++-+");

  auto attach_opt = [](CLI::App *cmd, OptimizeArgs &o) {
    o.gate.attach(cmd);
    cmd->add_option("--restarts", o.restarts, "Starts per component")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "Seed for the start schedule");
    cmd->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--max-iterations", o.max_iterations, "Iterations per start")
        ->check(CLI::PositiveNumber);
  };

  OptimizeArgs optimize;
  optimize.gate.tol = tol;
  auto *c_opt = app.add_subcommand("optimize", "Maximise the success probability");
  attach_opt(c_opt, optimize);
  c_opt->add_flag("--dilate", optimize.dilate_out, "Also print the 8x8 dilation");

  CompileArgs compile;
  compile.opt.gate.tol = tol;
  auto *c_compile = app.add_subcommand("compile", "Emit an optical network");
  attach_opt(c_compile, compile.opt);
  c_compile->add_option("--out", compile.out_path, "Network file to write");

  SimulateArgs simulate;
  auto *c_sim = app.add_subcommand("simulate", "Run the two-photon simulator");
  c_sim->add_option("--network", simulate.network, "Network file");
  c_sim->add_option("--unitary", simulate.unitary, "Mode unitary file");
  c_sim->add_option(
      "--input", simulate.input, "all, a basis state such as 01, or modes i,j");
  c_sim->add_option(
      "--target", simulate.target, "Gate to compare with: name[:params] or file");
  c_sim->add_flag("--json", simulate.json_out, "Print the report as JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitInvalidInput;
  }

  try {
    if (c_check->parsed()) return cmd_check(check, out);
    if (c_solve->parsed()) return cmd_solve(solve, out);
    if (c_opt->parsed()) return cmd_optimize(optimize, out);
    if (c_compile->parsed()) return cmd_compile(compile, out);
    if (c_sim->parsed()) return cmd_simulate(simulate, out);
  } catch (const Error &e) {
    const int code = exit_code_for(e.code());
    err << "psgate: " << e.what() << '\n';
    return code;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInvalidInput;
}

}  // namespace psgate::cli
