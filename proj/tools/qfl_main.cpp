#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "qfl/compiler.hpp"
#include "qfl/error.hpp"
#include "qfl/graph.hpp"
#include "qfl/search.hpp"
#include "qfl/simulator.hpp"
#include "qfl/verification.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 7;

struct Config {
  std::string instance_path;
  int colors = 0;
  std::string mode = "reset";
  bool no_prep = false;
  std::uint64_t shots = 1024;
  std::uint64_t seed = kDefaultSeed;
  std::string output;
  std::string layout_path;
  std::string render = "full";
  std::string csv_path;
  bool sampled = false;
  bool expand_negative = false;
  std::optional<std::size_t> sim_cap;
};

// Usage-level errors that are not CLI11 parse errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool use_reset(const Config& cfg) { return cfg.mode == "reset"; }

std::size_t sim_cap(const Config& cfg) {
  if (cfg.sim_cap) return *cfg.sim_cap;
  if (const char* env = std::getenv("QFL_SIM_CAP")) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("QFL_SIM_CAP is not a number: ") + env);
  }
  return qfl::kDefaultSimCap;
}

qfl::ColoringInstance load(const Config& cfg) {
  std::ifstream in(cfg.instance_path);
  if (!in) throw UsageError("cannot open " + cfg.instance_path);
  qfl::ParsedInstance parsed = qfl::parse_instance(in, cfg.colors);
  if (parsed.edge_count_mismatch) {
    std::cerr << "warning: header declares " << parsed.declared_edges << " edges, found "
              << parsed.instance.num_edges() << " distinct\n";
  }
  return parsed.instance;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    write_file(cfg.output, text);
  }
}

std::vector<qfl::Qubit> rendered_qubits(const Config& cfg, const qfl::QubitLayout& layout) {
  std::vector<qfl::Qubit> qs;
  if (cfg.render == "full") {
    for (std::size_t q = 0; q < layout.width(); ++q) qs.push_back(static_cast<qfl::Qubit>(q));
    return qs;
  }
  qs = layout.all_data();
  if (auto f = layout.final_label()) qs.push_back(*f);
  return qs;
}

qfl::CompiledQfl compile(const Config& cfg, const qfl::ColoringInstance& inst) {
  return qfl::compile_qfl(inst, {use_reset(cfg), !cfg.no_prep, sim_cap(cfg)});
}

int cmd_compile(const Config& cfg) {
  const auto inst = load(cfg);
  const qfl::CompiledQfl c = compile(cfg, inst);
  const qfl::DepthReport r = qfl::depth_report(c.circuit);
  const qfl::ResourceEstimate est = qfl::estimate_resources(inst, use_reset(cfg));

  std::cout << "qubits: " << c.circuit.width() << '\n';
  std::cout << "gates: " << c.circuit.size() << '\n';
  std::size_t prep_depth = 0;
  for (const auto& [kind, count] : r.gate_counts) {
    std::size_t depth = 0;
    for (const auto& [tag, d] : r.per_stage) {
      if (tag.kind == kind) depth += d;
    }
    if (kind == qfl::StageKind::Prep) prep_depth = depth;
    std::cout << "  " << qfl::to_string(kind) << ": " << count << " gates, depth " << depth
              << '\n';
  }
  // formula excludes prep
  std::cout << "labeling depth (stage sum): " << r.stage_sum - prep_depth << '\n';
  std::cout << "labeling depth (formula): " << est.depth << '\n';
  std::cout << "circuit depth (asap): " << r.asap_depth << '\n';
  if (c.exceeds_sim_cap) {
    std::cerr << "warning: width " << c.circuit.width() << " exceeds simulation cap "
              << sim_cap(cfg) << "\n";
  }
  if (!cfg.output.empty()) {
    write_file(cfg.output, qfl::serialize(c.circuit));
    const std::string layout_path =
        cfg.layout_path.empty() ? cfg.output + ".layout" : cfg.layout_path;
    write_file(layout_path, qfl::serialize_layout(c.layout));
  } else if (!cfg.layout_path.empty()) {
    write_file(cfg.layout_path, qfl::serialize_layout(c.layout));
  }
  return 0;
}

int cmd_estimate(const Config& cfg) {
  const auto inst = load(cfg);
  const qfl::ResourceEstimate est = qfl::estimate_resources(inst, use_reset(cfg));
  std::cout << "mode: " << cfg.mode << '\n';
  std::cout << "qubits: " << est.qubits << '\n';
  std::cout << "depth: " << est.depth << '\n';
  std::cout << "per edge: subtraction " << est.subtraction_depth << ", or " << est.or_depth
            << ", and " << est.and_depth << ", reset " << est.reset_depth << '\n';
  return 0;
}

int cmd_simulate(const Config& cfg) {
  const auto inst = load(cfg);
  const qfl::CompiledQfl c = compile(cfg, inst);
  const qfl::Statevector state = qfl::run(c.circuit, 0, sim_cap(cfg));
  const auto qs = rendered_qubits(cfg, c.layout);
  const auto label = c.layout.final_label();

  std::ostringstream out;
  out << std::setprecision(10);
  out << "state amplitude probability label\n";
  std::size_t total = 0, feasible = 0;
  for (const auto& b : qfl::nonzero_states(state)) {
    const bool l = !label || ((b.index >> *label) & 1ULL);
    ++total;
    feasible += l;
    out << qfl::render_bits(b.index, qs) << ' ' << b.amplitude.real();
    if (b.amplitude.imag() != 0.0) out << (b.amplitude.imag() < 0 ? "-" : "+")
                                       << std::abs(b.amplitude.imag()) << 'i';
    out << ' ' << std::norm(b.amplitude) << ' ' << (l ? 1 : 0) << '\n';
  }
  out << "nonzero states: " << total << ", label 1: " << feasible << ", label 0: "
      << total - feasible << '\n';
  emit(cfg, out.str());
  return 0;
}

int cmd_sample(const Config& cfg) {
  if (cfg.shots < 1) throw UsageError("--shots must be at least 1");
  const auto inst = load(cfg);
  const qfl::CompiledQfl c = compile(cfg, inst);
  const qfl::Statevector state = qfl::run(c.circuit, 0, sim_cap(cfg));
  const auto counts = qfl::sample_counts(state, cfg.shots, cfg.seed);
  const auto records = qfl::project_counts(counts, rendered_qubits(cfg, c.layout));
  emit(cfg, qfl::records_to_csv(records));
  return 0;
}

int cmd_verify(const Config& cfg) {
  std::vector<qfl::VerificationReport> reports;
  if (cfg.instance_path.empty()) {
    reports = qfl::run_suite();
  } else {
    if (cfg.colors == 0) throw UsageError("--colors is required with an instance file");
    reports = qfl::run_instance_checks(load(cfg), cfg.instance_path);
  }
  emit(cfg, qfl::report_text(reports));
  if (!cfg.csv_path.empty()) write_file(cfg.csv_path, qfl::report_csv(reports));
  return qfl::all_passed(reports) ? 0 : 1;
}

int cmd_solve(const Config& cfg) {
  const auto inst = load(cfg);
  const qfl::SolutionSet set =
      cfg.sampled ? qfl::extract_feasible_sampled(inst, cfg.shots, cfg.seed, use_reset(cfg),
                                                  sim_cap(cfg))
                  : qfl::extract_feasible_exact(inst, use_reset(cfg), sim_cap(cfg));
  std::cerr << qfl::solution_summary(set) << '\n';
  emit(cfg, qfl::solutions_to_csv(inst, set));
  return 0;
}

int cmd_export(const Config& cfg) {
  qfl::Circuit c = qfl::deserialize(read_file(cfg.instance_path));
  if (cfg.expand_negative) c = qfl::expand_negative_controls(c);
  emit(cfg, qfl::serialize(c));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph-coloring feasibility labeling circuits"};
  app.require_subcommand(1);
  Config cfg;

  auto add_instance = [&](CLI::App* sub) {
    sub->add_option("instance", cfg.instance_path, "DIMACS .col file")->required();
    sub->add_option("-k,--colors", cfg.colors, "number of colors")
        ->required()
        ->check(CLI::Range(2, 1 << 20));
  };
  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", cfg.mode, "ancilla handling")
        ->check(CLI::IsMember({"reset", "no-reset"}));
  };
  auto add_sim = [&](CLI::App* sub) {
    sub->add_flag("--no-prep", cfg.no_prep, "skip the Hadamard layer on data qubits");
    sub->add_option("--sim-cap", cfg.sim_cap, "max simulated width (env QFL_SIM_CAP)");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", cfg.output, "output file (default stdout)");
  };
  auto add_render = [&](CLI::App* sub) {
    sub->add_option("--render", cfg.render, "qubits shown in bitstrings")
        ->check(CLI::IsMember({"full", "data+label"}));
  };
  auto add_shots = [&](CLI::App* sub) {
    sub->add_option("--shots", cfg.shots, "number of shots")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "RNG seed");
  };

  auto* compile = app.add_subcommand("compile", "build the labeling circuit");
  add_instance(compile);
  add_mode(compile);
  compile->add_flag("--no-prep", cfg.no_prep, "skip the Hadamard layer on data qubits");
  compile->add_option("-o,--output", cfg.output, "circuit file");
  compile->add_option("--layout", cfg.layout_path, "layout sidecar (default <output>.layout)");
  compile->add_option("--sim-cap", cfg.sim_cap, "width above which a warning is printed");

  auto* estimate = app.add_subcommand("estimate", "closed-form qubit and depth counts");
  add_instance(estimate);
  add_mode(estimate);

  auto* simulate = app.add_subcommand("simulate", "print nonzero basis states");
  add_instance(simulate);
  add_mode(simulate);
  add_sim(simulate);
  add_render(simulate);
  add_output(simulate);

  auto* sample = app.add_subcommand("sample", "write measurement counts as CSV");
  add_instance(sample);
  add_mode(sample);
  add_sim(sample);
  add_render(sample);
  add_shots(sample);
  add_output(sample);

  auto* verify = app.add_subcommand("verify", "run verification checks");
  verify->add_option("instance", cfg.instance_path, "DIMACS .col file (default: built-in suite)");
  verify->add_option("-k,--colors", cfg.colors, "number of colors")->check(CLI::Range(2, 1 << 20));
  verify->add_option("--csv", cfg.csv_path, "also write a CSV report");
  add_output(verify);

  auto* solve = app.add_subcommand("solve", "extract feasible colorings");
  add_instance(solve);
  add_mode(solve);
  solve->add_flag("--sampled", cfg.sampled, "post-select sampled shots instead of exact");
  solve->add_option("--sim-cap", cfg.sim_cap, "max simulated width (env QFL_SIM_CAP)");
  add_shots(solve);
  add_output(solve);

  auto* exp = app.add_subcommand("export", "read and rewrite a circuit file");
  exp->add_option("circuit", cfg.instance_path, "circuit file")->required();
  exp->add_flag("--expand-negative", cfg.expand_negative,
                "rewrite negative controls as X-conjugated positive ones");
  add_output(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (compile->parsed()) return cmd_compile(cfg);
    if (estimate->parsed()) return cmd_estimate(cfg);
    if (simulate->parsed()) return cmd_simulate(cfg);
    if (sample->parsed()) return cmd_sample(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (solve->parsed()) return cmd_solve(cfg);
    if (exp->parsed()) return cmd_export(cfg);
  } catch (const qfl::ResourceLimit& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const qfl::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
