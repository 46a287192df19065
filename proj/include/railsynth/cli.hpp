/**
 * Copyright 2026 railsynth contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "railsynth/common.hpp"
#include "railsynth/netlist.hpp"
#include "railsynth/nogo.hpp"
#include "railsynth/oracle.hpp"
#include "railsynth/sampling.hpp"
#include "railsynth/synth.hpp"
#include "railsynth/target_doc.hpp"

namespace railsynth {

// Subcommands:
//   synth    --target <file> --out-netlist <file> --report <file>
//   simulate --netlist <file> --target <file> --report <file>
//   verify   --target <file> [--oracle]
//   nogo     --target <file> | --sweep <trials> --seed <int>
//   closure  --k <int> --trials <int> --seed <int>
//   prob     --n <int>
//
// Exit codes: 0 success, 1 domain errors, 2 parse diagnostics.
// Reports are JSON; --pretty switches stdout to an aligned table view.

namespace cli_detail {

using ordered_json = nlohmann::ordered_json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

inline ordered_json complex_json(const Complex& z) {
  return ordered_json::array({z.real(), z.imag()});
}

inline ordered_json settings_json(const SynthesisPlan& plan) {
  ordered_json arr = ordered_json::array();
  for (const NamedStage& s : plan.settings) {
    arr.push_back({{"stage", s.name},
                   {"theta", s.params.theta},
                   {"phi_top", s.params.phi_top},
                   {"phi_bottom", s.params.phi_bottom}});
  }
  return arr;
}

inline ordered_json input_modes_json(const SynthesisPlan& plan) {
  ordered_json arr = ordered_json::array();
  for (const auto& [label, mode] : plan.input_modes)
    arr.push_back({{"label", label.index}, {"mode", mode}});
  return arr;
}

inline void emit_report(const ordered_json& report, const std::string& report_path,
                        bool pretty) {
  if (!report_path.empty()) write_file(report_path, report.dump(2) + "\n");
  if (pretty) {
    for (const auto& [key, value] : report.items())
      std::cout << key << ": " << value.dump() << "\n";
  } else {
    std::cout << report.dump() << "\n";
  }
}

inline ordered_json output_state_json(const ProductState& s) {
  ordered_json arr = ordered_json::array();
  for (const auto& ph : s.photons) {
    ordered_json amps = ordered_json::array();
    for (const Complex& z : ph.state.amps) amps.push_back(complex_json(z));
    arr.push_back({{"label", ph.label.index}, {"amplitudes", amps}});
  }
  return arr;
}

/// Injection modes of the documented synthesized layout for n photons.
inline std::vector<int> layout_input_modes(int n) {
  if (n == 1) return {0};
  std::vector<int> modes{1, 2};
  for (int k = 3; k <= n; ++k) modes.push_back(2 * k - 1);
  return modes;
}

inline std::pair<int, int> layout_rails(int n) {
  return n == 1 ? std::pair<int, int>{0, 1} : std::pair<int, int>{2, 3};
}

inline int run_synth(const std::string& target_path, const std::string& netlist_path,
                     const std::string& report_path, bool pretty) {
  const TargetSpec target = parse_target_doc(read_file(target_path));
  const VerifyReport verified = verify_target(target);
  if (!netlist_path.empty()) write_file(netlist_path, emit_netlist(verified.plan.circuit));

  ordered_json report{{"command", "synth"},
                      {"photons", target.size()},
                      {"fidelity", verified.fidelity},
                      {"probability", verified.probability},
                      {"predicted_probability", verified.plan.predicted_probability},
                      {"output_rails", {verified.plan.output_rails.first,
                                        verified.plan.output_rails.second}},
                      {"input_modes", input_modes_json(verified.plan)},
                      {"settings", settings_json(verified.plan)}};
  emit_report(report, report_path, pretty);
  return 0;
}

inline int run_simulate(const std::string& netlist_path, const std::string& target_path,
                        const std::string& report_path, bool pretty) {
  const Circuit circuit = parse_netlist(read_file(netlist_path));
  const TargetSpec target = parse_target_doc(read_file(target_path));
  const int n = target.size();
  const int expected_modes = n == 1 ? 2 : 2 * n;
  if (circuit.num_modes() != expected_modes)
    throw Error("netlist has " + std::to_string(circuit.num_modes()) + " modes but " +
                std::to_string(n) + " photon(s) need the synthesized layout with " +
                std::to_string(expected_modes));

  const std::vector<int> in_modes = layout_input_modes(n);
  ProductState input;
  for (int k = 0; k < n; ++k) {
    std::vector<Complex> amps(static_cast<std::size_t>(circuit.num_modes()), Complex{0.0, 0.0});
    amps[static_cast<std::size_t>(in_modes[static_cast<std::size_t>(k)])] = Complex{1.0, 0.0};
    input.photons.push_back(
        {target.photons[static_cast<std::size_t>(k)].label, SinglePhotonState{std::move(amps)}});
  }

  const PostSelectResult result = simulate(circuit, input);
  const double fidelity = product_fidelity(
      result.state, target_as_product(target, layout_rails(n), circuit.num_modes()));

  ordered_json report{{"command", "simulate"},
                      {"modes", circuit.num_modes()},
                      {"photons", n},
                      {"fidelity", fidelity},
                      {"probability", result.probability},
                      {"output", output_state_json(result.state)}};
  emit_report(report, report_path, pretty);
  return 0;
}

inline int run_verify(const std::string& target_path, bool with_oracle, bool pretty) {
  const TargetSpec target = parse_target_doc(read_file(target_path));
  const VerifyReport verified = verify_target(target);

  ordered_json report{{"command", "verify"},
                      {"photons", target.size()},
                      {"fidelity", verified.fidelity},
                      {"probability", verified.probability},
                      {"predicted_probability", verified.plan.predicted_probability}};
  if (with_oracle) {
    const CrossCheckReport check =
        cross_check(verified.plan.circuit, canonical_input(verified.plan));
    report["oracle"] = {{"max_amp_diff", check.max_amp_diff},
                        {"prob_diff", check.prob_diff}};
  }
  emit_report(report, "", pretty);
  return 0;
}

inline int run_nogo_target(const std::string& target_path, bool pretty) {
  const TargetSpec target = parse_target_doc(read_file(target_path));
  const NoGoReport r = best_unitary_fidelity(target);
  ordered_json report{{"command", "nogo"},
                      {"pair_overlap", r.target_overlap},
                      {"best_fidelity", r.best_fidelity},
                      {"bound_1d", r.bound_1d},
                      {"gap", r.gap},
                      {"best_params",
                       {{"theta", r.best_stage.theta},
                        {"phi_top", r.best_stage.phi_top},
                        {"phi_bottom", r.best_stage.phi_bottom},
                        {"input_phase", r.best_input_phase}}}};
  emit_report(report, "", pretty);
  return 0;
}

inline int run_nogo_sweep(int trials, std::uint64_t seed, bool pretty) {
  if (trials < 1) throw OutOfRange("trial count must be at least 1");
  Rng rng(seed);
  ordered_json rows = ordered_json::array();
  double max_violation = -1.0;
  double min_gap = 1.0;
  double max_best = 0.0;
  for (int i = 0; i < trials; ++i) {
    const TargetSpec t = random_target(rng, 2);
    const NoGoReport r = best_unitary_fidelity(t);
    rows.push_back({{"pair_overlap", r.target_overlap},
                    {"best_fidelity", r.best_fidelity},
                    {"bound_1d", r.bound_1d},
                    {"gap", r.gap}});
    max_violation = std::max(max_violation, r.best_fidelity - r.bound_1d);
    min_gap = std::min(min_gap, r.gap);
    max_best = std::max(max_best, r.best_fidelity);
  }
  ordered_json report{{"command", "nogo-sweep"},
                      {"trials", trials},
                      {"seed", seed},
                      {"max_best_fidelity", max_best},
                      {"max_bound_violation", max_violation},
                      {"min_gap", min_gap},
                      {"results", rows}};
  emit_report(report, "", pretty);
  return 0;
}

inline int run_closure(int k, int trials, std::uint64_t seed, bool pretty) {
  const ClosureReport r = closure_experiment(k, trials, seed);
  ordered_json report{{"command", "closure"},
                      {"k", k},
                      {"trials", trials},
                      {"seed", seed},
                      {"fraction_noncanonical", r.fraction_noncanonical},
                      {"max_distance", r.max_distance},
                      {"mean_fit_residual", r.mean_fit_residual}};
  emit_report(report, "", pretty);
  return 0;
}

inline int run_prob(int n) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g\n", predicted_success_probability(n));
  std::cout << buf;
  return 0;
}

}  // namespace cli_detail

inline int run_command(int argc, const char* const* argv) {
  CLI::App app{"simulator and synthesizer of post-selected linear-optical circuits "
               "preparing two-rail product states of distinguishable photons"};
  app.require_subcommand(1);
  app.fallthrough();
  bool pretty = false;
  app.add_flag("--pretty", pretty, "print reports as aligned tables instead of JSON");

  std::string target_path;
  std::string netlist_path;
  std::string report_path;
  bool with_oracle = false;
  int sweep_trials = 0;
  int closure_k = 1;
  int closure_trials = 1;
  std::uint64_t seed = 0;
  int prob_n = 1;

  CLI::App* synth_cmd = app.add_subcommand("synth", "synthesize a circuit for a target");
  synth_cmd->add_option("--target", target_path, "target document")->required();
  synth_cmd->add_option("--out-netlist", netlist_path, "where to write the circuit netlist");
  synth_cmd->add_option("--report", report_path, "where to write the JSON report");

  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "run a netlist on the canonical inputs for a target");
  simulate_cmd->add_option("--netlist", netlist_path, "circuit netlist")->required();
  simulate_cmd->add_option("--target", target_path, "target document")->required();
  simulate_cmd->add_option("--report", report_path, "where to write the JSON report");

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "synthesize and check a target end to end");
  verify_cmd->add_option("--target", target_path, "target document")->required();
  verify_cmd->add_flag("--oracle", with_oracle, "cross-check against the brute-force simulator");

  CLI::App* nogo_cmd =
      app.add_subcommand("nogo", "best unitary-only fidelity for two-photon targets");
  CLI::Option* nogo_target = nogo_cmd->add_option("--target", target_path, "target document");
  CLI::Option* nogo_sweep =
      nogo_cmd->add_option("--sweep", sweep_trials, "number of random targets");
  CLI::Option* nogo_seed = nogo_cmd->add_option("--seed", seed, "sweep seed");
  nogo_sweep->excludes(nogo_target);
  nogo_target->excludes(nogo_sweep);
  nogo_seed->needs(nogo_sweep);

  CLI::App* closure_cmd =
      app.add_subcommand("closure", "canonical-closure statistics of stage cascades");
  closure_cmd->add_option("--k", closure_k, "stages per cascade")->required();
  closure_cmd->add_option("--trials", closure_trials, "number of cascades")->required();
  closure_cmd->add_option("--seed", seed, "sampling seed")->required();

  CLI::App* prob_cmd =
      app.add_subcommand("prob", "predicted success probability for n photons");
  prob_cmd->add_option("--n", prob_n, "photon count")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (synth_cmd->parsed())
      return cli_detail::run_synth(target_path, netlist_path, report_path, pretty);
    if (simulate_cmd->parsed())
      return cli_detail::run_simulate(netlist_path, target_path, report_path, pretty);
    if (verify_cmd->parsed()) return cli_detail::run_verify(target_path, with_oracle, pretty);
    if (nogo_cmd->parsed()) {
      if (nogo_target->count() > 0) return cli_detail::run_nogo_target(target_path, pretty);
      if (nogo_sweep->count() > 0) return cli_detail::run_nogo_sweep(sweep_trials, seed, pretty);
      std::cerr << "nogo needs either --target or --sweep\n";
      return 2;
    }
    if (closure_cmd->parsed())
      return cli_detail::run_closure(closure_k, closure_trials, seed, pretty);
    if (prob_cmd->parsed()) return cli_detail::run_prob(prob_n);
  } catch (const Diagnostic& d) {
    std::cerr << "error";
    if (d.line > 0) std::cerr << " (line " << d.line << ", column " << d.column << ")";
    std::cerr << ": " << d.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

inline int run_command(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run_command(static_cast<int>(argv.size()), argv.data());
}

}  // namespace railsynth
