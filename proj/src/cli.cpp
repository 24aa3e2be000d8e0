// Copyright 2026 The Spectrum Auction Authors.
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

#include "spectrum/cli.hpp"

#include <ostream>

#include "CLI11.hpp"
#include "spectrum/harness.hpp"
#include "spectrum/mechanism.hpp"
#include "spectrum/oracle.hpp"
#include "spectrum/packing.hpp"
#include "spectrum/report.hpp"
#include "spectrum/serialization.hpp"

namespace spectrum {

namespace {

struct GeneratorFlags {
  std::string environment = "pc";
  std::string scheme = "uniform";
  GeneratorSpec spec;

  void attach(CLI::App& cmd) {
    cmd.add_option("--env", environment, "pc, fixed-power, conflict or secondary")
        ->capture_default_str();
    cmd.add_option("--n", spec.bidders, "number of bidders")->capture_default_str();
    cmd.add_option("--k", spec.channels, "number of channels")->capture_default_str();
    cmd.add_option("--alpha", spec.params.alpha, "path-loss exponent")->capture_default_str();
    cmd.add_option("--beta", spec.params.beta, "SINR threshold")->capture_default_str();
    cmd.add_option("--noise", spec.params.noise, "ambient noise")->capture_default_str();
    cmd.add_option("--area", spec.area, "side of the square deployment area")
        ->capture_default_str();
    cmd.add_option("--min-length", spec.min_length, "shortest link")->capture_default_str();
    cmd.add_option("--max-length", spec.max_length, "longest link")->capture_default_str();
    cmd.add_option("--density", spec.density, "conflict probability")->capture_default_str();
    cmd.add_option("--scheme", scheme, "uniform, linear or square_root")->capture_default_str();
    cmd.add_option("--base-power", spec.base_power, "fixed-power constant")
        ->capture_default_str();
    cmd.add_option("--grid", spec.grid_side, "secondary-network grid side")
        ->capture_default_str();
    cmd.add_option("--edge-keep", spec.edge_keep, "secondary-network edge probability")
        ->capture_default_str();
  }

  GeneratorSpec resolve() const {
    GeneratorSpec s = spec;
    s.environment = parse_environment(environment);
    s.scheme = parse_power_scheme(scheme);
    s.validate();
    return s;
  }
};

ValueModel parse_value_model(const std::string& name) {
  if (name == "uniform") return ValueModel::kUniform;
  if (name == "dominant") return ValueModel::kDominant;
  throw InputError("unknown value model '" + name + "'");
}

std::vector<double> load_or_generate_values(const std::string& path, std::size_t n,
                                            std::uint64_t seed, const std::string& model) {
  if (!path.empty()) {
    auto values = values_from_json(read_json_file(path));
    if (values.size() != n) throw InputError("value file does not match the bidder count");
    return values;
  }
  return generate_values(n, seed, parse_value_model(model));
}

void emit_json(const std::string& path, const Json& doc, std::ostream& out) {
  if (path.empty()) {
    out << doc.dump(2) << '\n';
  } else {
    write_json_file(path, doc);
  }
}

void emit_reports(const std::string& prefix, const std::string& summary, const std::string& csv,
                  const std::string* svg, std::ostream& out) {
  out << summary;
  if (prefix.empty()) return;
  write_text_file(prefix + ".summary.txt", summary);
  write_text_file(prefix + ".csv", csv);
  if (svg != nullptr) write_text_file(prefix + ".svg", *svg);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Truthful random-sampling spectrum auctions", "spectrum-auction"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  double epsilon = kDefaultEpsilon;
  std::string instance_path;
  std::string values_path;
  std::string value_model = "uniform";
  std::string packer_spec;
  std::string out_path;
  std::size_t trials = 1000;
  std::size_t tapes = 10;
  std::size_t deviations = 20;
  std::size_t instances = 0;
  bool with_oracle = false;
  bool cardinality = false;
  GeneratorFlags gen_flags;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "64-bit seed")->capture_default_str();
    cmd->add_option("--out", out_path, "output path (prefix for multi-file reports)");
  };
  auto add_mechanism = [&](CLI::App* cmd) {
    cmd->add_option("--instance", instance_path, "instance JSON file");
    cmd->add_option("--values", values_path, "true values JSON file");
    cmd->add_option("--value-model", value_model, "uniform or dominant (generated values)")
        ->capture_default_str();
    cmd->add_option("--epsilon", epsilon, "sampling probability")->capture_default_str();
    cmd->add_option("--packer", packer_spec,
                    "pc, conflict, fixed-power, secondary, oracle or extend:<sub>");
  };

  auto* gen = app.add_subcommand("gen", "generate a random instance");
  add_common(gen);
  gen_flags.attach(*gen);

  auto* run = app.add_subcommand("run", "run the mechanism once and print the outcome");
  add_common(run);
  add_mechanism(run);

  auto* audit = app.add_subcommand("audit", "truthfulness audit on fixed random tapes");
  add_common(audit);
  add_mechanism(audit);
  audit->add_option("--tapes", tapes, "tapes per instance")->capture_default_str();
  audit->add_option("--deviations", deviations, "misreports per bidder and tape")
      ->capture_default_str();
  audit->add_option("--instances", instances, "audit this many generated instances");
  gen_flags.attach(*audit);

  auto* bench = app.add_subcommand("bench", "welfare and revenue experiment");
  add_common(bench);
  add_mechanism(bench);
  bench->add_option("--trials", trials, "number of tapes")->capture_default_str();
  bench->add_flag("--oracle", with_oracle, "compare against the exact optimum");
  gen_flags.attach(*bench);

  auto* psi = app.add_subcommand("psi", "measure packer quality against the exact oracle");
  add_common(psi);
  psi->add_option("--packer", packer_spec, "packer to measure");
  psi->add_option("--instances", instances, "number of generated instances");
  gen_flags.attach(*psi);

  auto* oracle = app.add_subcommand("oracle", "exact maximum-welfare or cardinality solve");
  add_common(oracle);
  oracle->add_option("--instance", instance_path, "instance JSON file")->required();
  oracle->add_option("--values", values_path, "bids JSON file (welfare objective)");
  oracle->add_flag("--cardinality", cardinality, "maximise the number of winners");

  std::vector<const char*> argv{"spectrum-auction"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitInputError;
  }

  try {
    auto load_instance = [&]() -> Instance {
      if (!instance_path.empty()) return instance_from_json(read_json_file(instance_path));
      return generate_instance(gen_flags.resolve(), seed);
    };
    auto packer_for = [&](const Instance& inst) {
      return make_packer(packer_spec.empty() ? default_packer_for(inst) : packer_spec, inst);
    };

    if (*gen) {
      emit_json(out_path, to_json(generate_instance(gen_flags.resolve(), seed)), out);
      return kExitOk;
    }

    if (*run) {
      if (instance_path.empty()) throw InputError("run needs --instance");
      const Instance inst = load_instance();
      const auto values = load_or_generate_values(values_path, inst.bidder_count(),
                                                  mix_seed(seed, 0xA0D1), value_model);
      const auto packer = packer_for(inst);
      const Mechanism mechanism(*packer, epsilon);
      const Outcome outcome = mechanism.run(values, seed);
      emit_json(out_path, to_json(outcome), out);
      bool ok = check_feasible(inst, outcome.allocation).feasible();
      for (BidderId i = 0; i < values.size(); ++i) ok = ok && outcome.payments[i] <= values[i];
      return ok ? kExitOk : kExitViolation;
    }

    if (*audit) {
      AuditConfig config{epsilon, tapes, deviations, seed};
      AuditReport total;
      const std::size_t count = instance_path.empty() ? std::max<std::size_t>(instances, 1) : 1;
      for (std::size_t idx = 0; idx < count; ++idx) {
        const std::uint64_t inst_seed = instance_path.empty() && count > 1 ? mix_seed(seed, idx) : seed;
        const Instance inst = instance_path.empty()
                                  ? generate_instance(gen_flags.resolve(), inst_seed)
                                  : load_instance();
        const auto values = load_or_generate_values(values_path, inst.bidder_count(),
                                                    mix_seed(inst_seed, 0xA0D1), value_model);
        const auto packer = packer_for(inst);
        const Mechanism mechanism(*packer, epsilon);
        config.seed = inst_seed;
        AuditReport report = audit_truthfulness(mechanism, values, config, count == 1);
        total.checks += report.checks;
        total.violations += report.violations;
        total.rationality_failures += report.rationality_failures;
        total.max_violation = std::max(total.max_violation, report.max_violation);
        total.violating.insert(total.violating.end(), report.violating.begin(),
                               report.violating.end());
        total.entries.insert(total.entries.end(), report.entries.begin(), report.entries.end());
      }
      emit_reports(out_path, audit_summary(total), audit_csv(total), nullptr, out);
      return total.passed() ? kExitOk : kExitViolation;
    }

    if (*bench) {
      const Instance inst = load_instance();
      const auto values = load_or_generate_values(values_path, inst.bidder_count(),
                                                  mix_seed(seed, 0xA0D1), value_model);
      const auto packer = packer_for(inst);
      const Mechanism mechanism(*packer, epsilon);
      const WelfareStats stats = welfare_experiment(mechanism, values, trials, seed, with_oracle);
      const std::string svg = welfare_svg(stats);
      emit_reports(out_path, welfare_summary(stats), welfare_csv(stats), &svg, out);
      const bool ok = stats.floor_met() && stats.revenue_exceeds_welfare == 0;
      return ok ? kExitOk : kExitViolation;
    }

    if (*psi) {
      const GeneratorSpec spec = gen_flags.resolve();
      std::vector<std::uint64_t> seeds;
      for (std::size_t i = 0; i < std::max<std::size_t>(instances, 1) ; ++i) {
        seeds.push_back(mix_seed(seed, i));
      }
      const PsiTable table = measure_psi(
          packer_spec.empty() ? std::string("oracle") : packer_spec, spec, seeds);
      const std::string svg = psi_svg(table);
      emit_reports(out_path, psi_summary(table), psi_csv(table), &svg, out);
      return table.below_advertised == 0 ? kExitOk : kExitViolation;
    }

    if (*oracle) {
      const Instance inst = load_instance();
      OracleResult result;
      if (cardinality || values_path.empty()) {
        std::vector<BidderId> everyone(inst.bidder_count());
        for (BidderId i = 0; i < everyone.size(); ++i) everyone[i] = i;
        result = brute_force_max_cardinality(inst, everyone);
      } else {
        result = brute_force_max_welfare(inst, values_from_json(read_json_file(values_path)));
      }
      Json doc;
      doc["objective"] = cardinality || values_path.empty() ? "cardinality" : "welfare";
      doc["best_value"] = result.best_value;
      doc["winners"] = result.winners;
      doc["explored"] = result.explored;
      doc["witness"] = to_json(result.witness);
      emit_json(out_path, doc, out);
      return kExitOk;
    }
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const RefusalError& e) {
    err << "refused: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitViolation;
  }
  return kExitOk;
}

}  // namespace spectrum
