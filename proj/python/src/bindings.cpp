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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "spectrum/cli.hpp"
#include "spectrum/harness.hpp"
#include "spectrum/mechanism.hpp"
#include "spectrum/oracle.hpp"
#include "spectrum/packing.hpp"
#include "spectrum/power.hpp"
#include "spectrum/serialization.hpp"

namespace py = pybind11;
using namespace spectrum;

namespace {

Instance instance_from_string(const std::string& text) {
  try {
    return instance_from_json(Json::parse(text));
  } catch (const Json::exception& e) {
    throw InputError(std::string("cannot parse instance: ") + e.what());
  }
}

std::vector<BidderId> all_bidders(const Instance& instance) {
  std::vector<BidderId> ids(instance.bidder_count());
  for (BidderId i = 0; i < ids.size(); ++i) ids[i] = i;
  return ids;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Truthful random-sampling spectrum auctions";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<RefusalError>(m, "RefusalError", PyExc_RuntimeError);

  py::enum_<EnvironmentKind>(m, "EnvironmentKind")
      .value("SINR_POWER_CONTROL", EnvironmentKind::kSinrPowerControl)
      .value("SINR_FIXED_POWER", EnvironmentKind::kSinrFixedPower)
      .value("CONFLICT_GRAPH", EnvironmentKind::kConflictGraph)
      .value("SECONDARY_NETWORK", EnvironmentKind::kSecondaryNetwork);

  py::class_<PhysicalParams>(m, "PhysicalParams")
      .def(py::init<>())
      .def(py::init([](double alpha, double beta, double noise) {
             PhysicalParams p{alpha, beta, noise};
             p.validate();
             return p;
           }),
           py::arg("alpha"), py::arg("beta"), py::arg("noise"))
      .def_readwrite("alpha", &PhysicalParams::alpha)
      .def_readwrite("beta", &PhysicalParams::beta)
      .def_readwrite("noise", &PhysicalParams::noise);

  py::class_<Instance>(m, "Instance")
      .def_static("from_json", &instance_from_string, py::arg("text"))
      .def("to_json", [](const Instance& i) { return to_json(i).dump(2); })
      .def_property_readonly("bidder_count", &Instance::bidder_count)
      .def_property_readonly("channels", &Instance::channels)
      .def_property_readonly("kind", &Instance::kind)
      .def_property_readonly("params", &Instance::params)
      .def("with_channels", &Instance::with_channels, py::arg("channels"))
      .def("__eq__", [](const Instance& a, const Instance& b) { return a == b; });

  py::class_<PathHop>(m, "PathHop")
      .def_readonly("edge", &PathHop::edge)
      .def_readonly("channel", &PathHop::channel);

  py::class_<Allocation>(m, "Allocation")
      .def(py::init<>())
      .def_readwrite("channels", &Allocation::channels)
      .def_readwrite("powers", &Allocation::powers)
      .def_readwrite("paths", &Allocation::paths)
      .def("winners", &Allocation::winners)
      .def("__len__", &Allocation::size)
      .def("to_json", [](const Allocation& a) { return to_json(a).dump(2); });

  py::class_<RandomTape>(m, "RandomTape")
      .def_readonly("seed", &RandomTape::seed)
      .def_readonly("secprice", &RandomTape::secprice)
      .def_readonly("stat", &RandomTape::stat)
      .def_readonly("price_exponent", &RandomTape::price_exponent);

  py::class_<Outcome>(m, "Outcome")
      .def_readonly("allocation", &Outcome::allocation)
      .def_readonly("payments", &Outcome::payments)
      .def_readonly("price", &Outcome::price)
      .def_readonly("tape", &Outcome::tape)
      .def_readonly("removed", &Outcome::removed)
      .def("winners", &Outcome::winners)
      .def("revenue", &Outcome::revenue)
      .def("welfare", [](const Outcome& o, const std::vector<double>& v) { return o.welfare(v); })
      .def("to_json", [](const Outcome& o) { return to_json(o).dump(2); });

  py::class_<OracleResult>(m, "OracleResult")
      .def_readonly("best_value", &OracleResult::best_value)
      .def_readonly("witness", &OracleResult::witness)
      .def_readonly("winners", &OracleResult::winners)
      .def_readonly("explored", &OracleResult::explored);

  py::class_<AuditReport>(m, "AuditReport")
      .def_readonly("checks", &AuditReport::checks)
      .def_readonly("violations", &AuditReport::violations)
      .def_readonly("max_violation", &AuditReport::max_violation)
      .def_readonly("rationality_failures", &AuditReport::rationality_failures)
      .def("passed", &AuditReport::passed);

  py::class_<Summary>(m, "Summary")
      .def_readonly("count", &Summary::count)
      .def_readonly("mean", &Summary::mean)
      .def_readonly("stddev", &Summary::stddev)
      .def_readonly("std_error", &Summary::std_error);

  py::class_<WelfareStats>(m, "WelfareStats")
      .def_readonly("packer", &WelfareStats::packer)
      .def_readonly("welfare", &WelfareStats::welfare)
      .def_readonly("revenue", &WelfareStats::revenue)
      .def_readonly("optimum", &WelfareStats::optimum)
      .def_readonly("floor_factor", &WelfareStats::floor_factor)
      .def_readonly("revenue_exceeds_welfare", &WelfareStats::revenue_exceeds_welfare)
      .def("welfare_floor", &WelfareStats::welfare_floor)
      .def("floor_met", &WelfareStats::floor_met);

  py::class_<PsiTable>(m, "PsiTable")
      .def_readonly("packer", &PsiTable::packer)
      .def_readonly("advertised", &PsiTable::advertised)
      .def_readonly("min_ratio", &PsiTable::min_ratio)
      .def_readonly("mean_ratio", &PsiTable::mean_ratio)
      .def_readonly("below_advertised", &PsiTable::below_advertised)
      .def_property_readonly("ratios", [](const PsiTable& t) {
        std::vector<double> r;
        for (const auto& row : t.rows) r.push_back(row.ratio);
        return r;
      });

  m.def(
      "generate_instance",
      [](const std::string& env, std::size_t n, std::size_t k, std::uint64_t seed, double alpha,
         double beta, double noise, double area, double min_length, double max_length,
         double density, const std::string& scheme, double base_power, std::size_t grid_side,
         double edge_keep) {
        GeneratorSpec spec;
        spec.environment = parse_environment(env);
        spec.bidders = n;
        spec.channels = k;
        spec.params = {alpha, beta, noise};
        spec.area = area;
        spec.min_length = min_length;
        spec.max_length = max_length;
        spec.density = density;
        spec.scheme = parse_power_scheme(scheme);
        spec.base_power = base_power;
        spec.grid_side = grid_side;
        spec.edge_keep = edge_keep;
        return generate_instance(spec, seed);
      },
      py::arg("env") = "pc", py::arg("n") = 6, py::arg("k") = 1, py::arg("seed") = 0,
      py::arg("alpha") = 2.0, py::arg("beta") = 1.0, py::arg("noise") = 1.0,
      py::arg("area") = 100.0, py::arg("min_length") = 1.0, py::arg("max_length") = 4.0,
      py::arg("density") = 0.2, py::arg("scheme") = "uniform", py::arg("base_power") = 10.0,
      py::arg("grid_side") = 3, py::arg("edge_keep") = 0.75);

  m.def(
      "generate_values",
      [](std::size_t n, std::uint64_t seed, const std::string& model, double scale) {
        return generate_values(n, seed,
                               model == "dominant" ? ValueModel::kDominant : ValueModel::kUniform,
                               scale);
      },
      py::arg("n"), py::arg("seed"), py::arg("model") = "uniform", py::arg("scale") = 100.0);

  m.def(
      "sinr_ratio",
      [](const Instance& inst, BidderId i, const std::vector<BidderId>& co_channel,
         const PowerMap& powers) { return sinr_ratio(inst, i, co_channel, powers); },
      py::arg("instance"), py::arg("link"), py::arg("co_channel"), py::arg("powers"));

  m.def(
      "check_feasible",
      [](const Instance& inst, const Allocation& a, double tol) {
        const FeasibilityReport r = check_feasible(inst, a, tol);
        std::vector<std::string> messages;
        for (const auto& v : r.violations) messages.push_back(v.message);
        return py::make_tuple(r.feasible(), messages);
      },
      py::arg("instance"), py::arg("allocation"), py::arg("tolerance") = kDefaultTolerance);

  m.def(
      "solve_power_assignment",
      [](const Instance& inst, const std::vector<BidderId>& links) {
        const PowerSolveResult r = solve_power_assignment(inst, links);
        return py::make_tuple(r.feasible(), r.powers, r.residuals);
      },
      py::arg("instance"), py::arg("links"));

  m.def(
      "pack",
      [](const std::string& packer, const Instance& inst,
         std::optional<std::vector<BidderId>> candidates) {
        return make_packer(packer, inst)->pack(candidates ? *candidates : all_bidders(inst));
      },
      py::arg("packer"), py::arg("instance"), py::arg("candidates") = py::none());

  m.def("admission_threshold", &admission_threshold, py::arg("params"));

  m.def(
      "vickrey",
      [](const std::vector<double>& bids) {
        const VickreyResult v = vickrey(bids);
        return py::make_tuple(v.winner, v.payment);
      },
      py::arg("bids"));
  m.def("sample_price", &sample_price, py::arg("best_sampled_bid"), py::arg("n"),
        py::arg("exponent"));
  m.def("prefilter", &prefilter, py::arg("instance"));

  m.def(
      "run_mechanism",
      [](const Instance& inst, const std::vector<double>& bids, double epsilon,
         const std::string& packer, std::uint64_t seed) {
        const auto p = make_packer(packer.empty() ? default_packer_for(inst) : packer, inst);
        return Mechanism(*p, epsilon).run(bids, seed);
      },
      py::arg("instance"), py::arg("bids"), py::arg("epsilon") = kDefaultEpsilon,
      py::arg("packer") = "", py::arg("seed") = 0);

  m.def(
      "utility",
      [](const Outcome& o, const std::vector<double>& values) { return utility(o, values); },
      py::arg("outcome"), py::arg("true_values"));

  m.def(
      "brute_force_max_welfare",
      [](const Instance& inst, const std::vector<double>& bids) {
        return brute_force_max_welfare(inst, bids);
      },
      py::arg("instance"), py::arg("bids"));
  m.def(
      "brute_force_max_cardinality",
      [](const Instance& inst, std::optional<std::vector<BidderId>> candidates) {
        return brute_force_max_cardinality(inst, candidates ? *candidates : all_bidders(inst));
      },
      py::arg("instance"), py::arg("candidates") = py::none());

  m.def(
      "audit_truthfulness",
      [](const Instance& inst, const std::vector<double>& values, double epsilon,
         const std::string& packer, std::size_t tapes, std::size_t deviations,
         std::uint64_t seed) {
        const auto p = make_packer(packer.empty() ? default_packer_for(inst) : packer, inst);
        return audit_truthfulness(Mechanism(*p, epsilon), values,
                                  {epsilon, tapes, deviations, seed}, false);
      },
      py::arg("instance"), py::arg("values"), py::arg("epsilon") = kDefaultEpsilon,
      py::arg("packer") = "", py::arg("tapes") = 10, py::arg("deviations") = 20,
      py::arg("seed") = 0);

  m.def(
      "welfare_experiment",
      [](const Instance& inst, const std::vector<double>& values, double epsilon,
         const std::string& packer, std::size_t trials, std::uint64_t seed, bool oracle) {
        const auto p = make_packer(packer.empty() ? default_packer_for(inst) : packer, inst);
        return welfare_experiment(Mechanism(*p, epsilon), values, trials, seed, oracle);
      },
      py::arg("instance"), py::arg("values"), py::arg("epsilon") = kDefaultEpsilon,
      py::arg("packer") = "", py::arg("trials") = 1000, py::arg("seed") = 0,
      py::arg("oracle") = false);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
