// SPDX-License-Identifier: Apache-2.0
//
// mmtrack: slot-level simulator for mmWave beam tracking procedures
// Copyright (C) 2026 The mmtrack authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#include "mmtrack/beams.hpp"
#include "mmtrack/cli.hpp"
#include "mmtrack/config.hpp"
#include "mmtrack/energy.hpp"
#include "mmtrack/engine.hpp"
#include "mmtrack/linkmetrics.hpp"
#include "mmtrack/tracking.hpp"
#include "mmtrack/version.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace mmtrack;

namespace
{

py::dict ledger_dict(const EnergyLedger &l)
{
    py::dict d;
    d["arch"] = std::string(to_string(l.arch));
    d["refresh_count"] = l.refresh_count;
    d["refinement_count"] = l.refinement_count;
    d["refresh_energy"] = l.refresh_energy;
    d["refinement_energy"] = l.refinement_energy;
    d["total"] = l.total();
    return d;
}

py::dict trial_dict(const TrialResult &r)
{
    py::dict d;
    d["seed"] = r.seed;
    d["slots"] = r.slots;
    d["avg_rate"] = r.avg_rate;
    d["energy"] = ledger_dict(r.energy);
    d["handover_count"] = r.handover_count;
    d["beam_switch_count"] = r.beam_switch_count;
    d["tracking_loss_slots"] = r.tracking_loss_slots;
    d["skipped_refinements"] = r.skipped_refinements;
    d["enb_count"] = r.enb_count;
    d["deployment_digest"] = r.deployment_digest;
    std::vector<double> rate;
    rate.reserve(r.trace.size());
    for (const auto &s : r.trace)
        rate.push_back(s.rate_bps);
    d["rate_trace"] = rate;
    py::list events;
    for (const auto &e : r.event_log)
    {
        py::dict ev;
        ev["time"] = e.time;
        ev["kind"] = std::string(to_string(e.kind));
        ev["outcome"] = std::string(to_string(e.outcome));
        events.append(ev);
    }
    d["events"] = events;
    return d;
}

} // namespace

PYBIND11_MODULE(_mmtrack, m)
{
    m.doc() = "Slot-level simulator for mmWave beam tracking procedures";
    m.attr("__version__") = std::string(kVersion);

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<ScenarioConfig>(m, "Config")
        .def(py::init<>())
        .def("set", [](ScenarioConfig &c, const std::string &k, py::object v) { set_config_value(c, k, py::str(v).cast<std::string>()); })
        .def("get", [](const ScenarioConfig &c, const std::string &k) { return get_config_value(c, k); })
        .def("validate", &validate)
        .def("serialize", &serialize_config)
        .def("copy", [](const ScenarioConfig &c) { return c; })
        .def("__eq__", [](const ScenarioConfig &a, const ScenarioConfig &b) { return a == b; })
        .def_readwrite("seed", &ScenarioConfig::seed)
        .def_readwrite("trials", &ScenarioConfig::trials)
        .def_readwrite("sim_time_s", &ScenarioConfig::sim_time_s)
        .def_readwrite("refresh_period_s", &ScenarioConfig::refresh_period_s)
        .def_readwrite("refinement_period_s", &ScenarioConfig::refinement_period_s)
        .def_readwrite("large_scale_period_s", &ScenarioConfig::large_scale_period_s)
        .def_readwrite("k_ref", &ScenarioConfig::k_ref);

    m.def("config_keys", &config_keys);
    m.def("parse_config", &parse_config, py::arg("text"));
    m.def("load_config", [](const std::string &p) { return load_config(p); }, py::arg("path"));

    m.def("min_refresh_period", &min_refresh_period);
    m.def("min_refinement_period", &min_refinement_period);
    m.def("refresh_duration", [](const ScenarioConfig &c) { return plan_refresh(c).duration; });
    m.def("refinement_duration", [](const ScenarioConfig &c, int d_opt) { return plan_refinement(c, {0, 0, d_opt}).duration; },
          py::arg("cfg"), py::arg("d_opt") = 0);
    m.def("refinement_directions", &refinement_directions, py::arg("d_opt"), py::arg("k_ref"), py::arg("n_ue_dirs"));

    m.def("steering_vector",
          [](int rows, int cols, double azimuth, double spacing, double orientation) {
              return steering_vector({rows, cols, spacing, orientation}, azimuth);
          },
          py::arg("rows"), py::arg("cols"), py::arg("azimuth"), py::arg("spacing") = 0.5, py::arg("orientation") = 0.0);
    m.def("bf_gain", &bf_gain, py::arg("h"), py::arg("w_tx"), py::arg("w_rx"));

    m.def("sinr_db", py::overload_cast<double, double, double>(&sinr_db), py::arg("signal_w"), py::arg("interference_w"),
          py::arg("noise_w"));
    m.def("rate_bps", &rate_bps, py::arg("sinr_db"), py::arg("n_users"), py::arg("bandwidth_hz"));

    m.def("power_abf", [](const ScenarioConfig &c) { return power_abf(PowerProfile::from_config(c)); });
    m.def("power_dbf", [](const ScenarioConfig &c) { return power_dbf(PowerProfile::from_config(c)); });
    m.def("energy_event", [](const std::string &kind, const ScenarioConfig &c) {
        if (kind != "refresh" && kind != "refinement")
            throw ConfigError("kind", "expected refresh or refinement");
        return energy_event(kind == "refresh" ? SweepKind::Refresh : SweepKind::Refinement, c);
    });
    m.def("total_energy", [](const ScenarioConfig &c) { return ledger_dict(total_energy(c)); });

    m.def("run_trial",
          [](const ScenarioConfig &c, std::uint64_t seed, bool trace) {
              TrialOptions o;
              o.keep_trace = trace;
              TrialResult r;
              {
                  py::gil_scoped_release release;
                  r = run_trial(c, seed, o);
              }
              return trial_dict(r);
          },
          py::arg("cfg"), py::arg("seed"), py::arg("trace") = false);

    m.def("preset_names", &preset_names);
    m.def("run_batch",
          [](const ScenarioConfig &c, const std::string &sweep, const std::string &preset, int trials, std::uint64_t seed) {
              std::vector<SweepPoint> pts;
              if (!preset.empty())
                  pts = preset_points(preset);
              else if (!sweep.empty())
                  pts = sweep_points(SweepSpec::parse(sweep));
              else
                  pts = {SweepPoint{}};
              std::vector<PointSummary> res;
              {
                  py::gil_scoped_release release;
                  res = run_batch(c, pts, trials, seed);
              }
              py::list out;
              for (const auto &p : res)
              {
                  py::dict d;
                  d["parameter"] = p.point.parameter;
                  d["value"] = p.point.value;
                  d["scheme"] = std::string(to_string(p.config.scheme));
                  d["bf_arch"] = std::string(to_string(p.config.bf_arch));
                  d["mean_rate"] = p.mean_rate;
                  d["stderr_rate"] = p.stderr_rate;
                  d["mean_energy"] = p.mean_energy;
                  d["closed_form"] = ledger_dict(p.closed_form);
                  py::list rates;
                  for (const auto &t : p.trials)
                      rates.append(t.avg_rate);
                  d["trial_rates"] = rates;
                  out.append(d);
              }
              return out;
          },
          py::arg("cfg"), py::arg("sweep") = "", py::arg("preset") = "", py::arg("trials") = 1, py::arg("seed") = 1);
    m.def("summary_csv_for", [](const ScenarioConfig &c, const std::string &sweep, int trials, std::uint64_t seed) {
        const auto pts = sweep.empty() ? std::vector<SweepPoint>{SweepPoint{}} : sweep_points(SweepSpec::parse(sweep));
        py::gil_scoped_release release;
        return summary_csv(run_batch(c, pts, trials, seed));
    });
}
