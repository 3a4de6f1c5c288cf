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
#include "mmtrack/cli.hpp"

#include "mmtrack/beams.hpp"
#include "mmtrack/format.hpp"
#include "mmtrack/version.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ios>
#include <map>
#include <optional>
#include <sstream>

namespace mmtrack
{

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::string sha256_hex(std::string_view data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    std::ostringstream os;
    os << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < len; ++i)
        os << std::setw(2) << static_cast<int>(digest[i]);
    return os.str();
}

void write_file_atomic(const fs::path &path, std::string_view content)
{
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw std::ios_base::failure("cannot write " + tmp.string());
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        f.flush();
        if (!f)
            throw std::ios_base::failure("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec)
    {
        fs::remove(tmp, ec);
        throw std::ios_base::failure("cannot rename into " + path.string());
    }
}

namespace
{

std::string fmt(double v) { return format_double(v); }

} // namespace

std::string summary_csv(const std::vector<PointSummary> &points)
{
    std::ostringstream os;
    os << "point,parameter,value,scheme,bf_arch,refresh_period_s,refinement_period_s,large_scale_period_s,k_ref,trials,"
          "mean_rate_bps,stderr_rate_bps,mean_energy_j,stderr_energy_j,mean_refreshes,mean_refinements,mean_handovers,"
          "mean_beam_switches,mean_tracking_loss_slots,closed_form_refreshes,closed_form_refinements,closed_form_energy_j\n";
    for (std::size_t p = 0; p < points.size(); ++p)
    {
        const PointSummary &s = points[p];
        const ScenarioConfig &c = s.config;
        os << p << ',' << s.point.parameter << ',' << s.point.value << ',' << to_string(c.scheme) << ',' << to_string(c.bf_arch) << ','
           << fmt(c.refresh_period_s) << ',' << fmt(c.refinement_period_s) << ',' << fmt(c.large_scale_period_s) << ',' << c.k_ref
           << ',' << s.trials.size() << ',' << fmt(s.mean_rate) << ',' << fmt(s.stderr_rate) << ',' << fmt(s.mean_energy) << ','
           << fmt(s.stderr_energy) << ',' << fmt(s.mean_refreshes) << ',' << fmt(s.mean_refinements) << ',' << fmt(s.mean_handovers)
           << ',' << fmt(s.mean_beam_switches) << ',' << fmt(s.mean_tracking_loss_slots) << ',' << s.closed_form.refresh_count << ','
           << s.closed_form.refinement_count << ',' << fmt(s.closed_form.total()) << '\n';
    }
    return os.str();
}

std::string trials_csv(const std::vector<PointSummary> &points)
{
    std::ostringstream os;
    os << "point,trial,seed,avg_rate_bps,energy_j,refresh_count,refinement_count,refresh_energy_j,refinement_energy_j,"
          "handovers,beam_switches,tracking_loss_slots,skipped_refinements,enb_count,deployment_digest\n";
    for (std::size_t p = 0; p < points.size(); ++p)
    {
        for (std::size_t t = 0; t < points[p].trials.size(); ++t)
        {
            const TrialResult &r = points[p].trials[t];
            os << p << ',' << t << ',' << r.seed << ',' << fmt(r.avg_rate) << ',' << fmt(r.energy.total()) << ','
               << r.energy.refresh_count << ',' << r.energy.refinement_count << ',' << fmt(r.energy.refresh_energy) << ','
               << fmt(r.energy.refinement_energy) << ',' << r.handover_count << ',' << r.beam_switch_count << ','
               << r.tracking_loss_slots << ',' << r.skipped_refinements << ',' << r.enb_count << ',' << r.deployment_digest << '\n';
        }
    }
    return os.str();
}

std::string trace_csv(const TrialResult &trial, double slot_s)
{
    std::ostringstream os;
    os << "slot,time_s,rate_bps,cell,enb_dir,ue_dir,event\n";
    for (std::size_t s = 0; s < trial.trace.size(); ++s)
    {
        const SlotRecord &r = trial.trace[s];
        os << s << ',' << fmt(static_cast<double>(s) * slot_s) << ',' << fmt(r.rate_bps) << ',' << r.cell << ',' << r.enb_dir << ','
           << r.ue_dir << ',';
        if (r.event == 'R')
            os << "refresh";
        else if (r.event == 'r')
            os << "refinement";
        os << '\n';
    }
    return os.str();
}

std::string energy_table_csv(const ScenarioConfig &base, const SweepSpec &grid, const std::vector<BfArch> &arches)
{
    std::ostringstream os;
    os << grid.parameter << ",bf_arch,scheme,refresh_count,refinement_count,refresh_energy_j,refinement_energy_j,total_energy_j\n";
    const std::string key = sweep_key(grid.parameter);
    for (const auto &value : grid.values)
    {
        for (BfArch arch : arches)
        {
            for (Scheme scheme : {Scheme::A, Scheme::B})
            {
                ScenarioConfig c = base;
                set_config_value(c, key, value);
                c.bf_arch = arch;
                c.scheme = scheme;
                validate(c);
                const EnergyLedger l = total_energy(c);
                os << value << ',' << to_string(arch) << ',' << to_string(scheme) << ',' << l.refresh_count << ',' << l.refinement_count
                   << ',' << fmt(l.refresh_energy) << ',' << fmt(l.refinement_energy) << ',' << fmt(l.total()) << '\n';
            }
        }
    }
    return os.str();
}

namespace
{

struct RunRequest
{
    ScenarioConfig config;
    std::vector<SweepPoint> points;
    std::uint64_t seed = 1;
    int trials = 1;
    std::string preset;
    std::string sweep;
    bool trace = false;
    bool channel_trace = false;
};

std::string channel_trace_csv(const ScenarioConfig &cfg, std::uint64_t seed)
{
    const ArrayGeometry ue = make_array(cfg.ue_array, cfg.element_spacing, cfg.ue_directions);
    const ArrayGeometry enb = make_array(cfg.enb_array, cfg.element_spacing, cfg.enb_directions);
    std::ostringstream os;
    os << "slot,link,state,distance_m,pathloss_db,h_frobenius_sq\n";
    TrialOptions opts;
    opts.keep_event_log = false;
    opts.channel_observer = [&](long long slot, int link, const ChannelState &ch) {
        os << slot << ',' << link << ',' << to_string(ch.state) << ',' << fmt(ch.distance) << ',' << fmt(ch.pathloss_db) << ','
           << fmt(channel_matrix(ch, ue, enb).squaredNorm()) << '\n';
    };
    run_trial(cfg, seed, opts);
    return os.str();
}

ojson manifest_json(const RunRequest &req, const std::map<std::string, std::string> &checksums, double runtime_s)
{
    ojson j;
    j["tool"] = "mmtrack";
    j["version"] = kVersion;
    j["command"] = "run";
    j["master_seed"] = req.seed;
    j["trials"] = req.trials;
    j["preset"] = req.preset;
    j["sweep"] = req.sweep;
    j["trace"] = req.trace;
    j["channel_trace"] = req.channel_trace;
    j["config"] = serialize_config(req.config);
    ojson pts = ojson::array();
    for (const auto &p : req.points)
    {
        ojson o;
        o["parameter"] = p.parameter;
        o["value"] = p.value;
        ojson ov = ojson::array();
        for (const auto &[k, v] : p.overrides)
            ov.push_back({k, v});
        o["overrides"] = ov;
        pts.push_back(o);
    }
    j["points"] = pts;
    ojson files = ojson::object();
    for (const auto &[name, sum] : checksums)
        files[name] = {{"sha256", sum}};
    j["files"] = files;
    j["runtime_s"] = runtime_s;
    return j;
}

RunRequest request_from_manifest(const fs::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::ios_base::failure("cannot open manifest " + path.string());
    ojson j;
    try
    {
        j = ojson::parse(in);
    }
    catch (const nlohmann::json::exception &e)
    {
        throw ConfigError("manifest", e.what());
    }
    try
    {
        RunRequest req;
        req.config = parse_config(j.at("config").get<std::string>());
        req.seed = j.at("master_seed").get<std::uint64_t>();
        req.trials = j.at("trials").get<int>();
        req.preset = j.value("preset", "");
        req.sweep = j.value("sweep", "");
        req.trace = j.value("trace", false);
        req.channel_trace = j.value("channel_trace", false);
        for (const auto &p : j.at("points"))
        {
            SweepPoint sp;
            sp.parameter = p.at("parameter").get<std::string>();
            sp.value = p.at("value").get<std::string>();
            for (const auto &kv : p.at("overrides"))
                sp.overrides.emplace_back(kv.at(0).get<std::string>(), kv.at(1).get<std::string>());
            req.points.push_back(std::move(sp));
        }
        return req;
    }
    catch (const nlohmann::json::exception &e)
    {
        throw ConfigError("manifest", e.what());
    }
}

// Runs the request and writes every output. Returns the checksums.
std::map<std::string, std::string> execute(const RunRequest &req, const fs::path &out_dir, bool quiet, std::ostream &err)
{
    const auto t0 = std::chrono::steady_clock::now();
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw std::ios_base::failure("cannot create output directory " + out_dir.string());

    TrialOptions opts;
    opts.keep_trace = req.trace;
    std::function<void(int, int)> progress;
    if (!quiet)
        progress = [&](int done, int total) {
            err << "\rtrials " << done << '/' << total << std::flush;
            if (done == total)
                err << '\n';
        };
    const std::vector<PointSummary> results = run_batch(req.config, req.points, req.trials, req.seed, opts, progress);

    std::map<std::string, std::string> sums;
    auto emit = [&](const std::string &name, const std::string &content) {
        write_file_atomic(out_dir / name, content);
        sums[name] = sha256_hex(content);
    };
    emit("summary.csv", summary_csv(results));
    emit("trials.csv", trials_csv(results));
    if (req.trace)
    {
        for (std::size_t p = 0; p < results.size(); ++p)
        {
            for (std::size_t t = 0; t < results[p].trials.size(); ++t)
            {
                const std::string stem = results.size() == 1 ? std::to_string(t) : "p" + std::to_string(p) + "_" + std::to_string(t);
                const TrialResult &r = results[p].trials[t];
                emit("trace_" + stem + ".csv", trace_csv(r, results[p].config.slot_s));
                std::ostringstream ev;
                write_event_log_csv(ev, r.event_log);
                emit("events_" + stem + ".csv", ev.str());
            }
        }
    }
    if (req.channel_trace && !results.empty())
        emit("channel_trace.csv", channel_trace_csv(results.front().config, trial_seed(req.seed, 0)));

    const double runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_file_atomic(out_dir / "manifest.json", manifest_json(req, sums, runtime).dump(2) + "\n");
    return sums;
}

std::vector<BfArch> parse_arches(const std::string &s)
{
    if (s == "ABF" || s == "abf")
        return {BfArch::Abf};
    if (s == "DBF" || s == "dbf")
        return {BfArch::Dbf};
    if (s == "both")
        return {BfArch::Abf, BfArch::Dbf};
    throw ConfigError("arch", "expected ABF, DBF or both");
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"mmtrack: slot-level mmWave beam tracking simulator", "mmtrack"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::string scheme, sweep, preset, out_dir = "out";
    std::vector<std::string> sets;
    bool trace = false, channel_trace = false, quiet = false;

    CLI::App *run = app.add_subcommand("run", "run trials, sweeps and figure presets");
    run->add_option("--config", config_path, "config file");
    run->add_option("--seed", seed, "master seed (default: config seed)");
    run->add_option("--trials", trials, "trials per point (default: config trials)")->check(CLI::PositiveNumber);
    run->add_option("--scheme", scheme, "tracking scheme")->check(CLI::IsMember({"A", "B"}));
    auto *sweep_opt = run->add_option("--sweep", sweep, "NAME=v1,v2,...");
    run->add_option("--preset", preset, "figure grid")->check(CLI::IsMember(preset_names()))->excludes(sweep_opt);
    run->add_option("--set", sets, "KEY=VALUE config override (repeatable)");
    run->add_option("--out-dir", out_dir, "output directory");
    run->add_flag("--trace", trace, "per-slot rate and event logs");
    run->add_flag("--channel-trace", channel_trace, "per-slot channel dump of the first trial");
    run->add_flag("--quiet", quiet, "no progress output");

    std::string grid = "T_PR=0.05,0.1,0.15,0.3,0.6,0.9", arch = "both", table_out;
    CLI::App *etab = app.add_subcommand("energy-table", "closed-form tracking energy over a grid");
    etab->add_option("--config", config_path, "config file");
    etab->add_option("--grid", grid, "NAME=v1,v2,...")->capture_default_str();
    etab->add_option("--arch", arch, "ABF, DBF or both")->capture_default_str();
    etab->add_option("--set", sets, "KEY=VALUE config override (repeatable)");
    etab->add_option("--out", table_out, "output file (default: stdout)");

    std::string manifest_path;
    CLI::App *replay = app.add_subcommand("replay", "re-run a manifest and compare checksums");
    replay->add_option("manifest", manifest_path, "manifest.json")->required();
    replay->add_option("--out-dir", out_dir, "output directory");
    replay->add_flag("--quiet", quiet, "no progress output");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try
    {
        ScenarioConfig cfg = config_path.empty() ? parse_config("") : load_config(config_path);
        for (const auto &kv : sets)
        {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw ConfigError("set", "expected KEY=VALUE, got '" + kv + "'");
            set_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
        }

        if (*run)
        {
            if (!scheme.empty())
                set_config_value(cfg, "scheme", scheme);
            if (seed)
                cfg.seed = *seed;
            if (trials)
                cfg.trials = *trials;
            validate(cfg);
            RunRequest req;
            req.config = cfg;
            req.seed = cfg.seed;
            req.trials = cfg.trials;
            req.preset = preset;
            req.sweep = sweep;
            req.trace = trace;
            req.channel_trace = channel_trace;
            if (!preset.empty())
                req.points = preset_points(preset);
            else if (!sweep.empty())
                req.points = sweep_points(SweepSpec::parse(sweep));
            else
                req.points = {SweepPoint{}};
            for (const auto &p : req.points)
                apply_point(cfg, p);
            execute(req, out_dir, quiet, err);
            if (!quiet)
                err << "wrote " << (fs::path(out_dir) / "summary.csv").string() << '\n';
            return kExitOk;
        }
        if (*etab)
        {
            validate(cfg);
            const std::string csv = energy_table_csv(cfg, SweepSpec::parse(grid), parse_arches(arch));
            if (table_out.empty())
                out << csv;
            else
                write_file_atomic(table_out, csv);
            return kExitOk;
        }
        if (*replay)
        {
            const RunRequest req = request_from_manifest(manifest_path);
            std::ifstream in(manifest_path, std::ios::binary);
            const ojson recorded = ojson::parse(in);
            const auto sums = execute(req, out_dir, quiet, err);
            bool same = true;
            for (const auto &[name, sum] : sums)
            {
                const auto &files = recorded.at("files");
                const bool ok = files.contains(name) && files.at(name).at("sha256").get<std::string>() == sum;
                out << (ok ? "match    " : "MISMATCH ") << name << '\n';
                same = same && ok;
            }
            return same ? kExitOk : kExitMismatch;
        }
    }
    catch (const ConfigError &e)
    {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    catch (const std::ios_base::failure &e)
    {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    }
    catch (const fs::filesystem_error &e)
    {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitOk;
}

} // namespace mmtrack
