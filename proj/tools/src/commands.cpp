#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <future>
#include <iostream>
#include <limits>

#include "config.hpp"
#include "io.hpp"
#include "nlfront/analysis.hpp"
#include "nlfront/envelopes.hpp"
#include "nlfront/errors.hpp"
#include "nlfront/semiwave.hpp"
#include "nlfront/simulator.hpp"
#include "nlfront/subeig.hpp"

namespace nlfront::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {
std::string out_path(const RunConfig& cfg, const std::string& stem) {
    return (fs::path(cfg.out_dir) / (cfg.prefix + "_" + stem)).string();
}

json base_report(const RunConfig& cfg, const char* command) {
    json rep;
    rep["schema_version"] = 1;
    rep["command"] = command;
    rep["config_hash"] = cfg.hash;
    return rep;
}

json fit_json(const analysis::RateFit& f) {
    json j;
    j["law"] = analysis::rate_law_name(f.law);
    j["coefficient"] = json_number(f.coefficient);
    if (f.law == analysis::RateLaw::power) j["exponent"] = json_number(f.exponent);
    j["rms_residual"] = json_number(f.rms_residual);
    j["t_lo"] = f.t_lo;
    j["t_hi"] = f.t_hi;
    if (f.law == analysis::RateLaw::linear) j["super_linear"] = f.super_linear;
    return j;
}

json verdict_json(const analysis::DichotomyVerdict& v) {
    json j;
    j["kind"] = analysis::verdict_name(v.kind);
    j["final_field_max"] = json_number(v.final_field_max);
    j["growth_last_window"] = json_number(v.growth_last_window);
    j["center_deviation"] = json_number(v.center_deviation);
    return j;
}
}  // namespace

int cmd_simulate(const std::string& config_path, const std::string& out_dir, bool force_plot) {
    RunConfig cfg = load_config(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (force_plot) cfg.plot = true;
    fs::create_directories(cfg.out_dir);

    sim::Simulator solver(cfg.params, cfg.G, *cfg.J1, *cfg.K, *cfg.J2, cfg.sim);
    sim::Trajectory traj = solver.run(cfg.init);
    const model::Equilibrium eq = model::positive_equilibrium(cfg.params, cfg.G);
    const analysis::DichotomyVerdict verdict = analysis::classify(traj, eq, cfg.thresholds);
    traj.verdict = analysis::verdict_name(verdict.kind);

    json files = json::array();
    const std::string traj_path = out_path(cfg, "trajectory.csv");
    write_trajectory_csv(traj_path, traj);
    files.push_back(traj_path);
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        char stem[48];
        std::snprintf(stem, sizeof stem, "snapshot_%04zu.csv", i);
        const std::string p = out_path(cfg, stem);
        write_snapshot_csv(p, traj.snapshots[i]);
        files.push_back(p);
    }
    const std::string final_path = out_path(cfg, "final_state.csv");
    write_state_csv(final_path, traj.final_state);
    files.push_back(final_path);

    if (cfg.plot) {
        Curve hc{"h(t)", traj.times, traj.h_series};
        Curve gc{"-g(t)", traj.times, {}};
        gc.y.reserve(traj.g_series.size());
        for (double v : traj.g_series) gc.y.push_back(-v);
        const std::string svg = out_path(cfg, "fronts.svg");
        write_svg_plot(svg, "front position", "t", "front", {hc, gc});
        files.push_back(svg);
    }

    json rep = base_report(cfg, "simulate");
    rep["verdict"] = verdict_json(verdict);
    rep["R0"] = json_number(eq.R0);
    rep["u_star"] = eq.u_star ? json_number(*eq.u_star) : json(nullptr);
    rep["v_star"] = eq.v_star ? json_number(*eq.v_star) : json(nullptr);
    rep["stop_reason"] = sim::stop_reason_name(traj.stop);
    rep["steps"] = traj.steps;
    rep["t_end"] = json_number(traj.times.back());
    rep["h_end"] = json_number(traj.h_series.back());
    rep["g_end"] = json_number(traj.g_series.back());
    rep["files"] = files;
    write_report(out_path(cfg, "report.json"), rep);

    std::cout << "verdict: " << traj.verdict << "  t_end = " << traj.times.back()
              << "  h_end = " << traj.h_series.back() << "\n";
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::vector<double>& alphas,
              const std::string& out_dir) {
    RunConfig base = load_config(config_path);
    if (!out_dir.empty()) base.out_dir = out_dir;
    fs::create_directories(base.out_dir);

    auto run_one = [&base](double alpha) -> json {
        const analysis::RateFit theory = analysis::theory_rate(alpha);

        json patched = base.raw;
        for (const char* key : {"J1", "K", "J2"}) {
            json& kb = patched["kernels"][key];
            const std::string fam =
                kb.is_object() ? kb.value("family", "power_law") : std::string("power_law");
            if (fam == "power_law") kb["alpha"] = alpha;
        }
        RunConfig cfg = config_from_json(patched);

        sim::Simulator solver(cfg.params, cfg.G, *cfg.J1, *cfg.K, *cfg.J2, cfg.sim);
        const sim::Trajectory traj = solver.run(cfg.init);
        const model::Equilibrium eq = model::positive_equilibrium(cfg.params, cfg.G);
        const analysis::DichotomyVerdict verdict = analysis::classify(traj, eq, cfg.thresholds);

        const double t_end = traj.times.back();
        const double lo = cfg.rates_t_lo > 0.0 ? cfg.rates_t_lo : 0.5 * t_end;
        const double hi = cfg.rates_t_hi > 0.0 ? std::min(cfg.rates_t_hi, t_end) : t_end;

        json row;
        row["alpha"] = alpha;
        row["config_hash"] = cfg.hash;
        row["verdict"] = analysis::verdict_name(verdict.kind);
        row["theory_law"] = analysis::rate_law_name(theory.law);
        if (theory.law == analysis::RateLaw::power) row["theory_exponent"] = theory.exponent;
        if (theory.law == analysis::RateLaw::power) {
            row["fit"] = fit_json(analysis::fit_power(traj, lo, hi));
        } else {
            const analysis::TlntFit tf = analysis::fit_tlnt(traj, lo, hi);
            row["fit"] = fit_json(tf.tlnt);
            row["competing_power"] = fit_json(tf.power);
        }
        row["status"] = "ok";
        return row;
    };

    // rows run as independent jobs; a failing exponent only marks its own row
    std::vector<std::future<json>> futures;
    futures.reserve(alphas.size());
    for (double a : alphas)
        futures.push_back(std::async(std::launch::async, run_one, a));

    json rows = json::array();
    std::vector<double> col_alpha, col_fitted, col_theory, col_rms;
    for (std::size_t i = 0; i < futures.size(); ++i) {
        json row;
        try {
            row = futures[i].get();
        } catch (const std::exception& e) {
            row["alpha"] = alphas[i];
            row["status"] = std::string("error: ") + e.what();
        }
        rows.push_back(row);
        const bool ok = row["status"] == "ok";
        col_alpha.push_back(alphas[i]);
        const double nan = std::nan("");
        col_fitted.push_back(ok ? (row["fit"].contains("exponent")
                                       ? row["fit"]["exponent"].get<double>()
                                       : row["fit"]["coefficient"].get<double>())
                                : nan);
        col_theory.push_back(ok && row.contains("theory_exponent")
                                 ? row["theory_exponent"].get<double>()
                                 : nan);
        col_rms.push_back(ok ? row["fit"]["rms_residual"].get<double>() : nan);
        std::cout << "alpha = " << alphas[i] << "  "
                  << (ok ? row["fit"].dump() : row["status"].get<std::string>()) << "\n";
    }

    json rep = base_report(base, "sweep");
    rep["rows"] = rows;
    write_report(out_path(base, "sweep_report.json"), rep);
    write_csv(out_path(base, "sweep_table.csv"),
              {"alpha", "fitted", "theory_exponent", "rms_residual"},
              {&col_alpha, &col_fitted, &col_theory, &col_rms});
    return 0;
}

int cmd_rates(const std::string& csv_path, double t_lo, double t_hi, const std::string& law,
              const std::string& report_path) {
    const std::string content = slurp(csv_path);
    const TrajectoryData td = read_trajectory_csv(csv_path);
    if (td.t.empty()) throw ValidationError(csv_path + ": trajectory has no data rows");
    const double t_end = td.t.back();
    if (t_lo <= 0.0) t_lo = 0.5 * t_end;
    if (t_hi <= 0.0) t_hi = t_end;

    json rep;
    rep["schema_version"] = 1;
    rep["command"] = "rates";
    rep["source"] = csv_path;
    rep["data_hash"] = bytes_hash(content);
    rep["window"] = {{"t_lo", t_lo}, {"t_hi", t_hi}};

    json fits = json::object();
    if (law == "power") {
        fits["power"] = fit_json(analysis::fit_power(td.t, td.h, t_lo, t_hi));
    } else if (law == "tlnt") {
        const analysis::TlntFit tf = analysis::fit_tlnt(td.t, td.h, t_lo, t_hi);
        fits["t_log_t"] = fit_json(tf.tlnt);
        fits["power"] = fit_json(tf.power);
    } else if (law == "linear") {
        fits["linear"] = fit_json(analysis::fit_linear_speed(td.t, td.h, t_lo, t_hi));
    } else if (law == "auto") {
        fits["power"] = fit_json(analysis::fit_power(td.t, td.h, t_lo, t_hi));
        fits["linear"] = fit_json(analysis::fit_linear_speed(td.t, td.h, t_lo, t_hi));
        if (t_lo > std::exp(1.0))
            fits["t_log_t"] = fit_json(analysis::fit_tlnt(td.t, td.h, t_lo, t_hi).tlnt);
        std::string best;
        double best_rms = std::numeric_limits<double>::infinity();
        for (const auto& [name, f] : fits.items()) {
            const double rms = f.at("rms_residual").get<double>();
            if (rms < best_rms) {
                best_rms = rms;
                best = name;
            }
        }
        rep["best_law"] = best;
    } else {
        throw ValidationError("rates.law: unknown law '" + law +
                              "' (expected power, tlnt, linear or auto)");
    }
    rep["fits"] = fits;

    if (!report_path.empty()) {
        write_report(report_path, rep);
        std::cout << "wrote " << report_path << "\n";
    } else {
        std::cout << rep.dump(2) << "\n";
    }
    return 0;
}

int cmd_semiwave(const std::string& config_path, const std::string& out_dir) {
    RunConfig cfg = load_config(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    fs::create_directories(cfg.out_dir);

    semiwave::SemiWaveSolver solver(cfg.params, cfg.G, *cfg.J1, *cfg.K, *cfg.J2, cfg.semiwave);
    const semiwave::SemiWaveSolution sol = solver.solve_speed();

    const std::string prof_path = out_path(cfg, "semiwave.csv");
    write_csv(prof_path, {"x", "phi1", "phi2"},
              {&sol.profiles.x, &sol.profiles.phi1, &sol.profiles.phi2});

    json rep = base_report(cfg, "semiwave");
    rep["c0"] = json_number(sol.c0);
    rep["profile_residual"] = json_number(sol.profile_residual);
    rep["speed_residual"] = json_number(sol.speed_residual);
    rep["sweeps"] = sol.sweeps;
    rep["bisections"] = sol.bisections;
    rep["u_star"] = json_number(solver.u_star());
    rep["v_star"] = json_number(solver.v_star());
    json files = json::array({prof_path});
    if (cfg.plot) {
        const std::string svg = out_path(cfg, "semiwave.svg");
        write_svg_plot(svg, "semi-wave profiles", "x", "phi",
                       {{"phi1", sol.profiles.x, sol.profiles.phi1},
                        {"phi2", sol.profiles.x, sol.profiles.phi2}});
        files.push_back(svg);
    }
    rep["files"] = files;
    write_report(out_path(cfg, "semiwave_report.json"), rep);

    std::cout << "c0 = " << sol.c0 << "\n";
    return 0;
}

int cmd_verify_subeig(const std::string& config_path, const std::string& out_dir) {
    RunConfig cfg = load_config(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    fs::create_directories(cfg.out_dir);
    const kernels::Kernel& kern = cfg.subeig_kernel == "K"    ? *cfg.K
                                  : cfg.subeig_kernel == "J2" ? *cfg.J2
                                                              : *cfg.J1;

    auto check_json = [](const subeig::SubEigReport& r) {
        json j;
        j["L"] = r.L;
        j["epsilon"] = r.epsilon;
        j["min_ratio"] = json_number(r.min_ratio);
        j["max_ratio"] = json_number(r.max_ratio);
        j["worst_x"] = json_number(r.worst_x);
        j["excluded"] = r.excluded;
        j["pass"] = r.pass;
        return j;
    };

    json rep = base_report(cfg, "verify-subeig");
    rep["family"] = subeig::family_name(cfg.subeig.family);
    rep["kernel"] = cfg.subeig_kernel;
    rep["epsilon"] = cfg.subeig_epsilon;
    rep["grid_n"] = cfg.subeig_grid_n;

    bool pass = false;
    if (cfg.subeig_has_L) {
        const subeig::SubEigReport r =
            subeig::verify_subeigen(kern, cfg.subeig, cfg.subeig_epsilon, cfg.subeig_grid_n);
        rep["check"] = check_json(r);
        pass = r.pass;
    } else {
        const subeig::MinimalScaleResult res = subeig::minimal_scale(
            kern, cfg.subeig, cfg.subeig_epsilon, cfg.subeig_L_grid, cfg.subeig_grid_n);
        json attempts = json::array();
        for (const subeig::SubEigReport& r : res.attempts) attempts.push_back(check_json(r));
        rep["attempts"] = attempts;
        rep["minimal_L"] = res.L ? json(*res.L) : json(nullptr);
        pass = res.L.has_value();
    }

    // convexity of the profile tail, on the region where the template family
    // is convex by construction
    if (cfg.subeig.family != subeig::ProfileFamily::custom) {
        const double lo = cfg.subeig.family == subeig::ProfileFamily::capped
                              ? 1.0 - 1.0 / cfg.subeig.eta1
                              : 0.5;
        rep["tail_convex"] = subeig::check_convexity(cfg.subeig, lo, 1.0);
    }
    rep["pass"] = pass;
    write_report(out_path(cfg, "subeig_report.json"), rep);
    std::cout << (pass ? "PASS" : "FAIL") << "\n";
    return 0;
}

int cmd_verify_envelope(const std::string& config_path, const std::string& out_dir) {
    RunConfig cfg = load_config(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    fs::create_directories(cfg.out_dir);

    auto spec_json = [](const envelopes::EnvelopeSpec& s) {
        json j;
        j["case"] = envelopes::case_name(s.kind);
        j["alpha"] = s.alpha;
        j["C1"] = s.C1;
        j["C2"] = s.C2;
        j["C3"] = s.C3;
        j["sigma"] = s.sigma;
        j["lambda"] = s.lambda;
        j["beta"] = s.beta;
        j["M"] = s.M;
        if (envelopes::is_lower(s.kind)) {
            j["delta1"] = s.eigen.delta1;
            j["delta2"] = s.eigen.delta2;
        }
        return j;
    };
    auto check_json = [](const envelopes::ResidualReport& r) {
        json j;
        j["boundary_residual"] = json_number(r.boundary_residual);
        j["pde_residual_u"] = json_number(r.pde_residual_u);
        j["pde_residual_v"] = json_number(r.pde_residual_v);
        j["samples"] = r.samples;
        j["skipped"] = r.skipped;
        j["pass"] = r.pass;
        return j;
    };

    json rep = base_report(cfg, "verify-envelope");
    rep["case"] = envelopes::case_name(cfg.envelope.kind);
    bool pass = false;
    if (cfg.envelope_search) {
        const envelopes::SearchResult result =
            envelopes::search_constants(cfg.envelope.kind, cfg.params, cfg.G, *cfg.J1, *cfg.K,
                                        *cfg.J2, cfg.search_options);
        rep["tried"] = result.tried;
        rep["found"] = result.spec.has_value();
        if (result.spec) {
            const envelopes::ResidualReport check = envelopes::residual_check(
                *result.spec, cfg.params, cfg.G, *cfg.J1, *cfg.K, *cfg.J2,
                cfg.search_options.grid);
            rep["spec"] = spec_json(*result.spec);
            rep["check"] = check_json(check);
            pass = check.pass;
        } else {
            rep["best_candidate"] = spec_json(result.best_candidate);
            rep["best_report"] = check_json(result.best_report);
        }
    } else {
        envelopes::EnvelopeSpec spec = cfg.envelope;
        if (envelopes::is_lower(spec.kind))
            spec.eigen = model::linearized_eigenpair(cfg.params, cfg.G);
        const envelopes::ResidualReport check = envelopes::residual_check(
            spec, cfg.params, cfg.G, *cfg.J1, *cfg.K, *cfg.J2, cfg.search_options.grid);
        rep["spec"] = spec_json(spec);
        rep["check"] = check_json(check);
        pass = check.pass;
    }
    rep["pass"] = pass;
    write_report(out_path(cfg, "envelope_report.json"), rep);
    std::cout << (pass ? "PASS" : "FAIL") << "\n";
    return 0;
}

int cmd_plot(const std::string& csv_path, const std::string& law, const std::string& out_svg) {
    const TrajectoryData td = read_trajectory_csv(csv_path);
    if (td.t.empty()) throw ValidationError(csv_path + ": trajectory has no data rows");

    std::vector<Curve> curves;
    curves.push_back({"h(t)", td.t, td.h});
    if (!td.g.empty()) {
        Curve gc{"-g(t)", td.t, {}};
        gc.y.reserve(td.g.size());
        for (double v : td.g) gc.y.push_back(-v);
        curves.push_back(std::move(gc));
    }

    if (law != "none") {
        const double t_end = td.t.back();
        const double lo = 0.5 * t_end, hi = t_end;
        Curve overlay;
        char label[64];
        if (law == "power") {
            const analysis::RateFit f = analysis::fit_power(td.t, td.h, lo, hi);
            std::snprintf(label, sizeof label, "fit %.3g t^%.3g", f.coefficient, f.exponent);
            overlay.label = label;
            for (double t : td.t)
                if (t >= lo) {
                    overlay.x.push_back(t);
                    overlay.y.push_back(f.coefficient * std::pow(t, f.exponent));
                }
        } else if (law == "tlnt") {
            const analysis::RateFit f = analysis::fit_tlnt(td.t, td.h, lo, hi).tlnt;
            std::snprintf(label, sizeof label, "fit %.3g t ln t", f.coefficient);
            overlay.label = label;
            for (double t : td.t)
                if (t >= lo) {
                    overlay.x.push_back(t);
                    overlay.y.push_back(f.coefficient * t * std::log(t));
                }
        } else if (law == "linear") {
            const analysis::RateFit f = analysis::fit_linear_speed(td.t, td.h, lo, hi);
            std::snprintf(label, sizeof label, "fit %.3g t", f.coefficient);
            overlay.label = label;
            for (double t : td.t)
                if (t >= lo) {
                    overlay.x.push_back(t);
                    overlay.y.push_back(f.coefficient * t);
                }
        } else {
            throw ValidationError("plot.law: unknown law '" + law +
                                  "' (expected power, tlnt, linear or none)");
        }
        curves.push_back(std::move(overlay));
    }

    std::string out = out_svg;
    if (out.empty()) {
        out = csv_path;
        const std::size_t dot = out.rfind(".csv");
        if (dot != std::string::npos && dot == out.size() - 4) out.erase(dot);
        out += ".svg";
    }
    write_svg_plot(out, "front position", "t", "front", curves);
    std::cout << "wrote " << out << "\n";
    return 0;
}

}  // namespace nlfront::cli
