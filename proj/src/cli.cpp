#include "romnav/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "romnav/io.hpp"
#include "romnav/metrics.hpp"

namespace romnav {

namespace fs = std::filesystem;

namespace {

void write_config_echo(const RunConfig& cfg, const std::string& dir) {
    write_text_file(dir + "/config_effective.json", cfg.to_json().dump(2) + "\n");
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory: " + dir);
}

EpisodeLog run_episode_from(const RunConfig& cfg, const PodBasis& basis,
                            const RomModel& model) {
    Scenario sc = cfg.make_scenario();
    const int p = static_cast<int>(sc.sensors.fixed.size()) + 3;
    const EkfConfig ekf = cfg.make_ekf_config(basis.n_modes(), p);
    return run_episode(sc, basis, model, ekf, cfg.planner);
}

void write_run_outputs(const RunConfig& cfg, const EpisodeLog& log, const std::string& dir) {
    write_text_file(dir + "/episode.csv", episode_csv(log));
    write_text_file(dir + "/ekf_diag.csv", ekf_diagnostics_csv(log));
    write_text_file(dir + "/metrics.json", metrics_json(compute_metrics(log)));
    write_text_file(dir + "/runtime.txt", fmt_double(log.runtime_s) + "\n");
    write_config_echo(cfg, dir);
}

} // namespace

void cmd_train(const RunConfig& cfg, std::ostream& out) {
    ensure_dir(cfg.output_dir);

    const SyntheticWind wind = cfg.make_wind();
    const SnapshotSet set = snapshot_campaign(wind, cfg.grid, cfg.snapshot_times());
    out << "campaign: " << set.size() << " snapshots on " << cfg.grid.dims[0] << "x"
        << cfg.grid.dims[1] << "x" << cfg.grid.dims[2] << " grid\n";

    PodBasis basis;
    try {
        basis = pod_decompose(set, cfg.pod_energy_fraction, cfg.pod_max_modes);
    } catch (const DegenerateBasisError& e) {
        throw DegenerateBasisError(
            std::string(e.what()) +
            " (the configured wind has no time variation; add layers with "
            "period_hours > 0 or distinct amplitudes)");
    }

    out << "modes kept: " << basis.n_modes() << "\n";
    out << "  #      lambda    captured  boundary_flux\n";
    double running = 0.0;
    for (int i = 0; i < basis.n_modes(); ++i) {
        running += basis.eigenvalues[i];
        out << std::setw(3) << i << "  " << std::scientific << std::setprecision(4)
            << basis.eigenvalues[i] << "  " << std::fixed << std::setprecision(6)
            << running / basis.total_energy << "  " << std::scientific
            << std::setprecision(3) << boundary_flux(basis.modes[static_cast<std::size_t>(i)])
            << "\n";
    }
    out.unsetf(std::ios::floatfield);

    const RomModel model = assemble_rom(basis, cfg.rom_nu);

    save_podb(cfg.output_dir + "/basis.podb", basis, static_cast<int>(set.size()));
    save_rom(cfg.output_dir + "/model.rom", model);
    write_config_echo(cfg, cfg.output_dir);
    out << "wrote " << cfg.output_dir << "/basis.podb, model.rom, config_effective.json\n";
}

void cmd_run(const RunConfig& cfg, std::ostream& out) {
    ensure_dir(cfg.output_dir);
    const PodBasis basis = load_podb(cfg.output_dir + "/basis.podb");
    const RomModel model = load_rom(cfg.output_dir + "/model.rom");
    if (basis.n_modes() != model.n)
        throw IoError("archives disagree: basis has " + std::to_string(basis.n_modes()) +
                      " modes, model expects " + std::to_string(model.n));

    const EpisodeLog log = run_episode_from(cfg, basis, model);
    write_run_outputs(cfg, log, cfg.output_dir);

    const EpisodeMetrics m = compute_metrics(log);
    out << "episode: " << log.records.size() << " records\n";
    out << "  d_f = " << m.d_f_km << " km, gamma_bar = " << m.gamma_bar
        << ", u_rms = " << m.u_rms_mps << " m/s, in-station " << m.time_in_station_fraction
        << ", RT = " << m.runtime_s << " s\n";
}

void cmd_sweep(const RunConfig& cfg, const std::vector<double>& horizons, int jobs,
               std::ostream& out) {
    if (horizons.empty()) throw ConfigError("sweep: needs at least one horizon");
    ensure_dir(cfg.output_dir);

    const PodBasis basis = load_podb(cfg.output_dir + "/basis.podb");
    const RomModel model = load_rom(cfg.output_dir + "/model.rom");
    if (basis.n_modes() != model.n) throw IoError("archives disagree on mode count");

    struct Row {
        double horizon = 0.0;
        bool ok = false;
        std::string error;
        EpisodeMetrics m;
    };

    auto run_one = [&](double horizon) {
        Row row;
        row.horizon = horizon;
        std::ostringstream name;
        name << "horizon_" << horizon;
        RunConfig sub = cfg;
        sub.planner.horizon_hours = horizon;
        sub.output_dir = cfg.output_dir + "/" + name.str();
        try {
            ensure_dir(sub.output_dir);
            const EpisodeLog log = run_episode_from(sub, basis, model);
            write_run_outputs(sub, log, sub.output_dir);
            row.m = compute_metrics(log);
            row.ok = true;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        return row;
    };

    std::vector<Row> rows(horizons.size());
    if (jobs > 1) {
        std::vector<std::future<Row>> futures;
        futures.reserve(horizons.size());
        for (double h : horizons)
            futures.push_back(std::async(std::launch::async, run_one, h));
        for (std::size_t i = 0; i < futures.size(); ++i) rows[i] = futures[i].get();
    } else {
        for (std::size_t i = 0; i < horizons.size(); ++i) rows[i] = run_one(horizons[i]);
    }

    auto fmt_label = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", v);
        return std::string(buf);
    };
    std::ostringstream csv;
    csv << "Horizon,d_f,gamma_bar,u_rms,RT\n";
    for (const auto& row : rows) {
        csv << fmt_label(row.horizon) << ',';
        if (row.ok)
            csv << fmt_double(row.m.d_f_km) << ',' << fmt_double(row.m.gamma_bar) << ','
                << fmt_double(row.m.u_rms_mps) << ',' << fmt_double(row.m.runtime_s);
        else
            csv << ",,,";
        csv << '\n';
    }
    write_text_file(cfg.output_dir + "/sweep.csv", csv.str());
    write_config_echo(cfg, cfg.output_dir);

    for (const auto& row : rows) {
        if (row.ok)
            out << "horizon " << row.horizon << " h: d_f = " << row.m.d_f_km
                << " km, gamma_bar = " << row.m.gamma_bar << ", u_rms = " << row.m.u_rms_mps
                << " m/s, RT = " << row.m.runtime_s << " s\n";
        else
            out << "horizon " << row.horizon << " h: FAILED (" << row.error << ")\n";
    }
    out << "wrote " << cfg.output_dir << "/sweep.csv\n";
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const IoError*>(&e))
        return kExitConfigError;
    return kExitNumericalError;
}

} // namespace romnav
