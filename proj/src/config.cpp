#include "romnav/config.hpp"

#include <cmath>

#include "romnav/io.hpp"

namespace romnav {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ConfigError("config: " + path + " must be an object");
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : allowed)
            if (item.key() == k) {
                ok = true;
                break;
            }
        if (!ok) throw ConfigError("config: unknown key '" + path + item.key() + "'");
    }
}

double get_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError("config: " + path + " must be a number");
    return j.get<double>();
}

long get_integer(const json& j, const std::string& path) {
    if (!j.is_number_integer() && !j.is_number_unsigned())
        throw ConfigError("config: " + path + " must be an integer");
    return j.get<long>();
}

Eigen::Vector3d get_vec3(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 3)
        throw ConfigError("config: " + path + " must be an array of 3 numbers");
    Eigen::Vector3d v;
    for (int i = 0; i < 3; ++i) v[i] = get_number(j[static_cast<std::size_t>(i)], path);
    return v;
}

json vec3_json(const Eigen::Vector3d& v) { return json::array({v[0], v[1], v[2]}); }

std::string component_name(MeasuredComponent c) {
    switch (c) {
        case MeasuredComponent::X: return "x";
        case MeasuredComponent::Y: return "y";
        case MeasuredComponent::Z: return "z";
        case MeasuredComponent::Sum: return "sum";
    }
    return "x";
}

} // namespace

SensorNetwork default_sensor_lattice(const Grid3& grid) {
    const double fracs[7][3] = {{0.25, 0.25, 0.30}, {0.75, 0.25, 0.30}, {0.25, 0.75, 0.30},
                                {0.75, 0.75, 0.30}, {0.50, 0.50, 0.50}, {0.25, 0.50, 0.70},
                                {0.75, 0.50, 0.70}};
    SensorNetwork net;
    for (const auto& f : fracs) {
        Eigen::Index idx[3];
        for (int a = 0; a < 3; ++a) {
            const auto n = grid.dims[a];
            auto i = static_cast<Eigen::Index>(std::lround(f[a] * static_cast<double>(n - 1)));
            idx[a] = std::max<Eigen::Index>(1, std::min(n - 2, i));  // strictly interior
        }
        const Eigen::Vector3d p = grid.node(idx[0], idx[1], idx[2]);
        net.fixed.push_back({p, MeasuredComponent::X});
        net.fixed.push_back({p, MeasuredComponent::Y});
        net.fixed.push_back({p, MeasuredComponent::Z});
    }
    return net;
}

RunConfig RunConfig::defaults() {
    RunConfig c;
    // 146 x 220 km of horizontal extent, 15-30 km altitude, half-km layers
    c.grid = Grid3({0.0, 0.0, 15.0}, {146.0 / 8.0, 220.0 / 8.0, 0.5}, {9, 9, 31});
    // two counter-oscillating strata with incommensurate periods; the
    // cancellation altitude between them wanders, so there is no free
    // parking spot and the planner has to ride the reversals
    c.wind_layers = {{19.0, 3.0, 0.8, -7.0, 12.0, 0.0},
                     {26.0, 3.0, -0.8, 6.5, 8.0, 0.7}};
    c.station.center = {73.0, 110.0};
    c.station.radius_km = 50.0;
    c.agent_start = {73.0, 160.0, 19.0};

    c.planner.horizon_hours = 3.0;
    c.planner.dt_seconds = 600.0;
    // terminal-dominated shape: the stage term stays small so horizons of
    // different length optimize the same objective and differ only in
    // foresight
    c.planner.w_p = 0.05;
    c.planner.w_u = 2000.0;
    c.planner.w_f = 30.0;
    c.planner.u_max = 1.0;
    c.planner.bounds = {c.grid.box_min(), c.grid.box_max()};
    c.planner.x_ref = {73.0, 110.0, 22.5};
    c.planner.distance = DistanceMode::Horizontal;

    c.sensors = default_sensor_lattice(c.grid);
    return c;
}

RunConfig RunConfig::from_json(const json& j) {
    check_keys(j, "", {"output_dir", "grid", "wind", "snapshots", "pod", "rom", "ekf",
                       "planner", "scenario"});

    RunConfig c = defaults();

    if (j.contains("output_dir")) {
        if (!j["output_dir"].is_string())
            throw ConfigError("config: output_dir must be a string");
        c.output_dir = j["output_dir"].get<std::string>();
    }

    // grid first: later defaults derive from it
    if (j.contains("grid")) {
        const json& g = j["grid"];
        check_keys(g, "grid.", {"origin", "spacing", "dims"});
        Grid3 grid = c.grid;
        if (g.contains("origin")) grid.origin = get_vec3(g["origin"], "grid.origin");
        if (g.contains("spacing")) grid.spacing = get_vec3(g["spacing"], "grid.spacing");
        if (g.contains("dims")) {
            const json& d = g["dims"];
            if (!d.is_array() || d.size() != 3)
                throw ConfigError("config: grid.dims must be an array of 3 integers");
            for (int a = 0; a < 3; ++a)
                grid.dims[a] = get_integer(d[static_cast<std::size_t>(a)], "grid.dims");
        }
        try {
            grid.validate();
        } catch (const DimensionError& e) {
            throw ConfigError(std::string("config: grid invalid: ") + e.what());
        }
        c.grid = grid;
    }

    if (j.contains("wind")) {
        const json& w = j["wind"];
        check_keys(w, "wind.", {"layers"});
        if (w.contains("layers")) {
            if (!w["layers"].is_array())
                throw ConfigError("config: wind.layers must be an array");
            c.wind_layers.clear();
            for (const auto& lj : w["layers"]) {
                check_keys(lj, "wind.layers[].",
                           {"z_center_km", "z_width_km", "vx_mps", "vy_mps",
                            "period_hours", "phase_rad"});
                WindLayer l;
                if (lj.contains("z_center_km"))
                    l.z_center_km = get_number(lj["z_center_km"], "wind.layers[].z_center_km");
                if (lj.contains("z_width_km"))
                    l.z_width_km = get_number(lj["z_width_km"], "wind.layers[].z_width_km");
                if (lj.contains("vx_mps"))
                    l.vx_mps = get_number(lj["vx_mps"], "wind.layers[].vx_mps");
                if (lj.contains("vy_mps"))
                    l.vy_mps = get_number(lj["vy_mps"], "wind.layers[].vy_mps");
                if (lj.contains("period_hours"))
                    l.period_hours = get_number(lj["period_hours"], "wind.layers[].period_hours");
                if (lj.contains("phase_rad"))
                    l.phase_rad = get_number(lj["phase_rad"], "wind.layers[].phase_rad");
                c.wind_layers.push_back(l);
            }
        }
    }

    if (j.contains("snapshots")) {
        const json& s = j["snapshots"];
        check_keys(s, "snapshots.", {"count", "interval_hours", "start_hours"});
        if (s.contains("count"))
            c.snapshot_count = static_cast<int>(get_integer(s["count"], "snapshots.count"));
        if (s.contains("interval_hours"))
            c.snapshot_interval_hours = get_number(s["interval_hours"], "snapshots.interval_hours");
        if (s.contains("start_hours"))
            c.snapshot_start_hours = get_number(s["start_hours"], "snapshots.start_hours");
        if (c.snapshot_count < 1) throw ConfigError("config: snapshots.count must be >= 1");
        if (!(c.snapshot_interval_hours > 0.0))
            throw ConfigError("config: snapshots.interval_hours must be > 0");
    }

    if (j.contains("pod")) {
        const json& p = j["pod"];
        check_keys(p, "pod.", {"energy_fraction", "max_modes"});
        if (p.contains("energy_fraction"))
            c.pod_energy_fraction = get_number(p["energy_fraction"], "pod.energy_fraction");
        if (p.contains("max_modes"))
            c.pod_max_modes = static_cast<int>(get_integer(p["max_modes"], "pod.max_modes"));
        if (!(c.pod_energy_fraction > 0.0 && c.pod_energy_fraction <= 1.0))
            throw ConfigError("config: pod.energy_fraction must lie in (0, 1]");
        if (c.pod_max_modes < 1) throw ConfigError("config: pod.max_modes must be >= 1");
    }

    if (j.contains("rom")) {
        const json& r = j["rom"];
        check_keys(r, "rom.", {"nu", "dt_max_seconds"});
        if (r.contains("nu")) c.rom_nu = get_number(r["nu"], "rom.nu");
        if (r.contains("dt_max_seconds"))
            c.rom_dt_max_seconds = get_number(r["dt_max_seconds"], "rom.dt_max_seconds");
        if (!(c.rom_dt_max_seconds > 0.0))
            throw ConfigError("config: rom.dt_max_seconds must be > 0");
    }

    if (j.contains("ekf")) {
        const json& e = j["ekf"];
        check_keys(e, "ekf.", {"q", "r", "dt_minutes"});
        if (e.contains("q")) c.ekf_q = get_number(e["q"], "ekf.q");
        if (e.contains("r")) c.ekf_r = get_number(e["r"], "ekf.r");
        if (e.contains("dt_minutes")) c.ekf_dt_minutes = get_number(e["dt_minutes"], "ekf.dt_minutes");
        if (!(c.ekf_r > 0.0)) throw ConfigError("config: ekf.r must be strictly positive");
        if (c.ekf_q < 0.0) throw ConfigError("config: ekf.q must be nonnegative");
    }

    // scenario before planner so the target default can follow the station
    c.station.center = {c.grid.box_min()[0] + 0.5 * (c.grid.box_max()[0] - c.grid.box_min()[0]),
                        c.grid.box_min()[1] + 0.5 * (c.grid.box_max()[1] - c.grid.box_min()[1])};
    const double z_start = c.wind_layers.empty()
                               ? 0.5 * (c.grid.box_min()[2] + c.grid.box_max()[2])
                               : c.wind_layers.front().z_center_km;
    c.agent_start = {c.station.center[0],
                     std::min(c.station.center[1] + 50.0, c.grid.box_max()[1]), z_start};
    c.sensors = default_sensor_lattice(c.grid);

    if (j.contains("scenario")) {
        const json& s = j["scenario"];
        check_keys(s, "scenario.",
                   {"agent_start", "station_center", "station_radius_km", "episode_hours",
                    "sample_minutes", "noise_std_mps", "seed", "sensors"});
        if (s.contains("agent_start"))
            c.agent_start = get_vec3(s["agent_start"], "scenario.agent_start");
        if (s.contains("station_center")) {
            const json& sc = s["station_center"];
            if (!sc.is_array() || sc.size() != 2)
                throw ConfigError("config: scenario.station_center must be an array of 2");
            c.station.center = {get_number(sc[0], "scenario.station_center"),
                                get_number(sc[1], "scenario.station_center")};
        }
        if (s.contains("station_radius_km"))
            c.station.radius_km = get_number(s["station_radius_km"], "scenario.station_radius_km");
        if (s.contains("episode_hours"))
            c.episode_hours = get_number(s["episode_hours"], "scenario.episode_hours");
        if (s.contains("sample_minutes"))
            c.sample_minutes = get_number(s["sample_minutes"], "scenario.sample_minutes");
        if (s.contains("noise_std_mps"))
            c.noise_std_mps = get_number(s["noise_std_mps"], "scenario.noise_std_mps");
        if (s.contains("seed"))
            c.seed = static_cast<std::uint64_t>(get_integer(s["seed"], "scenario.seed"));
        if (s.contains("sensors")) {
            if (!s["sensors"].is_array())
                throw ConfigError("config: scenario.sensors must be an array");
            c.sensors.fixed.clear();
            for (const auto& sj : s["sensors"]) {
                check_keys(sj, "scenario.sensors[].", {"position", "components"});
                if (!sj.contains("position"))
                    throw ConfigError("config: scenario.sensors[].position is required");
                const Eigen::Vector3d pos =
                    get_vec3(sj["position"], "scenario.sensors[].position");
                std::string comp = "xyz";
                if (sj.contains("components")) {
                    if (!sj["components"].is_string())
                        throw ConfigError("config: scenario.sensors[].components must be a string");
                    comp = sj["components"].get<std::string>();
                }
                if (comp == "xyz") {
                    c.sensors.fixed.push_back({pos, MeasuredComponent::X});
                    c.sensors.fixed.push_back({pos, MeasuredComponent::Y});
                    c.sensors.fixed.push_back({pos, MeasuredComponent::Z});
                } else if (comp == "x") {
                    c.sensors.fixed.push_back({pos, MeasuredComponent::X});
                } else if (comp == "y") {
                    c.sensors.fixed.push_back({pos, MeasuredComponent::Y});
                } else if (comp == "z") {
                    c.sensors.fixed.push_back({pos, MeasuredComponent::Z});
                } else if (comp == "sum") {
                    c.sensors.fixed.push_back({pos, MeasuredComponent::Sum});
                } else {
                    throw ConfigError("config: scenario.sensors[].components '" + comp +
                                      "' is not one of x, y, z, sum, xyz");
                }
            }
        }
        if (!(c.sample_minutes > 0.0))
            throw ConfigError("config: scenario.sample_minutes must be > 0");
        if (c.episode_hours < 0.0)
            throw ConfigError("config: scenario.episode_hours must be >= 0");
        if (c.noise_std_mps < 0.0)
            throw ConfigError("config: scenario.noise_std_mps must be >= 0");
        if (!(c.station.radius_km > 0.0))
            throw ConfigError("config: scenario.station_radius_km must be > 0");
    }

    c.planner.bounds = {c.grid.box_min(), c.grid.box_max()};
    c.planner.x_ref = {c.station.center[0], c.station.center[1],
                       0.5 * (c.grid.box_min()[2] + c.grid.box_max()[2])};

    if (j.contains("planner")) {
        const json& p = j["planner"];
        check_keys(p, "planner.",
                   {"horizon_hours", "dt_seconds", "w_p", "w_u", "w_f", "u_max",
                    "bounds_lo", "bounds_hi", "x_ref", "distance_mode"});
        if (p.contains("horizon_hours"))
            c.planner.horizon_hours = get_number(p["horizon_hours"], "planner.horizon_hours");
        if (p.contains("dt_seconds"))
            c.planner.dt_seconds = get_number(p["dt_seconds"], "planner.dt_seconds");
        if (p.contains("w_p")) c.planner.w_p = get_number(p["w_p"], "planner.w_p");
        if (p.contains("w_u")) c.planner.w_u = get_number(p["w_u"], "planner.w_u");
        if (p.contains("w_f")) c.planner.w_f = get_number(p["w_f"], "planner.w_f");
        if (p.contains("u_max")) c.planner.u_max = get_number(p["u_max"], "planner.u_max");
        if (p.contains("bounds_lo"))
            c.planner.bounds.lo = get_vec3(p["bounds_lo"], "planner.bounds_lo");
        if (p.contains("bounds_hi"))
            c.planner.bounds.hi = get_vec3(p["bounds_hi"], "planner.bounds_hi");
        if (p.contains("x_ref")) c.planner.x_ref = get_vec3(p["x_ref"], "planner.x_ref");
        if (p.contains("distance_mode")) {
            if (!p["distance_mode"].is_string())
                throw ConfigError("config: planner.distance_mode must be a string");
            const std::string mode = p["distance_mode"].get<std::string>();
            if (mode == "horizontal")
                c.planner.distance = DistanceMode::Horizontal;
            else if (mode == "full3d")
                c.planner.distance = DistanceMode::Full3d;
            else
                throw ConfigError("config: planner.distance_mode '" + mode +
                                  "' is not 'horizontal' or 'full3d'");
        }
        if (!(c.planner.u_max > 0.0)) throw ConfigError("config: planner.u_max must be > 0");
        if (c.planner.w_p < 0.0 || c.planner.w_u < 0.0 || c.planner.w_f < 0.0)
            throw ConfigError("config: planner weights must be nonnegative");
    }

    // cross-field checks with config-level names
    try {
        c.planner.horizon_steps();
    } catch (const ConfigError&) {
        throw ConfigError(
            "config: planner.horizon_hours must be a positive multiple of planner.dt_seconds");
    }
    if (std::abs(c.ekf_dt_minutes - c.sample_minutes) > 1e-12)
        throw ConfigError("config: ekf.dt_minutes must equal scenario.sample_minutes");
    if (std::abs(c.planner.dt_seconds - c.sample_minutes * 60.0) > 1e-9)
        throw ConfigError("config: planner.dt_seconds must equal scenario.sample_minutes * 60");

    return c;
}

RunConfig RunConfig::load(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw ConfigError("config: cannot parse " + path + ": " + e.what());
    } catch (const IoError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return from_json(j);
}

json RunConfig::to_json() const {
    json j;
    j["output_dir"] = output_dir;
    j["grid"] = {{"origin", vec3_json(grid.origin)},
                 {"spacing", vec3_json(grid.spacing)},
                 {"dims", json::array({grid.dims[0], grid.dims[1], grid.dims[2]})}};
    json layers = json::array();
    for (const auto& l : wind_layers)
        layers.push_back({{"z_center_km", l.z_center_km},
                          {"z_width_km", l.z_width_km},
                          {"vx_mps", l.vx_mps},
                          {"vy_mps", l.vy_mps},
                          {"period_hours", l.period_hours},
                          {"phase_rad", l.phase_rad}});
    j["wind"] = {{"layers", layers}};
    j["snapshots"] = {{"count", snapshot_count},
                      {"interval_hours", snapshot_interval_hours},
                      {"start_hours", snapshot_start_hours}};
    j["pod"] = {{"energy_fraction", pod_energy_fraction}, {"max_modes", pod_max_modes}};
    j["rom"] = {{"nu", rom_nu}, {"dt_max_seconds", rom_dt_max_seconds}};
    j["ekf"] = {{"q", ekf_q}, {"r", ekf_r}, {"dt_minutes", ekf_dt_minutes}};
    j["planner"] = {{"horizon_hours", planner.horizon_hours},
                    {"dt_seconds", planner.dt_seconds},
                    {"w_p", planner.w_p},
                    {"w_u", planner.w_u},
                    {"w_f", planner.w_f},
                    {"u_max", planner.u_max},
                    {"bounds_lo", vec3_json(planner.bounds.lo)},
                    {"bounds_hi", vec3_json(planner.bounds.hi)},
                    {"x_ref", vec3_json(planner.x_ref)},
                    {"distance_mode", planner.distance == DistanceMode::Horizontal
                                          ? "horizontal"
                                          : "full3d"}};
    json sensor_entries = json::array();
    for (const auto& s : sensors.fixed)
        sensor_entries.push_back({{"position", vec3_json(s.position)},
                                  {"components", component_name(s.component)}});
    j["scenario"] = {{"agent_start", vec3_json(agent_start)},
                     {"station_center", json::array({station.center[0], station.center[1]})},
                     {"station_radius_km", station.radius_km},
                     {"episode_hours", episode_hours},
                     {"sample_minutes", sample_minutes},
                     {"noise_std_mps", noise_std_mps},
                     {"seed", seed},
                     {"sensors", sensor_entries}};
    return j;
}

SyntheticWind RunConfig::make_wind() const { return SyntheticWind(wind_layers, grid); }

Scenario RunConfig::make_scenario() const {
    Scenario sc;
    sc.wind = make_wind();
    sc.sensors = sensors;
    sc.agent_start = agent_start;
    sc.station = station;
    sc.episode_hours = episode_hours;
    sc.sample_minutes = sample_minutes;
    sc.noise_std_mps = noise_std_mps;
    sc.seed = seed;
    return sc;
}

std::vector<double> RunConfig::snapshot_times() const {
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(snapshot_count));
    for (int i = 0; i < snapshot_count; ++i)
        times.push_back(snapshot_start_hours + i * snapshot_interval_hours);
    return times;
}

EkfConfig RunConfig::make_ekf_config(int n_modes, int n_measurement_rows) const {
    EkfConfig cfg;
    cfg.Q_proc = ekf_q * Eigen::MatrixXd::Identity(n_modes, n_modes);
    cfg.R_meas = ekf_r * Eigen::MatrixXd::Identity(n_measurement_rows, n_measurement_rows);
    cfg.dt_hours = ekf_dt_minutes / 60.0;
    cfg.rom_dt_max_hours = rom_dt_max_seconds / 3600.0;
    return cfg;
}

} // namespace romnav
