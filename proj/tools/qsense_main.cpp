// qsense: measurement-induced noise floors for squeezed-light optomechanical
// position and momentum sensing. Emits CSV sweeps plus a Monte-Carlo / linear
// solver self-verification report.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsense/io.hpp"
#include "qsense/operator_algebra.hpp"
#include "qsense/optimal.hpp"
#include "qsense/verify.hpp"

namespace {

using namespace qsense;

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_config_error = 2;

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

struct ToySeriesSpec {
    std::string label;
    double r = 0.0;
    double phi = 0.0;
    bool theta_opt = false;  // per-point backaction-cancelling angle
    double theta = 0.0;
    double eta2 = 0.0;  // detection loss: eta = sqrt(eta2)
    double asym = 1.0;  // two-mode power asymmetry zeta2/zeta1
};

struct PresetDef {
    std::string name;
    std::string command;
    std::string model;
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<ToySeriesSpec> toy_series;
};

const std::vector<std::pair<std::string, std::string>> kCavityDefaults = {
    {"mass", "1e-06"}, {"omega_m", "100"}, {"kappa", "1000000"}, {"gamma", "0.0001"}};

std::vector<PresetDef> build_presets() {
    const double p4 = M_PI / 4.0;
    std::vector<PresetDef> presets;

    presets.push_back({"fig-single-b", "toy", "single",
                       {{"grid", "0.1:10:400:log"}, {"beta", "1"}},
                       {{"N2_r0", 0, 0, false, 0, 0, 1},
                        {"N2_r2_phi0", 2, 0, false, 0, 0, 1},
                        {"N2_r2_phiP4", 2, p4, false, 0, 0, 1},
                        {"N2_r2_phiM4", 2, -p4, false, 0, 0, 1}}});
    presets.push_back({"fig-single-c", "toy", "single",
                       {{"grid", "0.1:10:400:log"}, {"beta", "1"}},
                       {{"N2_r0_thetaM4", 0, 0, false, -p4, 0, 1},
                        {"N2_r2_thetaM4", 2, 0, false, -p4, 0, 1},
                        {"N2_r0_thetaOpt", 0, 0, true, 0, 0, 1},
                        {"N2_r2_thetaOpt", 2, 0, true, 0, 0, 1}}});
    presets.push_back({"fig-single-d", "toy", "single",
                       {{"grid", "0.1:10:400:log"}, {"beta", "1"}},
                       {{"N2_r0", 0, 0, false, 0, 0, 1},
                        {"N2_r2_phiP4", 2, p4, false, 0, 0, 1},
                        {"N2_r2_phiP4_loss5", 2, p4, false, 0, 0.05, 1},
                        {"N2_r2_phiP4_loss10", 2, p4, false, 0, 0.10, 1},
                        {"N2_r2_phiP4_loss20", 2, p4, false, 0, 0.20, 1}}});
    presets.push_back({"fig-single-e", "toy", "single",
                       {{"grid", "0.1:10:400:log"}, {"beta", "1"}},
                       {{"N2_r2_thetaM4", 2, 0, false, -p4, 0, 1},
                        {"N2_r2_thetaM4_loss10", 2, 0, false, -p4, 0.10, 1},
                        {"N2_r2_thetaOpt", 2, 0, true, 0, 0, 1},
                        {"N2_r2_thetaOpt_loss10", 2, 0, true, 0, 0.10, 1}}});
    presets.push_back({"fig-two-b", "toy", "two",
                       {{"grid", "0.1:10:400:log"}, {"beta", "1"}},
                       {{"N2_r0", 0, 0, false, 0, 0, 1},
                        {"N2_r2_phi0", 2, 0, false, 0, 0, 1},
                        {"N2_r2_phiP4", 2, p4, false, 0, 0, 1},
                        {"N2_r2_phiM4", 2, -p4, false, 0, 0, 1}}});
    presets.push_back({"fig-two-c", "toy", "two",
                       {{"grid", "0.1:10:400:log"}, {"beta", "1"}},
                       {{"N2_r0_thetaM4", 0, 0, false, -p4, 0, 1},
                        {"N2_r2_thetaM4", 2, 0, false, -p4, 0, 1},
                        {"N2_r0_thetaOpt", 0, 0, true, 0, 0, 1},
                        {"N2_r2_thetaOpt", 2, 0, true, 0, 0, 1}}});
    presets.push_back({"fig-two-d", "toy", "two",
                       {{"grid", "0.1:10:400:log"}, {"beta", "1"}},
                       {{"N2_r0", 0, 0, false, 0, 0, 1},
                        {"N2_r2_phiP4", 2, p4, false, 0, 0, 1},
                        {"N2_r2_phiP4_asym90", 2, p4, false, 0, 0, 0.9},
                        {"N2_r2_phi0_asym90", 2, 0, false, 0, 0, 0.9}}});

    PresetDef broadband{"fig-broadband", "strategy", "broadband",
                        {{"grid", "1000:1e7:400:log"}}, {}};
    broadband.config.insert(broadband.config.end(), kCavityDefaults.begin(), kCavityDefaults.end());
    broadband.config.push_back({"target_nu", "1000000"});
    broadband.config.push_back({"r", "2"});
    presets.push_back(std::move(broadband));

    PresetDef narrowband{"fig-narrowband", "strategy", "narrowband",
                         {{"grid", "1:1e7:400:log"}}, {}};
    narrowband.config.insert(narrowband.config.end(), kCavityDefaults.begin(), kCavityDefaults.end());
    narrowband.config.push_back({"r", "2"});
    presets.push_back(std::move(narrowband));

    PresetDef angles{"fig-angles", "strategy", "angles", {{"grid", "1000:1e7:400:log"}}, {}};
    angles.config.insert(angles.config.end(), kCavityDefaults.begin(), kCavityDefaults.end());
    angles.config.push_back({"coupling", "1e21"});
    angles.config.push_back({"power_grid", "0.0001:10000:400:log"});
    angles.config.push_back({"power_nu", "10000"});
    presets.push_back(std::move(angles));

    return presets;
}

const PresetDef* find_preset(const std::vector<PresetDef>& presets, const std::string& name) {
    for (const auto& p : presets)
        if (p.name == name) return &p;
    return nullptr;
}

// ---------------------------------------------------------------------------
// Config resolution
// ---------------------------------------------------------------------------

struct CliFlags {
    std::optional<std::string> config;
    std::optional<std::string> out;
    std::optional<std::string> grid;
    std::optional<std::string> preset;
    std::optional<std::string> model;
    std::optional<std::string> theta;
    std::optional<double> r, phi, eta2, asym, beta;
    std::optional<double> mass, omega_m, kappa, gamma, coupling, target_nu;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> samples;
    bool flip_cross = false;
};

const std::vector<std::string> kKnownKeys = {
    "command", "model",   "preset", "grid",       "beta",       "theta",    "r",
    "phi",     "eta2",    "asym",   "mass",       "omega_m",    "kappa",    "gamma",
    "coupling", "target_nu", "power_grid", "power_nu", "seed",   "samples",  "convention"};

const std::vector<std::string> kNumericKeys = {"beta", "r",     "phi",      "eta2",    "asym",
                                               "mass", "omega_m", "kappa",  "gamma",
                                               "coupling", "target_nu", "power_nu"};

bool contains(const std::vector<std::string>& v, const std::string& s) {
    for (const auto& e : v)
        if (e == s) return true;
    return false;
}

// Canonicalize values so equal resolved configs emit equal bytes.
void normalize_values(ConfigMap& cfg) {
    for (const auto& key : kNumericKeys)
        if (auto v = cfg.get(key)) cfg.set(key, format_double(parse_double(*v)));
    for (const char* key : {"grid", "power_grid"})
        if (auto v = cfg.get(key)) cfg.set(key, GridSpec::parse(*v).str());
    if (auto v = cfg.get("theta"); v && *v != "opt") cfg.set("theta", format_double(parse_double(*v)));
    for (const char* key : {"seed", "samples"})
        if (auto v = cfg.get(key)) cfg.set(key, std::to_string(parse_int(*v)));
}

// defaults -> preset -> config file -> flags; later layers win.
ConfigMap resolve(const std::string& command, const CliFlags& flags,
                  const std::vector<PresetDef>& presets, const PresetDef** preset_out) {
    ConfigMap file_cfg;
    if (flags.config) file_cfg = ConfigMap::parse_file(*flags.config);

    for (const auto& [k, v] : file_cfg.items())
        if (!contains(kKnownKeys, k)) throw ConfigError("unknown config key '" + k + "'");
    if (auto c = file_cfg.get("command"); c && *c != command)
        throw ConfigError("config file was produced by command '" + *c + "', invoked as '" + command + "'");

    std::optional<std::string> preset_name = flags.preset;
    if (!preset_name)
        if (auto p = file_cfg.get("preset")) preset_name = *p;

    const PresetDef* preset = nullptr;
    if (preset_name) {
        preset = find_preset(presets, *preset_name);
        if (!preset) throw ConfigError("unknown preset '" + *preset_name + "'");
        if (preset->command != command)
            throw ConfigError("preset '" + *preset_name + "' belongs to command '" + preset->command + "'");
    }
    *preset_out = preset;

    ConfigMap cfg;
    cfg.set("command", command);
    if (preset) {
        cfg.set("preset", preset->name);
        cfg.set("model", preset->model);
        for (const auto& [k, v] : preset->config) cfg.set(k, v);
    }
    for (const auto& [k, v] : file_cfg.items())
        if (k != "command") cfg.set(k, v);

    if (flags.model) cfg.set("model", *flags.model);
    if (flags.grid) cfg.set("grid", *flags.grid);
    if (flags.theta) cfg.set("theta", *flags.theta);
    if (flags.r) cfg.set("r", format_double(*flags.r));
    if (flags.phi) cfg.set("phi", format_double(*flags.phi));
    if (flags.eta2) cfg.set("eta2", format_double(*flags.eta2));
    if (flags.asym) cfg.set("asym", format_double(*flags.asym));
    if (flags.beta) cfg.set("beta", format_double(*flags.beta));
    if (flags.mass) cfg.set("mass", format_double(*flags.mass));
    if (flags.omega_m) cfg.set("omega_m", format_double(*flags.omega_m));
    if (flags.kappa) cfg.set("kappa", format_double(*flags.kappa));
    if (flags.gamma) cfg.set("gamma", format_double(*flags.gamma));
    if (flags.coupling) cfg.set("coupling", format_double(*flags.coupling));
    if (flags.target_nu) cfg.set("target_nu", format_double(*flags.target_nu));
    if (flags.seed) cfg.set("seed", std::to_string(*flags.seed));
    if (flags.samples) cfg.set("samples", std::to_string(*flags.samples));
    cfg.set("convention", "angular");
    normalize_values(cfg);
    return cfg;
}

// Emission in one fixed key order regardless of how the run was specified.
ConfigMap emission_view(const ConfigMap& cfg, const std::vector<std::string>& keys) {
    ConfigMap out;
    for (const auto& key : keys)
        if (auto v = cfg.get(key)) out.set(key, *v);
    return out;
}

void emit(const CliFlags& flags, const std::string& content) {
    if (flags.out)
        write_file(*flags.out, content);
    else
        std::cout << content;
}

CavityParams cavity_from(const ConfigMap& cfg) {
    CavityParams p;
    p.mass = cfg.get_double("mass", 1e-6);
    p.omega_m = cfg.get_double("omega_m", 100.0);
    p.kappa = cfg.get_double("kappa", 1e6);
    p.gamma = cfg.get_double("gamma", 1e-4);
    p.validate();
    for (const auto& w : p.warnings()) std::cerr << "warning: " << w << "\n";
    return p;
}

// ---------------------------------------------------------------------------
// toy
// ---------------------------------------------------------------------------

int run_toy(const CliFlags& flags, const std::vector<PresetDef>& presets) {
    const PresetDef* preset = nullptr;
    ConfigMap cfg = resolve("toy", flags, presets, &preset);

    const std::string model = cfg.get_string("model", "");
    if (model != "single" && model != "two")
        throw ConfigError("toy: model must be 'single' or 'two'");

    std::vector<ToySeriesSpec> series;
    std::vector<std::string> keys = {"command", "model", "preset", "grid", "beta", "convention"};
    if (preset) {
        if (flags.r || flags.phi || flags.theta || flags.eta2 || flags.asym)
            throw ConfigError("toy: preset '" + preset->name + "' defines its own series; "
                              "drop --r/--phi/--theta/--eta2/--asym");
        series = preset->toy_series;
    } else {
        if (!cfg.has("grid")) cfg.set("grid", "0.1:10:400:log");
        if (!cfg.has("beta")) cfg.set("beta", "1");
        for (const char* k : {"theta", "r", "phi", "eta2", "asym"})
            if (!cfg.has(k)) cfg.set(k, k == std::string("asym") ? "1" : "0");
        normalize_values(cfg);
        ToySeriesSpec s;
        s.label = "N2";
        s.r = cfg.get_double("r", 0.0);
        s.phi = cfg.get_double("phi", 0.0);
        s.eta2 = cfg.get_double("eta2", 0.0);
        s.asym = cfg.get_double("asym", 1.0);
        const std::string theta = cfg.get_string("theta", "0");
        s.theta_opt = theta == "opt";
        if (!s.theta_opt) s.theta = parse_double(theta);
        series.push_back(std::move(s));
        keys = {"command", "model", "preset", "grid",  "beta",      "theta",
                "r",       "phi",   "eta2",   "asym",  "convention"};
    }

    const double beta = cfg.get_double("beta", 1.0);
    const GridSpec grid = GridSpec::parse(cfg.get_string("grid", "0.1:10:400:log"));
    const std::vector<double> xs = grid.build();
    // Both models are normalized to the single-mode SQL drive for comparison.
    const double zeta_sql = toy_sql_zeta_single(beta);

    CsvWriter csv(emission_view(cfg, keys));
    csv.comment("zeta_norm is zeta / zeta_SQL(single-mode); frequencies are angular (rad/s)");
    std::vector<std::string> cols = {"zeta_norm"};
    for (const auto& s : series) cols.push_back(s.label);
    csv.columns(cols);

    std::vector<double> row(cols.size());
    for (double x : xs) {
        row[0] = x;
        const double zeta = x * zeta_sql;
        for (std::size_t i = 0; i < series.size(); ++i) {
            const auto& s = series[i];
            const SqueezeParams sq{s.r, s.phi};
            double n2 = 0.0;
            if (model == "single") {
                const double theta = s.theta_opt ? toy_theta_opt_single(zeta, beta) : s.theta;
                ToySingleParams p{zeta, beta, theta, std::sqrt(s.eta2)};
                n2 = s.eta2 > 0.0 ? noise_metric_single_lossy(p, sq) : noise_metric_single(p, sq);
            } else {
                const double theta = s.theta_opt ? toy_theta_opt_two(zeta, beta) : s.theta;
                ToyTwoParams p{zeta, s.asym * zeta, beta, theta};
                n2 = noise_metric_two(p, sq);
            }
            row[i + 1] = n2;
        }
        csv.row(row);
    }
    emit(flags, csv.str());
    return exit_ok;
}

// ---------------------------------------------------------------------------
// cavity
// ---------------------------------------------------------------------------

int run_cavity(const CliFlags& flags, const std::vector<PresetDef>& presets) {
    const PresetDef* preset = nullptr;
    ConfigMap cfg = resolve("cavity", flags, presets, &preset);

    const std::string model = cfg.get_string("model", "");
    if (model != "position" && model != "momentum")
        throw ConfigError("cavity: model must be 'position' or 'momentum'");
    if (!cfg.has("coupling")) throw ConfigError("cavity: --coupling is required");
    if (!cfg.has("grid")) cfg.set("grid", "1000:1e7:400:log");
    for (const auto& [k, v] : kCavityDefaults)
        if (!cfg.has(k)) cfg.set(k, v);
    for (const char* k : {"theta", "r", "phi"})
        if (!cfg.has(k)) cfg.set(k, "0");
    normalize_values(cfg);

    const CavityParams p = cavity_from(cfg);
    const double coupling = cfg.get_double("coupling", 0.0);
    const SqueezeParams sq{cfg.get_double("r", 0.0), cfg.get_double("phi", 0.0)};
    const std::string theta_spec = cfg.get_string("theta", "0");
    const bool theta_opt = theta_spec == "opt";
    const double theta_fixed = theta_opt ? 0.0 : parse_double(theta_spec);
    const std::vector<double> nus = GridSpec::parse(cfg.get_string("grid", "")).build();

    const std::vector<std::string> keys = {"command", "model", "preset",  "grid",  "mass",
                                           "omega_m", "kappa", "gamma",   "coupling", "theta",
                                           "r",       "phi",   "convention"};
    CsvWriter csv(emission_view(cfg, keys));
    csv.comment("force-noise PSD decomposition per angular frequency");
    csv.columns({"nu", "shot", "backaction", "cross", "total", "theta", "coupling"});

    for (double nu : nus) {
        double theta = theta_fixed;
        SpectrumPoint pt;
        if (model == "position") {
            if (theta_opt) theta = theta_opt_position(p, coupling, nu);
            pt = force_psd_position(p, coupling, nu, theta, sq);
        } else {
            if (theta_opt) theta = theta_opt_momentum(p, coupling, nu);
            pt = force_psd_momentum(p, coupling, nu, theta, sq);
        }
        csv.row({pt.nu, pt.shot, pt.backaction, pt.cross, pt.total, pt.theta, coupling});
    }
    emit(flags, csv.str());
    return exit_ok;
}

// ---------------------------------------------------------------------------
// strategy
// ---------------------------------------------------------------------------

int run_strategy(const CliFlags& flags, const std::vector<PresetDef>& presets) {
    const PresetDef* preset = nullptr;
    ConfigMap cfg = resolve("strategy", flags, presets, &preset);

    const std::string model = cfg.get_string("model", "");
    if (model != "broadband" && model != "narrowband" && model != "angles")
        throw ConfigError("strategy: model must be 'broadband', 'narrowband' or 'angles'");
    for (const auto& [k, v] : kCavityDefaults)
        if (!cfg.has(k)) cfg.set(k, v);

    if (model == "angles") {
        if (!cfg.has("grid")) cfg.set("grid", "1000:1e7:400:log");
        if (!cfg.has("coupling")) cfg.set("coupling", "1e21");
        if (!cfg.has("power_grid")) cfg.set("power_grid", "0.0001:10000:400:log");
        if (!cfg.has("power_nu")) cfg.set("power_nu", "10000");
        normalize_values(cfg);

        const CavityParams p = cavity_from(cfg);
        const double g = cfg.get_double("coupling", 1e21);
        const double gp = momentum_coupling_from_position(g, p);
        const double power_nu = cfg.get_double("power_nu", 1e4);
        const double g_ref = g_opt_position(p, power_nu, 0.0);

        const std::vector<std::string> keys = {"command", "model", "preset", "grid",
                                               "mass",    "omega_m", "kappa", "gamma",
                                               "coupling", "power_grid", "power_nu", "convention"};
        CsvWriter csv(emission_view(cfg, keys));
        csv.comment("frequency rows: x = nu at fixed coupling; power rows: x = G^2/G_ref^2 "
                    "at nu = power_nu with G_ref the r=0 optimal position coupling");
        csv.columns({"sweep", "x", "theta_position", "theta_momentum"});

        for (double nu : GridSpec::parse(cfg.get_string("grid", "")).build()) {
            csv.row_mixed({"frequency", format_double(nu),
                           format_double(theta_opt_position(p, g, nu)),
                           format_double(theta_opt_momentum(p, gp, nu))});
        }
        for (double x : GridSpec::parse(cfg.get_string("power_grid", "")).build()) {
            const double gx = g_ref * std::sqrt(x);
            const double gpx = momentum_coupling_from_position(gx, p);
            csv.row_mixed({"power", format_double(x),
                           format_double(theta_opt_position(p, gx, power_nu)),
                           format_double(theta_opt_momentum(p, gpx, power_nu))});
        }
        emit(flags, csv.str());
        return exit_ok;
    }

    const bool broadband = model == "broadband";
    if (!cfg.has("grid")) cfg.set("grid", broadband ? "1000:1e7:400:log" : "1:1e7:400:log");
    if (!cfg.has("r")) cfg.set("r", "2");
    if (broadband && !cfg.has("target_nu")) cfg.set("target_nu", "1000000");
    normalize_values(cfg);

    StrategyConfig sc;
    sc.mode = broadband ? StrategyMode::broadband : StrategyMode::narrowband;
    sc.cavity = cavity_from(cfg);
    sc.sq = SqueezeParams{cfg.get_double("r", 2.0), 0.0};
    sc.target_nu = cfg.get_double("target_nu", 1e6);
    sc.nu_grid = GridSpec::parse(cfg.get_string("grid", "")).build();

    std::vector<std::string> keys = {"command", "model", "preset", "grid", "mass", "omega_m",
                                     "kappa",   "gamma", "r",      "convention"};
    if (broadband) keys.insert(keys.begin() + 9, "target_nu");
    CsvWriter csv(emission_view(cfg, keys));

    if (broadband) {
        const SweepResult sweep = broadband_sweep(sc);
        csv.comment("fixed-coupling phase-quadrature search; coupling set by the r=0 position "
                    "optimum at target_nu, momentum coupling G/(m kappa)");
        csv.columns({"nu", "pos_shot_r0", "pos_backaction_r0", "pos_total_r0", "pos_total_rs",
                     "mom_shot_r0", "mom_backaction_r0", "mom_total_r0", "mom_total_rs"});
        const auto& p0 = sweep.find(CouplingKind::position, false).records;
        const auto& ps = sweep.find(CouplingKind::position, true).records;
        const auto& m0 = sweep.find(CouplingKind::momentum, false).records;
        const auto& ms = sweep.find(CouplingKind::momentum, true).records;
        for (std::size_t i = 0; i < p0.size(); ++i) {
            csv.row({p0[i].nu, p0[i].point.shot, p0[i].point.backaction, p0[i].point.total,
                     ps[i].point.total, m0[i].point.shot, m0[i].point.backaction,
                     m0[i].point.total, ms[i].point.total});
        }
    } else {
        const SweepResult sweep = narrowband_sweep(sc);
        csv.comment("per-frequency optimal coupling (r=0 power) and optimal quadrature angle");
        csv.columns({"nu", "pos_total_r0", "pos_total_rs", "mom_total_r0", "mom_total_rs",
                     "pos_coupling", "mom_coupling", "pos_theta", "mom_theta"});
        const auto& p0 = sweep.find(CouplingKind::position, false).records;
        const auto& ps = sweep.find(CouplingKind::position, true).records;
        const auto& m0 = sweep.find(CouplingKind::momentum, false).records;
        const auto& ms = sweep.find(CouplingKind::momentum, true).records;
        for (std::size_t i = 0; i < p0.size(); ++i) {
            csv.row({p0[i].nu, p0[i].point.total, ps[i].point.total, m0[i].point.total,
                     ms[i].point.total, p0[i].coupling, m0[i].coupling, p0[i].theta, m0[i].theta});
        }
    }
    emit(flags, csv.str());
    return exit_ok;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int run_verify(const CliFlags& flags) {
    VerifyOptions opts;
    if (flags.seed) opts.seed = *flags.seed;
    if (flags.samples) opts.samples = *flags.samples;
    opts.flip_cross_sign = flags.flip_cross;
    OracleConfig{opts.seed, opts.samples}.validate();

    const VerifyReport report = run_verification(opts);
    emit(flags, report.to_json());

    std::size_t failed = 0;
    for (const auto& c : report.toy_cases)
        if (!c.pass) ++failed;
    for (const auto& c : report.coefficient_cases)
        if (!c.pass) ++failed;
    std::cerr << "verify: " << report.toy_cases.size() << " agreement cases, "
              << report.coefficient_cases.size() << " coefficient cases, " << failed
              << " failed\n";
    return report.pass ? exit_ok : exit_verify_failed;
}

void add_common_flags(CLI::App* cmd, CliFlags& flags, bool with_physics) {
    cmd->add_option("--config", flags.config, "key=value config file (flags override file values)");
    cmd->add_option("--out", flags.out, "output path (default: stdout)");
    cmd->add_option("--preset", flags.preset, "named preset; see notes below");
    cmd->add_option("--grid", flags.grid, "sweep grid lo:hi:n:log|lin");
    cmd->add_option("--seed", flags.seed, "recorded in the run metadata");
    cmd->add_option("--samples", flags.samples, "recorded in the run metadata");
    if (with_physics) {
        cmd->add_option("--r", flags.r, "squeezing strength");
        cmd->add_option("--phi", flags.phi, "squeezing angle (rad)");
        cmd->add_option("--theta", flags.theta, "quadrature angle (rad) or 'opt'");
        cmd->add_option("--mass", flags.mass, "mirror mass (kg)");
        cmd->add_option("--omega-m", flags.omega_m, "mechanical resonance (rad/s)");
        cmd->add_option("--kappa", flags.kappa, "cavity decay rate (rad/s)");
        cmd->add_option("--gamma", flags.gamma, "mechanical damping (rad/s)");
        cmd->add_option("--coupling", flags.coupling, "coupling strength (position: rad/s/m; "
                        "momentum: rad/s per kg m/s)");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qsense: quantum measurement-noise floors for squeezed-light optomechanical "
                 "position/momentum sensing"};
    app.require_subcommand(1);
    app.footer(
        "Presets:\n"
        "  toy:      fig-single-b|c|d|e, fig-two-b|c|d   (noise vs normalized drive)\n"
        "  strategy: fig-broadband, fig-narrowband, fig-angles\n"
        "CSV columns:\n"
        "  toy:      zeta_norm, one N^2 column per series\n"
        "  cavity:   nu, shot, backaction, cross, total, theta, coupling\n"
        "  strategy: broadband nu,pos_shot_r0,pos_backaction_r0,pos_total_r0,pos_total_rs,\n"
        "            mom_shot_r0,mom_backaction_r0,mom_total_r0,mom_total_rs;\n"
        "            narrowband nu,pos_total_r0,pos_total_rs,mom_total_r0,mom_total_rs,\n"
        "            pos_coupling,mom_coupling,pos_theta,mom_theta;\n"
        "            angles sweep,x,theta_position,theta_momentum\n"
        "All frequencies are angular (rad/s). Exit codes: 0 ok, 1 verification failure, 2 bad config.");

    CliFlags flags;
    const std::vector<PresetDef> presets = build_presets();

    auto* toy = app.add_subcommand("toy", "kick-drift-kick toy-model noise vs drive amplitude");
    toy->add_option("model", flags.model, "single|two");
    add_common_flags(toy, flags, false);
    toy->add_option("--beta", flags.beta, "free-evolution factor");
    toy->add_option("--r", flags.r, "squeezing strength");
    toy->add_option("--phi", flags.phi, "squeezing angle (rad)");
    toy->add_option("--theta", flags.theta, "quadrature angle (rad) or 'opt'");
    toy->add_option("--eta2", flags.eta2, "detection loss eta^2 in [0,1]");
    toy->add_option("--asym", flags.asym, "two-mode amplitude ratio zeta2/zeta1");

    auto* cavity = app.add_subcommand("cavity", "cavity force-noise PSD sweep");
    cavity->add_option("model", flags.model, "position|momentum");
    add_common_flags(cavity, flags, true);

    auto* strategy = app.add_subcommand("strategy", "broadband / narrow-band search comparisons");
    strategy->add_option("model", flags.model, "broadband|narrowband|angles");
    add_common_flags(strategy, flags, true);
    strategy->add_option("--target-nu", flags.target_nu, "broadband band center (rad/s)");

    auto* verify = app.add_subcommand("verify", "Monte-Carlo and linear-solver self-verification");
    verify->add_option("--out", flags.out, "output path for the JSON report (default: stdout)");
    verify->add_option("--seed", flags.seed, "oracle seed");
    verify->add_option("--samples", flags.samples, "samples per agreement case (>= 1e4)");
    verify->add_flag("--inject-cross-sign-flip", flags.flip_cross,
                     "fault-injection self-test: must make verification fail");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config_error;
    }

    try {
        if (toy->parsed()) return run_toy(flags, presets);
        if (cavity->parsed()) return run_cavity(flags, presets);
        if (strategy->parsed()) return run_strategy(flags, presets);
        if (verify->parsed()) return run_verify(flags);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config_error;
    }
    return exit_config_error;
}
