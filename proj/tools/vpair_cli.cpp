// vpair: command-line front end.
//
// Exit codes: 0 success, 1 numerical or acceptance failure, 2 usage error.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "vpair/report.hpp"
#include "vpair/vpair.hpp"

namespace {

using nlohmann::json;
using namespace vpair;

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;

struct Common {
    std::string species_file;
    std::string format = "json";
    std::string output;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

SpeciesRegistry registry_for(const Common& common) {
    return common.species_file.empty() ? default_registry() : load_registry(common.species_file);
}

void emit(const Common& common, const std::string& text) {
    if (common.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(common.output, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + common.output + "'");
    out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// --- alpha ----------------------------------------------------------------

struct AlphaArgs {
    bool fit = false;
    bool eval = false;
    std::string policy = "global";
    double cutoff_mev = 0.0;
    double mass_factor = 0.0;
    double quark_cutoff_mev = 100.0;
    double target = PC::inverse_alpha_target;
};

int run_alpha(const Common& common, const AlphaArgs& args) {
    if (args.fit == args.eval) throw UsageError("alpha: pass exactly one of --fit or --eval");
    const auto reg = registry_for(common);

    vacuum::CutoffPolicy policy = vacuum::GlobalConstant{1.0};
    json out = {{"policy", args.policy}, {"target_inverse_alpha", args.target}};

    if (args.fit) {
        if (args.policy == "per-species") throw UsageError("alpha --fit supports global or mass-proportional");
        const auto kind = args.policy == "global" ? vacuum::PolicyKind::GlobalConstant
                                                  : vacuum::PolicyKind::MassProportional;
        const auto fit = vacuum::fit_cutoff(reg, args.target, kind);
        policy = fit.policy;
        out["mode"] = "fit";
        if (kind == vacuum::PolicyKind::GlobalConstant) {
            out["cutoff_mev"] = fit.value;
        } else {
            out["mass_factor_a"] = fit.value;
            out["mass_factor_a_root_check"] = fit.cross_check;
            if (reg.contains("e")) {
                const double lc = vacuum::compton_length(reg.at("e").mass_mev);
                out["pair_volume_over_compton3"] = vacuum::average_pair_volume(reg.at("e"), fit.value) / (lc * lc * lc);
            }
        }
    } else {
        out["mode"] = "eval";
        if (args.policy == "global") {
            if (!(args.cutoff_mev > 0.0)) throw UsageError("alpha --eval --policy global needs --cutoff-mev > 0");
            policy = vacuum::GlobalConstant{args.cutoff_mev};
            out["cutoff_mev"] = args.cutoff_mev;
        } else if (args.policy == "mass-proportional") {
            if (!(args.mass_factor > 0.0)) throw UsageError("alpha --eval --policy mass-proportional needs --mass-factor > 0");
            policy = vacuum::MassProportional{args.mass_factor};
            out["mass_factor_a"] = args.mass_factor;
        } else {
            if (!(args.cutoff_mev > 0.0)) throw UsageError("alpha --eval --policy per-species needs --cutoff-mev > 0");
            vacuum::PerSpecies per;
            per.fallback_mev = args.cutoff_mev;
            for (const auto& s : reg)
                if (s.color_factor == 3) per.cutoff_mev[s.name] = args.quark_cutoff_mev;
            policy = per;
            out["cutoff_mev"] = args.cutoff_mev;
            out["quark_cutoff_mev"] = args.quark_cutoff_mev;
        }
    }

    const auto breakdown = vacuum::inverse_alpha_total(reg, policy);
    const auto vac = vacuum::permeability_from_alpha(breakdown.total_inverse_alpha);
    out["ratio_to_target"] = breakdown.total_inverse_alpha / args.target;
    out["breakdown"] = io::to_json(breakdown);
    out["epsilon0_f_per_m"] = vac.epsilon0;
    out["inv_mu0_per_h_per_m"] = vac.inv_mu0;

    if (common.format == "csv") {
        std::ostringstream csv;
        io::write_csv(csv, breakdown);
        emit(common, csv.str());
    } else {
        emit(common, dump(out));
    }
    return exit_ok;
}

// --- planck -----------------------------------------------------------------

struct PlanckArgs {
    double temperature_k = 0.0;
    bool with_zpf = false;
    bool thermal_only = false;
    bool integrate = false;
    double x_min = 0.01;
    double x_max = 20.0;
    int points = 200;
};

int run_planck(const Common& common, const PlanckArgs& args) {
    if (!(args.temperature_k > 0.0)) throw UsageError("planck: --temperature-k must be > 0");
    if (!(args.x_min >= 0.0) || !(args.x_max > args.x_min)) throw UsageError("planck: invalid abscissa range");
    if (args.points < 2) throw UsageError("planck: --points must be >= 2");
    if (args.with_zpf && args.thermal_only) throw UsageError("planck: --with-zpf and --thermal-only are exclusive");

    const statmech::ThermalState state(args.temperature_k);
    if (args.integrate) {
        const double num = statmech::thermal_energy_density(state);
        const double exact = statmech::stefan_boltzmann_energy_density(state);
        json out = {{"temperature_k", args.temperature_k},
                    {"integrated_thermal_energy_density_j_per_m3", num},
                    {"stefan_boltzmann_j_per_m3", exact},
                    {"rel_err", (num - exact) / exact},
                    {"wien_peak_x", statmech::wien_peak_x(state)}};
        if (common.format == "csv") {
            std::ostringstream csv;
            csv << "quantity,value\n";
            for (const auto& [k, v] : out.items()) csv << k << ',' << io::format_double(v.get<double>()) << '\n';
            emit(common, csv.str());
        } else {
            emit(common, dump(out));
        }
        return exit_ok;
    }

    // Abscissa in units of kT/c, linearly spaced.
    const double p_scale = state.kt() / PC::c;
    std::vector<statmech::SpectralSample> curve;
    for (int i = 0; i < args.points; ++i) {
        const double x = args.x_min + (args.x_max - args.x_min) * i / (args.points - 1);
        curve.push_back(statmech::planck_sample(x * p_scale, state, args.with_zpf));
    }
    if (common.format == "csv") {
        std::ostringstream csv;
        io::write_csv(csv, curve);
        emit(common, csv.str());
    } else {
        emit(common, dump({{"temperature_k", args.temperature_k}, {"samples", io::to_json(curve)}}));
    }
    return exit_ok;
}

// --- dispersion -------------------------------------------------------------

struct ModelArgs {
    std::string model = "half-compton";
    double k_factor = 31.9;
    double tau_s = 0.0;
};

dispersion::LifetimeModel model_from(const ModelArgs& a) {
    const auto kind = dispersion::parse_lifetime_kind(a.model);
    if (!kind) throw UsageError("unknown model '" + a.model + "'");
    dispersion::LifetimeModel m;
    m.kind = *kind;
    m.k_factor = a.k_factor;
    m.custom_tau_s = a.tau_s;
    if (m.kind == dispersion::LifetimeKind::Custom && !(a.tau_s > 0.0))
        throw UsageError("--model custom needs --tau-s > 0");
    return m;
}

struct DispersionArgs {
    ModelArgs model;
    bool all = false;
    double length_m = 1.0;
};

int run_dispersion(const Common& common, const DispersionArgs& args) {
    if (!(args.length_m > 0.0)) throw UsageError("dispersion: --length-m must be > 0");
    std::vector<dispersion::LifetimeModel> models;
    if (args.all) {
        models = {dispersion::LifetimeModel::half_compton(), dispersion::LifetimeModel::urban_k(args.model.k_factor),
                  dispersion::LifetimeModel::quasistationary()};
    } else {
        models = {model_from(args.model)};
    }
    json rows = json::array();
    std::ostringstream csv;
    csv << "model,tau_s,sigma_fs_per_sqrt_m,length_m,sigma_t_s,verdict,stated_conclusion\n";
    for (const auto& m : models) {
        auto cmp = dispersion::compare_to_limits(m);
        const double sigma_t = dispersion::analytic_sigma(m, args.length_m);
        json row = io::to_json(cmp);
        row["tau_s"] = dispersion::lifetime(m);
        row["length_m"] = args.length_m;
        row["sigma_t_s"] = sigma_t;
        rows.push_back(row);
        csv << dispersion::to_string(m.kind) << ',' << io::format_double(dispersion::lifetime(m)) << ','
            << io::format_double(cmp.sigma_per_sqrt_m / units::femtosecond) << ',' << io::format_double(args.length_m)
            << ',' << io::format_double(sigma_t) << ',' << dispersion::to_string(cmp.band_verdict) << ','
            << (cmp.stated_conclusion ? dispersion::to_string(*cmp.stated_conclusion) : "") << '\n';
    }
    emit(common, common.format == "csv" ? csv.str() : dump({{"models", rows}}));
    return exit_ok;
}

// --- simulate ----------------------------------------------------------------

struct SimulateArgs {
    ModelArgs model;
    double length_m = 1.0;
    std::int64_t photons = 100'000;
    std::uint64_t seed = 0;
    std::string delay = "fixed";
    std::string process = "poisson";
    std::string sampling = "auto";
    unsigned workers = 0;
    std::string samples_out;
};

int run_simulate(const Common& common, const SimulateArgs& args) {
    dispersion::FlightConfig cfg;
    cfg.length_m = args.length_m;
    cfg.lifetime = model_from(args.model);
    cfg.n_photons = args.photons;
    cfg.seed = args.seed;
    cfg.workers = args.workers;
    cfg.keep_samples = !args.samples_out.empty();
    cfg.delay_distribution = args.delay == "fixed" ? dispersion::DelayDistribution::FixedTau
                             : args.delay == "exp" ? dispersion::DelayDistribution::ExponentialTau
                                                   : dispersion::DelayDistribution::UniformFraction;
    cfg.interaction_process = args.process == "fixed" ? dispersion::InteractionProcess::FixedCount
                                                      : dispersion::InteractionProcess::PoissonCount;
    cfg.sampling = args.sampling == "loop"        ? dispersion::SamplingPath::PerInteraction
                   : args.sampling == "aggregate" ? dispersion::SamplingPath::Aggregate
                                                  : dispersion::SamplingPath::Auto;
    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        throw UsageError(e.what());
    }

    const auto result = dispersion::simulate_flight(cfg);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';

    if (!args.samples_out.empty()) {
        std::ofstream out(args.samples_out, std::ios::binary);
        if (!out) throw UsageError("cannot write '" + args.samples_out + "'");
        out << "photon,delay_s\n";
        for (std::size_t i = 0; i < result.samples.size(); ++i)
            out << i << ',' << io::format_double(result.samples[i]) << '\n';
    }

    if (common.format == "csv") {
        std::ostringstream csv;
        csv << "mean_delay_s,stddev_delay_s,stddev_standard_error_s,n_photons,analytic_sigma_s,expected_sigma_s\n"
            << io::format_double(result.mean_delay_s) << ',' << io::format_double(result.stddev_delay_s) << ','
            << io::format_double(result.stddev_standard_error()) << ',' << result.n_photons << ','
            << io::format_double(result.analytic_sigma_s) << ',' << io::format_double(result.expected_sigma_s)
            << '\n';
        emit(common, csv.str());
    } else {
        emit(common, dump(io::to_json(result)));
    }
    return exit_ok;
}

// --- report --------------------------------------------------------------------

struct ReportArgs {
    std::uint64_t seed = 1;
    double target = PC::inverse_alpha_target;
    std::int64_t photons = 100'000;
    unsigned workers = 0;
};

int run_report(const Common& common, const ReportArgs& args) {
    report::ReportOptions opt;
    opt.seed = args.seed;
    opt.inverse_alpha_target = args.target;
    opt.mc_photons = args.photons;
    opt.workers = args.workers;
    opt.registry = registry_for(common);
    const auto rows = report::build_report(opt);

    if (common.format == "csv") {
        std::ostringstream csv;
        report::write_csv(csv, rows);
        emit(common, csv.str());
    } else {
        emit(common, dump(report::to_json(rows)));
    }
    if (report::all_passed(rows)) return exit_ok;
    for (const auto& r : rows)
        if (r.passed && !*r.passed)
            std::cerr << "FAIL " << r.quantity << " (criterion " << r.criterion << "): computed "
                      << io::format_double(r.computed) << ", band [" << io::format_double(r.band->lo) << ", "
                      << io::format_double(r.band->hi) << "]\n";
    return exit_failure;
}

void add_model_options(CLI::App* cmd, ModelArgs& m) {
    cmd->add_option("--model", m.model, "half-compton | urban-k | quasistationary | custom")
        ->check(CLI::IsMember({"half-compton", "urban-k", "quasistationary", "custom"}));
    cmd->add_option("--k-factor", m.k_factor, "K for the urban-k model")->check(CLI::PositiveNumber);
    cmd->add_option("--tau-s", m.tau_s, "lifetime for the custom model [s]")->check(CLI::PositiveNumber);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"vpair: vacuum permittivity and photon-jitter estimates from virtual pairs"};
    app.require_subcommand(1, 1);

    Common common;
    app.add_option("--species-file", common.species_file, "species registry (JSON) replacing the built-in table")
        ->check(CLI::ExistingFile);
    app.add_option("--format", common.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("-o,--output", common.output, "output file (default: standard output)");

    AlphaArgs alpha;
    auto* alpha_cmd = app.add_subcommand("alpha", "fit or evaluate 1/alpha from the cutoff-regularised integrals");
    auto* fit_flag = alpha_cmd->add_flag("--fit", alpha.fit, "fit the cutoff to --target");
    auto* eval_flag = alpha_cmd->add_flag("--eval", alpha.eval, "evaluate at the given cutoff");
    fit_flag->excludes(eval_flag);
    alpha_cmd->add_option("--policy", alpha.policy)->check(CLI::IsMember({"global", "mass-proportional", "per-species"}));
    alpha_cmd->add_option("--cutoff-mev", alpha.cutoff_mev, "global cutoff A [MeV]");
    alpha_cmd->add_option("--mass-factor", alpha.mass_factor, "a in A = a mc^2");
    alpha_cmd->add_option("--quark-cutoff-mev", alpha.quark_cutoff_mev, "quark cutoff for --policy per-species");
    alpha_cmd->add_option("--target", alpha.target, "target 1/alpha")->check(CLI::PositiveNumber);

    PlanckArgs planck;
    auto* planck_cmd = app.add_subcommand("planck", "Planck spectral energy density with or without zero-point term");
    planck_cmd->add_option("--temperature-k", planck.temperature_k, "temperature [K]")->required();
    planck_cmd->add_flag("--with-zpf", planck.with_zpf, "include the zero-point term");
    planck_cmd->add_flag("--thermal-only", planck.thermal_only, "thermal part only (default)");
    planck_cmd->add_flag("--integrate", planck.integrate, "integrate the thermal part and compare to Stefan-Boltzmann");
    planck_cmd->add_option("--x-min", planck.x_min, "lowest pc/kT");
    planck_cmd->add_option("--x-max", planck.x_max, "highest pc/kT");
    planck_cmd->add_option("--points", planck.points, "number of samples");

    DispersionArgs disp;
    auto* disp_cmd = app.add_subcommand("dispersion", "analytic propagation-time jitter and limit comparison");
    add_model_options(disp_cmd, disp.model);
    disp_cmd->add_flag("--all", disp.all, "the three named models");
    disp_cmd->add_option("--length-m", disp.length_m, "path length [m]");

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo photon arrival-time spread");
    add_model_options(sim_cmd, sim.model);
    sim_cmd->add_option("--length-m", sim.length_m, "path length [m]")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--photons", sim.photons, "number of photons (>= 2)")->check(CLI::Range(std::int64_t{2}, std::int64_t{1'000'000'000}));
    sim_cmd->add_option("--seed", sim.seed, "RNG seed")->required();
    sim_cmd->add_option("--delay", sim.delay, "per-interaction delay law")->check(CLI::IsMember({"fixed", "exp", "uniform"}));
    sim_cmd->add_option("--process", sim.process, "interaction count law")->check(CLI::IsMember({"poisson", "fixed"}));
    sim_cmd->add_option("--sampling", sim.sampling, "auto | loop | aggregate")->check(CLI::IsMember({"auto", "loop", "aggregate"}));
    sim_cmd->add_option("--workers", sim.workers, "worker threads (0 = all cores)");
    sim_cmd->add_option("--samples-out", sim.samples_out, "write per-photon delays as CSV");

    ReportArgs rep;
    auto* rep_cmd = app.add_subcommand("report", "recompute all headline values and check them against their bands");
    rep_cmd->add_option("--seed", rep.seed, "RNG seed for randomised checks");
    rep_cmd->add_option("--inverse-alpha-target", rep.target, "1/alpha used by the fits")->check(CLI::PositiveNumber);
    rep_cmd->add_option("--photons", rep.photons, "photons per Monte Carlo run")->check(CLI::Range(std::int64_t{2}, std::int64_t{1'000'000'000}));
    rep_cmd->add_option("--workers", rep.workers, "worker threads (0 = all cores)");

    for (auto* cmd : {alpha_cmd, planck_cmd, disp_cmd, sim_cmd, rep_cmd}) cmd->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*alpha_cmd) return run_alpha(common, alpha);
        if (*planck_cmd) return run_planck(common, planck);
        if (*disp_cmd) return run_dispersion(common, disp);
        if (*sim_cmd) return run_simulate(common, sim);
        if (*rep_cmd) return run_report(common, rep);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failure;
    }
    return exit_usage;
}
