#pragma once

// Photon propagation-time jitter from delays at virtual-pair interactions.
//
// A photon crossing a distance L meets N ~ L/(c tau) pairs and is held for
// a lifetime at each; the spread of the total delay is sqrt(N) tau =
// sqrt(tau/c) sqrt(L). simulate_flight samples the compound distribution
// directly.
//
// Note: if the photon is taken to advance c*tau_i during each interaction
// there is no net delay and the predicted jitter is exactly zero; that case
// needs no simulation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "vpair/constants.hpp"
#include "vpair/errors.hpp"
#include "vpair/species.hpp"

namespace vpair::dispersion {

enum class LifetimeKind { HalfCompton, UrbanK, Quasistationary, Custom };

struct LifetimeModel {
    LifetimeKind kind = LifetimeKind::HalfCompton;
    /// Enhancement factor for UrbanK.
    double k_factor = 31.9;
    /// Lifetime [s] for Custom.
    double custom_tau_s = 0.0;

    static LifetimeModel half_compton() { return {LifetimeKind::HalfCompton}; }
    static LifetimeModel urban_k(double k = 31.9) { return {LifetimeKind::UrbanK, k}; }
    static LifetimeModel quasistationary() { return {LifetimeKind::Quasistationary}; }
    static LifetimeModel custom(double tau_s) { return {LifetimeKind::Custom, 31.9, tau_s}; }
};

inline std::string to_string(LifetimeKind kind) {
    switch (kind) {
        case LifetimeKind::HalfCompton: return "half-compton";
        case LifetimeKind::UrbanK: return "urban-k";
        case LifetimeKind::Quasistationary: return "quasistationary";
        case LifetimeKind::Custom: return "custom";
    }
    return "unknown";
}

inline std::optional<LifetimeKind> parse_lifetime_kind(const std::string& name) {
    for (auto k : {LifetimeKind::HalfCompton, LifetimeKind::UrbanK, LifetimeKind::Quasistationary,
                   LifetimeKind::Custom})
        if (to_string(k) == name) return k;
    return std::nullopt;
}

inline ParticleSpecies electron() {
    return {"e", PC::electron_mass_energy, -1.0, 1, 2};
}

/// Pair lifetime tau [s] for the given species (electron by default).
inline double lifetime(const LifetimeModel& model, const ParticleSpecies& species = electron()) {
    const double mc2 = species.mass_mev;
    if (!(mc2 > 0.0)) throw PreconditionError("lifetime: species mass must be > 0");
    switch (model.kind) {
        case LifetimeKind::HalfCompton:
            return PC::hbar_mev_s / (2.0 * mc2);
        case LifetimeKind::UrbanK:
            if (!(model.k_factor > 0.0)) throw PreconditionError("lifetime: K must be > 0");
            return PC::hbar_mev_s / (model.k_factor * 2.0 * mc2);
        case LifetimeKind::Quasistationary:
            return PC::hbar_mev_s / (std::pow(PC::alpha_target, 5) * mc2);
        case LifetimeKind::Custom:
            if (!(model.custom_tau_s > 0.0)) throw PreconditionError("lifetime: custom tau must be > 0");
            return model.custom_tau_s;
    }
    return 0.0;
}

/// sqrt(tau/c) [s m^-1/2]
inline double sigma_coefficient(const LifetimeModel& model, const ParticleSpecies& species = electron()) {
    return std::sqrt(lifetime(model, species) / PC::c);
}

/// sigma_T = sqrt(tau/c) sqrt(L) [s]
inline double analytic_sigma(const LifetimeModel& model, double length_m,
                             const ParticleSpecies& species = electron()) {
    if (!(length_m > 0.0)) throw PreconditionError("analytic_sigma: L must be > 0");
    return sigma_coefficient(model, species) * std::sqrt(length_m);
}

// --- Pulse widths ----------------------------------------------------------

/// 2 sqrt(2 ln 2), FWHM/RMS for a Gaussian.
inline const double fwhm_per_rms = 2.0 * std::sqrt(2.0 * std::log(2.0));

inline double rms_to_fwhm(double rms) { return rms * fwhm_per_rms; }
inline double fwhm_to_rms(double fwhm) { return fwhm / fwhm_per_rms; }

/// sqrt(T^2 + sigma^2 L): RMS widths add in quadrature.
inline double pulse_broadening(double pulse_rms_s, double sigma_per_sqrt_m, double length_m) {
    if (!(pulse_rms_s >= 0.0) || !(sigma_per_sqrt_m >= 0.0) || !(length_m >= 0.0))
        throw PreconditionError("pulse_broadening: inputs must be >= 0");
    return std::sqrt(pulse_rms_s * pulse_rms_s + sigma_per_sqrt_m * sigma_per_sqrt_m * length_m);
}

/// Smallest jitter coefficient that widens a pulse of RMS width T by the
/// measurable fraction f over length L: T sqrt(f (2 + f) / L).
inline double experiment_sensitivity(double pulse_rms_s, double precision_fraction, double length_m) {
    if (!(pulse_rms_s > 0.0) || !(precision_fraction > 0.0) || !(length_m > 0.0))
        throw PreconditionError("experiment_sensitivity: inputs must be > 0");
    return pulse_rms_s * std::sqrt(precision_fraction * (2.0 + precision_fraction) / length_m);
}

// --- Astrophysical limits -------------------------------------------------

enum class Verdict { Viable, Excluded };

inline std::string to_string(Verdict v) { return v == Verdict::Viable ? "viable" : "excluded"; }

/// Jitter limits from GRB and pulsar timing [s m^-1/2].
inline constexpr double limit_band_lo = 0.2 * units::femtosecond;
inline constexpr double limit_band_hi = 0.3 * units::femtosecond;

struct LimitComparison {
    LifetimeKind model;
    double sigma_per_sqrt_m;
    double band_lo = limit_band_lo;
    double band_hi = limit_band_hi;
    /// Excluded iff sigma exceeds the upper band edge.
    Verdict band_verdict;
    /// What the original analysis concluded for the named models; absent for Custom.
    std::optional<Verdict> stated_conclusion;
};

inline LimitComparison compare_to_limits(const LifetimeModel& model) {
    LimitComparison out{model.kind, sigma_coefficient(model), limit_band_lo, limit_band_hi, Verdict::Viable, {}};
    out.band_verdict = out.sigma_per_sqrt_m > limit_band_hi ? Verdict::Excluded : Verdict::Viable;
    switch (model.kind) {
        case LifetimeKind::HalfCompton:
        case LifetimeKind::UrbanK: out.stated_conclusion = Verdict::Viable; break;
        case LifetimeKind::Quasistationary: out.stated_conclusion = Verdict::Excluded; break;
        case LifetimeKind::Custom: break;
    }
    return out;
}

/// Custom model whose analytic coefficient equals `sigma_per_sqrt_m`, i.e.
/// tau = c sigma^2.
inline LifetimeModel model_from_sigma(double sigma_per_sqrt_m) {
    return LifetimeModel::custom(PC::c * sigma_per_sqrt_m * sigma_per_sqrt_m);
}

// --- Monte Carlo ------------------------------------------------------------

enum class DelayDistribution {
    /// Every interaction delays by exactly tau.
    FixedTau,
    /// Exponential delays with mean tau (variance inflated by 2).
    ExponentialTau,
    /// Uniform fraction of tau, U(0, tau) (photon meets the pair at a random moment).
    UniformFraction,
};

enum class InteractionProcess { PoissonCount, FixedCount };

enum class SamplingPath {
    /// Aggregate above `per_interaction_limit` expected interactions, loop below.
    Auto,
    PerInteraction,
    Aggregate,
};

struct FlightConfig {
    double length_m = 1.0;
    LifetimeModel lifetime = LifetimeModel::half_compton();
    std::int64_t n_photons = 100'000;
    std::uint64_t seed = 0;
    DelayDistribution delay_distribution = DelayDistribution::FixedTau;
    InteractionProcess interaction_process = InteractionProcess::PoissonCount;
    SamplingPath sampling = SamplingPath::Auto;
    /// 0 = hardware concurrency.
    unsigned workers = 0;
    bool keep_samples = false;

    static constexpr double per_interaction_limit = 1e4;

    void validate() const {
        if (!(length_m > 0.0)) throw ConfigError("FlightConfig: length_m must be > 0");
        if (n_photons < 2) throw ConfigError("FlightConfig: n_photons must be >= 2");
        (void)dispersion::lifetime(lifetime);
    }
};

struct PhotonFlightResult {
    double mean_delay_s = 0.0;
    double stddev_delay_s = 0.0;
    std::int64_t n_photons = 0;
    double analytic_sigma_s = 0.0;
    /// Analytic standard deviation for the configured delay distribution and
    /// process (sqrt(E[N] E[X^2]) for Poisson, sqrt(N Var X) for fixed count).
    double expected_sigma_s = 0.0;
    double expected_interactions = 0.0;
    bool used_per_interaction_path = false;
    std::vector<std::string> warnings;
    FlightConfig config_echo;
    /// Per-photon total delays, in photon order, when keep_samples is set.
    std::vector<double> samples;

    /// Approximate standard error of stddev_delay_s (normal-theory).
    double stddev_standard_error() const {
        return stddev_delay_s / std::sqrt(2.0 * static_cast<double>(n_photons - 1));
    }
};

namespace detail {

/// Engine seeded from (seed, photon index) so results do not depend on how
/// photons are split between workers.
inline std::mt19937_64 photon_engine(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

struct Sampler {
    double tau;
    double mean_count;
    std::int64_t fixed_count;
    DelayDistribution delays;
    InteractionProcess process;
    bool per_interaction;

    /// Total delay of one photon divided by tau.
    double draw(std::mt19937_64& rng) const {
        std::int64_t n = fixed_count;
        if (process == InteractionProcess::PoissonCount) {
            if (mean_count <= 0.0) {
                n = 0;
            } else if (mean_count < 1e15) {
                n = std::poisson_distribution<std::int64_t>(mean_count)(rng);
            } else {
                // Beyond int64-safe Poisson sampling: normal limit.
                const double x = std::normal_distribution<double>(mean_count, std::sqrt(mean_count))(rng);
                return aggregate_delays(std::max(x, 0.0), rng);
            }
        }
        if (n <= 0) return 0.0;
        if (per_interaction) return loop_delays(n, rng);
        return aggregate_delays(static_cast<double>(n), rng);
    }

    double loop_delays(std::int64_t n, std::mt19937_64& rng) const {
        double total = 0.0;
        switch (delays) {
            case DelayDistribution::FixedTau:
                for (std::int64_t i = 0; i < n; ++i) total += 1.0;
                break;
            case DelayDistribution::ExponentialTau: {
                std::exponential_distribution<double> d(1.0);
                for (std::int64_t i = 0; i < n; ++i) total += d(rng);
                break;
            }
            case DelayDistribution::UniformFraction: {
                std::uniform_real_distribution<double> d(0.0, 1.0);
                for (std::int64_t i = 0; i < n; ++i) total += d(rng);
                break;
            }
        }
        return total;
    }

    /// Sum of n per-interaction delays drawn from its exact (or, for the
    /// uniform case, normal-limit) law.
    double aggregate_delays(double n, std::mt19937_64& rng) const {
        switch (delays) {
            case DelayDistribution::FixedTau:
                return n;
            case DelayDistribution::ExponentialTau:
                // Sum of n unit exponentials is Gamma(n, 1).
                return n > 0.0 ? std::gamma_distribution<double>(n, 1.0)(rng) : 0.0;
            case DelayDistribution::UniformFraction:
                // Irwin-Hall: mean n/2, variance n/12.
                if (n < 64.0) return loop_delays(static_cast<std::int64_t>(n), rng);
                return std::normal_distribution<double>(n / 2.0, std::sqrt(n / 12.0))(rng);
        }
        return 0.0;
    }
};

/// E[X] and E[X^2] of one delay in units of tau.
inline std::pair<double, double> delay_moments(DelayDistribution d) {
    switch (d) {
        case DelayDistribution::FixedTau: return {1.0, 1.0};
        case DelayDistribution::ExponentialTau: return {1.0, 2.0};
        case DelayDistribution::UniformFraction: return {0.5, 1.0 / 3.0};
    }
    return {1.0, 1.0};
}

} // namespace detail

inline PhotonFlightResult simulate_flight(const FlightConfig& config) {
    config.validate();
    const double tau = lifetime(config.lifetime);
    const double mean_count = config.length_m / (PC::c * tau);
    const auto fixed_count = static_cast<std::int64_t>(std::llround(std::min(mean_count, 9.0e18)));

    PhotonFlightResult result;
    result.config_echo = config;
    result.n_photons = config.n_photons;
    result.analytic_sigma_s = analytic_sigma(config.lifetime, config.length_m);
    result.expected_interactions = mean_count;
    if (mean_count < 1.0)
        result.warnings.push_back("degenerate case: expected interaction count " + std::to_string(mean_count) +
                                  " < 1");

    bool per_interaction = false;
    switch (config.sampling) {
        case SamplingPath::Auto: per_interaction = mean_count <= FlightConfig::per_interaction_limit; break;
        case SamplingPath::PerInteraction:
            if (mean_count > 100.0 * FlightConfig::per_interaction_limit)
                throw ConfigError("per-interaction sampling requested for ~" + std::to_string(mean_count) +
                                  " interactions per photon");
            per_interaction = true;
            break;
        case SamplingPath::Aggregate: per_interaction = false; break;
    }
    result.used_per_interaction_path = per_interaction;

    const auto [m1, m2] = detail::delay_moments(config.delay_distribution);
    if (config.interaction_process == InteractionProcess::PoissonCount)
        result.expected_sigma_s = tau * std::sqrt(mean_count * m2);
    else
        result.expected_sigma_s = tau * std::sqrt(static_cast<double>(fixed_count) * (m2 - m1 * m1));

    const detail::Sampler sampler{tau, mean_count, fixed_count, config.delay_distribution,
                                  config.interaction_process, per_interaction};

    const auto n = static_cast<std::size_t>(config.n_photons);
    std::vector<double> delays(n);  // in units of tau
    unsigned workers = config.workers ? config.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));

    auto run = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto rng = detail::photon_engine(config.seed, i);
            delays[i] = sampler.draw(rng);
        }
    };
    if (workers <= 1) {
        run(0, n);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (n + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(n, begin + chunk);
            if (begin < end) pool.emplace_back(run, begin, end);
        }
    }

    // Sequential reduction in photon order; centred on the expected mean so
    // the tiny relative spread is not lost to cancellation.
    const double centre = config.interaction_process == InteractionProcess::PoissonCount
                              ? mean_count * m1
                              : static_cast<double>(fixed_count) * m1;
    double sum = 0.0;
    for (double d : delays) sum += d - centre;
    const double mean_offset = sum / static_cast<double>(n);
    double sq = 0.0;
    for (double d : delays) {
        const double r = (d - centre) - mean_offset;
        sq += r * r;
    }
    result.mean_delay_s = (centre + mean_offset) * tau;
    result.stddev_delay_s = std::sqrt(sq / static_cast<double>(n - 1)) * tau;

    if (config.keep_samples) {
        result.samples.reserve(n);
        for (double d : delays) result.samples.push_back(d * tau);
    }
    return result;
}

} // namespace vpair::dispersion
