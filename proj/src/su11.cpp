#include "su11modes/su11.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace su11modes {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
// sinh/cosh overflow past ~710; reject instead of saturating
constexpr double max_hyperbolic_arg = 700.0;

void check_arg(double x) {
    if (std::abs(x) > max_hyperbolic_arg)
        throw std::range_error("su11: hyperbolic argument exceeds overflow guard (700)");
}

EffectiveWeights::Entry weights_for(double lambda, double g1, double g2, double phi) {
    const double r = std::sqrt(lambda);
    check_arg(r * (g1 + g2));
    const double c1 = std::cosh(r * g1), s1 = std::sinh(r * g1);
    const double c2 = std::cosh(r * g2), s2 = std::sinh(r * g2);
    const std::complex<double> ph{std::cos(phi), std::sin(phi)};
    return {c1 * c2 + ph * s1 * s2, s1 * c2 + ph * c1 * s2};
}

} // namespace

InterferometerConfig::InterferometerConfig(double g1_, double g2_, double phi_)
    : g1(g1_), g2(g2_) {
    if (!(g1 >= 0.0) || !(g2 >= 0.0))
        throw std::invalid_argument("InterferometerConfig: gains must be nonnegative");
    phi = std::fmod(phi_, two_pi);
    if (phi < 0) phi += two_pi;
}

EffectiveWeights effective_weights(const InterferometerConfig& cfg,
                                   const SchmidtSpectrum& spectrum) {
    if (spectrum.kind() != SpectrumKind::input_lambda)
        throw std::invalid_argument("effective_weights: spectrum must be input-kind");
    EffectiveWeights out;
    for (const auto& [m, lam] : spectrum.weights())
        out.modes[m] = weights_for(lam, cfg.g1, cfg.g2, cfg.phi);
    return out;
}

SchmidtSpectrum output_spectrum(const InterferometerConfig& cfg,
                                const SchmidtSpectrum& spectrum) {
    if (spectrum.kind() != SpectrumKind::input_lambda)
        throw std::invalid_argument("output_spectrum: spectrum must be input-kind");
    std::map<ModeIndex, double> out;
    for (const auto& [m, lam] : spectrum.weights()) {
        const auto w = weights_for(lam, cfg.g1, cfg.g2, cfg.phi);
        out[m] = std::norm(w.w2);
    }
    return {SpectrumKind::output_lambda, std::move(out)};
}

SchmidtSpectrum high_gain_approx(const InterferometerConfig& cfg,
                                 const SchmidtSpectrum& spectrum) {
    if (spectrum.kind() != SpectrumKind::input_lambda)
        throw std::invalid_argument("high_gain_approx: spectrum must be input-kind");
    const double fringe = 2.0 + 2.0 * std::cos(cfg.phi);  // |1 + e^{i Phi}|^2
    std::map<ModeIndex, double> out;
    for (const auto& [m, lam] : spectrum.weights()) {
        const double arg = std::sqrt(lam) * (cfg.g1 + cfg.g2);
        check_arg(arg);
        const double s = std::sinh(arg);
        out[m] = 0.25 * s * s * fringe;
    }
    return {SpectrumKind::output_lambda, std::move(out)};
}

ValidityReport approx_validity(const InterferometerConfig& cfg, double lambda,
                               double ratio_threshold) {
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw std::invalid_argument("approx_validity: lambda must lie in (0, 1]");
    const double r = std::sqrt(lambda);
    check_arg(r * (cfg.g1 + cfg.g2));
    ValidityReport rep;
    rep.lhs = std::sinh(r * (cfg.g1 + cfg.g2)) *
              std::sqrt(2.0 + 2.0 * std::cos(cfg.phi));
    rep.rhs = std::sinh(r * std::abs(cfg.g1 - cfg.g2));
    rep.valid = rep.lhs >= ratio_threshold * rep.rhs;
    return rep;
}

double mean_photons_vs_angle(const InterferometerConfig& cfg, const SchmidtSpectrum& spectrum,
                             const ModeBasis& basis, double theta) {
    const auto& g = basis.grid();
    if (theta < g.theta_min || theta > g.theta_max)
        throw std::domain_error("mean_photons_vs_angle: theta outside basis grid");
    const auto out = spectrum.kind() == SpectrumKind::output_lambda
                         ? spectrum
                         : output_spectrum(cfg, spectrum);
    const double t = std::max(theta, g.theta_floor());
    double total = 0.0;
    for (const auto& [m, big] : out.weights()) {
        const double u = basis.value(m, theta);
        total += big * u * u / t;
    }
    return total;
}

double total_photons(const InterferometerConfig& cfg, const SchmidtSpectrum& spectrum) {
    const auto out = spectrum.kind() == SpectrumKind::output_lambda
                         ? spectrum
                         : output_spectrum(cfg, spectrum);
    return out.sum();
}

std::vector<std::pair<double, double>> phase_sweep(double g1, double g2, int n_phases,
                                                   const SchmidtSpectrum& spectrum) {
    if (n_phases < 1) throw std::invalid_argument("phase_sweep: need at least one phase");
    std::vector<std::pair<double, double>> out;
    out.reserve(n_phases);
    for (int i = 0; i < n_phases; ++i) {
        const double phi = two_pi * i / n_phases;
        const InterferometerConfig cfg{g1, g2, phi};
        out.emplace_back(phi, total_photons(cfg, spectrum));
    }
    return out;
}

} // namespace su11modes
