#include "su11modes/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace su11modes {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_phi(double phi) {
    double w = std::fmod(phi, two_pi);
    if (w < 0) w += two_pi;
    return w;
}

} // namespace

PolarGrid::PolarGrid(double tmin, double tmax, int ntheta, int nphi)
    : theta_min(tmin), theta_max(tmax), n_theta(ntheta), n_phi(nphi) {
    if (!(theta_max > theta_min) || theta_min < 0.0)
        throw std::invalid_argument("PolarGrid: need theta_max > theta_min >= 0");
    if (n_theta < 2) throw std::invalid_argument("PolarGrid: n_theta must be >= 2");
    if (n_phi < 4) throw std::invalid_argument("PolarGrid: n_phi must be >= 4");
}

PolarGrid::PolarGrid(double tmin, double tmax, int ntheta, int nphi,
                     int nx, int ny, double pitch_)
    : PolarGrid(tmin, tmax, ntheta, nphi) {
    if (nx < 1 || ny < 1) throw std::invalid_argument("PolarGrid: camera dims must be positive");
    if (!(pitch_ > 0.0)) throw std::invalid_argument("PolarGrid: pixel pitch must be positive");
    n_x = nx;
    n_y = ny;
    pitch = pitch_;
    center_x = 0.5 * (nx - 1);
    center_y = 0.5 * (ny - 1);
}

double PolarGrid::pixel_theta(int ix, int iy) const {
    return std::hypot(pixel_x(ix), pixel_y(iy));
}

double PolarGrid::pixel_phi(int ix, int iy) const {
    return wrap_phi(std::atan2(pixel_y(iy), pixel_x(ix)));
}

SchmidtSpectrum::SchmidtSpectrum(SpectrumKind kind, std::map<ModeIndex, double> weights)
    : kind_(kind), weights_(std::move(weights)) {
    for (const auto& [m, w] : weights_) {
        if (m.p < 0) throw std::invalid_argument("SchmidtSpectrum: radial index p must be >= 0");
        if (!(w >= 0.0)) throw std::invalid_argument("SchmidtSpectrum: weights must be nonnegative");
        sum_ += w;
    }
    if (kind_ == SpectrumKind::input_lambda && std::abs(sum_ - 1.0) > 1e-12)
        throw std::invalid_argument("SchmidtSpectrum: input eigenvalues must sum to 1");
}

double SchmidtSpectrum::at(ModeIndex m) const {
    auto it = weights_.find(m);
    return it == weights_.end() ? 0.0 : it->second;
}

double SchmidtSpectrum::schmidt_number() const {
    if (sum_ <= 0.0) throw std::invalid_argument("schmidt_number: all weights are zero");
    double s2 = 0.0;
    for (const auto& [m, w] : weights_) s2 += (w / sum_) * (w / sum_);
    return 1.0 / s2;
}

std::map<int, double> SchmidtSpectrum::sum_over_p() const {
    std::map<int, double> out;
    for (const auto& [m, w] : weights_) out[m.l] += w;
    return out;
}

std::map<int, double> SchmidtSpectrum::sum_over_l() const {
    std::map<int, double> out;
    for (const auto& [m, w] : weights_) out[m.p] += w;
    return out;
}

SchmidtSpectrum geometric_spectrum(double mu, int l_max, int p_max) {
    if (!(mu > 0.0 && mu < 1.0))
        throw std::invalid_argument("geometric_spectrum: mu must lie in (0, 1)");
    if (l_max < 0 || p_max < 0)
        throw std::invalid_argument("geometric_spectrum: l_max and p_max must be >= 0");
    std::map<ModeIndex, double> w;
    double total = 0.0;
    for (int l = -l_max; l <= l_max; ++l)
        for (int p = 0; p <= p_max; ++p) {
            const double v = std::pow(mu, 2 * p + std::abs(l));
            w[{l, p}] = v;
            total += v;
        }
    // exact renormalization; residual rounding is folded into the largest entry
    for (auto& [m, v] : w) v /= total;
    double s = 0.0;
    for (const auto& [m, v] : w) s += v;
    w[{0, 0}] += 1.0 - s;
    return {SpectrumKind::input_lambda, std::move(w)};
}

std::pair<int, int> suggested_truncation(double mu, double tail) {
    if (!(mu > 0.0 && mu < 1.0))
        throw std::invalid_argument("suggested_truncation: mu must lie in (0, 1)");
    // Geometric sums are closed-form: total = sum_l mu^|l| * sum_p mu^2p.
    // Grow the box until the discarded fraction drops below `tail`.
    const double full = (1.0 + mu) / (1.0 - mu) / (1.0 - mu * mu);
    for (int n = 1; n <= 400; ++n) {
        const int l_max = 2 * n;
        const int p_max = n;
        double kept = 0.0;
        for (int l = -l_max; l <= l_max; ++l)
            for (int p = 0; p <= p_max; ++p) kept += std::pow(mu, 2 * p + std::abs(l));
        if ((full - kept) / full < tail) return {l_max, p_max};
    }
    throw std::invalid_argument("suggested_truncation: mu too close to 1");
}

ModeBasis::ModeBasis(PolarGrid grid, double waist, int l_max, int p_max,
                     std::vector<std::vector<std::vector<double>>> profiles)
    : grid_(grid), waist_(waist), l_max_(l_max), p_max_(p_max), profiles_(std::move(profiles)) {}

bool ModeBasis::contains(ModeIndex m) const {
    return std::abs(m.l) <= l_max_ && m.p >= 0 && m.p <= p_max_;
}

const std::vector<double>& ModeBasis::profile(ModeIndex m) const {
    if (!contains(m)) throw std::out_of_range("ModeBasis: mode outside basis");
    return profiles_[std::abs(m.l)][m.p];
}

double ModeBasis::value(ModeIndex m, double theta) const {
    const auto& prof = profile(m);
    const double dt = grid_.theta_bin_width();
    if (theta < grid_.theta_min || theta > grid_.theta_max) return 0.0;
    const double x = (theta - grid_.theta_min) / dt - 0.5;  // bin-center coordinate
    if (x <= 0.0) {
        // anchor to u = 0 at theta = 0 below the first bin center
        const double t0 = grid_.theta_center(0);
        return t0 > 0.0 ? prof.front() * (theta / t0) : prof.front();
    }
    const int i = static_cast<int>(x);
    if (i >= grid_.n_theta - 1) return prof.back();
    const double f = x - i;
    return prof[i] * (1.0 - f) + prof[i + 1] * f;
}

std::complex<double> ModeBasis::mode_value(ModeIndex m, double theta, double phi) const {
    const double u = value(m, theta);
    const double t = std::max(theta, grid_.theta_floor());
    const double radial = u / std::sqrt(t);
    const double ang = m.l * phi;
    return {radial * std::cos(ang), radial * std::sin(ang)};
}

ModeBasis ModeBasis::with_shared_radial_profiles() const {
    auto shared = profiles_;
    for (int al = 1; al <= l_max_; ++al) shared[al] = shared[0];
    return {grid_, waist_, l_max_, p_max_, std::move(shared)};
}

ModeBasis build_lg_basis(const PolarGrid& grid, double waist, int l_max, int p_max) {
    if (!(waist > 0.0)) throw std::invalid_argument("build_lg_basis: waist must be positive");
    if (l_max < 0 || p_max < 0)
        throw std::invalid_argument("build_lg_basis: l_max and p_max must be >= 0");
    if (waist / grid.theta_bin_width() < 8.0)
        throw std::invalid_argument("build_lg_basis: grid does not resolve the waist (need >= 8 theta bins across it)");

    const int nt = grid.n_theta;
    const double dt = grid.theta_bin_width();

    std::vector<std::vector<std::vector<double>>> profiles(l_max + 1);
    for (int al = 0; al <= l_max; ++al) {
        auto& fam = profiles[al];
        fam.assign(p_max + 1, std::vector<double>(nt, 0.0));
        for (int p = 0; p <= p_max; ++p) {
            for (int j = 0; j < nt; ++j) {
                const double t = grid.theta_center(j);
                const double x = 2.0 * t * t / (waist * waist);
                // radial LG amplitude times sqrt(theta), so that profiles are
                // orthonormal in the plain dtheta measure
                fam[p][j] = std::pow(t, al + 0.5) * std::assoc_laguerre(p, al, x) *
                            std::exp(-t * t / (waist * waist));
            }
        }
        // Gram-Schmidt within the |l| family restores exact grid-level
        // orthonormality lost to sampling.
        for (int p = 0; p <= p_max; ++p) {
            for (int q = 0; q < p; ++q) {
                double proj = 0.0;
                for (int j = 0; j < nt; ++j) proj += fam[p][j] * fam[q][j];
                proj *= dt;
                for (int j = 0; j < nt; ++j) fam[p][j] -= proj * fam[q][j];
            }
            double norm2 = 0.0;
            for (int j = 0; j < nt; ++j) norm2 += fam[p][j] * fam[p][j];
            norm2 *= dt;
            if (!(norm2 > 0.0))
                throw std::invalid_argument("build_lg_basis: degenerate profile after sampling");
            const double inv = 1.0 / std::sqrt(norm2);
            for (int j = 0; j < nt; ++j) fam[p][j] *= inv;
        }
    }
    return {grid, waist, l_max, p_max, std::move(profiles)};
}

std::complex<double> evaluate_tpa(const SchmidtSpectrum& spectrum, const ModeBasis& basis,
                                  AngularPoint qs, AngularPoint qi) {
    if (spectrum.kind() != SpectrumKind::input_lambda)
        throw std::invalid_argument("evaluate_tpa: spectrum must be input-kind");
    const auto& g = basis.grid();
    for (double t : {qs.theta, qi.theta})
        if (t < g.theta_min || t > g.theta_max)
            throw std::domain_error("evaluate_tpa: angle outside grid range");

    std::complex<double> f = 0.0;
    for (const auto& [m, lam] : spectrum.weights()) {
        if (lam == 0.0) continue;
        const double amp = std::sqrt(lam);
        f += amp * basis.mode_value(m, qs.theta, qs.phi) *
             basis.mode_value({-m.l, m.p}, qi.theta, qi.phi);
    }
    return f;
}

} // namespace su11modes
