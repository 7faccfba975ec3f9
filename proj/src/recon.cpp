#include "su11modes/recon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace su11modes {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// Fourier coefficients of sqrt(clamped curve) over one period; returns
// weights for |l| <= R/2 - 1 with the attenuation divided out.
std::map<int, double> sqrt_curve_coefficients(const CovarianceCurve& curve) {
    const int r = curve.period_bins;
    if (r < 8 || static_cast<int>(curve.value.size()) != 2 * r - 1)
        throw std::invalid_argument("oam_spectrum: malformed covariance curve");
    std::vector<double> s = curve.circular();
    for (double& v : s) v = std::sqrt(v > 0.0 ? v : 0.0);

    const int l_max = r / 2 - 1;
    std::vector<double> re(l_max + 1, 0.0), im(l_max + 1, 0.0);
    for (int l = 0; l <= l_max; ++l) {
        for (int d = 0; d < r; ++d) {
            const double ang = two_pi * l * d / r;
            re[l] += s[d] * std::cos(ang);
            im[l] -= s[d] * std::sin(ang);
        }
        re[l] /= r;
        im[l] /= r;
    }
    double re_norm = 0.0, im_norm = 0.0;
    for (int l = 0; l <= l_max; ++l) {
        re_norm += re[l] * re[l];
        im_norm += im[l] * im[l];
    }
    if (im_norm > 1e-4 * re_norm)
        throw AsymmetryError(
            "oam_spectrum: imaginary Fourier content above 1% of the real norm; "
            "source asymmetric or slice misaligned");

    std::map<int, double> out;
    for (int l = 0; l <= l_max; ++l) {
        double w = re[l];
        if (!curve.attenuation.empty() && l < static_cast<int>(curve.attenuation.size())) {
            const double att = std::max(curve.attenuation[l], 0.2);
            w /= att;
        }
        if (w < 0.0) w = 0.0;  // estimator noise
        out[l] = w;
        out[-l] = w;
    }
    return out;
}

} // namespace

OamSpectrum& OamSpectrum::normalize() {
    double sum = 0.0;
    for (const auto& [l, w] : weights) sum += w;
    if (sum > 0.0)
        for (auto& [l, w] : weights) w /= sum;
    normalized = true;
    return *this;
}

double OamSpectrum::mode_count() const {
    std::vector<double> w;
    w.reserve(weights.size());
    for (const auto& [l, v] : weights) w.push_back(v);
    return su11modes::mode_count(w);
}

OamSpectrum oam_spectrum_at(const CovarianceCurve& curve) {
    OamSpectrum out;
    out.weights = sqrt_curve_coefficients(curve);
    out.theta0 = curve.theta0;
    return out;
}

OamSpectrum oam_spectrum_avg(const std::vector<CovarianceCurve>& curves) {
    if (curves.size() < 2)
        throw std::invalid_argument("oam_spectrum_avg: need at least two radial slices");
    std::vector<std::pair<double, std::map<int, double>>> per_theta;
    per_theta.reserve(curves.size());
    for (const auto& c : curves) per_theta.emplace_back(c.theta0, sqrt_curve_coefficients(c));
    std::sort(per_theta.begin(), per_theta.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    OamSpectrum out;
    out.radially_averaged = true;
    for (std::size_t i = 0; i + 1 < per_theta.size(); ++i) {
        const auto& [t0, w0] = per_theta[i];
        const auto& [t1, w1] = per_theta[i + 1];
        const double dt = t1 - t0;
        for (const auto& [l, w] : w0) out.weights[l] += 0.5 * dt * t0 * w;
        for (const auto& [l, w] : w1) out.weights[l] += 0.5 * dt * t1 * w;
    }
    return out;
}

RadialModeSet radial_modes(const CovarianceMatrix& input) {
    if (input.spec.kind != SliceKind::radial)
        throw std::invalid_argument("radial_modes: needs a radial-slice covariance");
    const Eigen::MatrixXd& c = input.cov;
    if (c.rows() != c.cols() || c.rows() < 2)
        throw std::invalid_argument("radial_modes: covariance must be square");
    const double scale = c.cwiseAbs().maxCoeff();
    if ((c - c.transpose()).cwiseAbs().maxCoeff() > 1e-8 * std::max(scale, 1e-300))
        throw std::invalid_argument("radial_modes: covariance not symmetric within tolerance");

    const int n = static_cast<int>(c.rows());
    Eigen::MatrixXd root(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) root(j, k) = std::sqrt(std::max(c(j, k), 0.0));

    // Undo the 1/sqrt(theta theta') coordinate measure so eigenvectors are
    // the radial profiles u_p(theta) orthonormal on the theta bins.
    Eigen::VectorXd sqrt_theta(n);
    for (int j = 0; j < n; ++j) sqrt_theta(j) = std::sqrt(input.axis.at(j));
    Eigen::MatrixXd kernel =
        sqrt_theta.asDiagonal() * root * sqrt_theta.asDiagonal();
    kernel = 0.5 * (kernel + kernel.transpose()).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(kernel);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("radial_modes: eigendecomposition failed");

    RadialModeSet out;
    out.axis = input.axis;
    out.shapes.resize(n, n);
    out.weights.resize(n);
    // eigenvalues ascending from Eigen; report descending, clamped at 0
    for (int k = 0; k < n; ++k) {
        const int src = n - 1 - k;
        out.weights[k] = std::max(es.eigenvalues()(src), 0.0);
        Eigen::VectorXd v = es.eigenvectors().col(src);
        int peak = 0;
        for (int j = 1; j < n; ++j)
            if (std::abs(v(j)) > std::abs(v(peak))) peak = j;
        if (v(peak) < 0.0) v = -v;
        out.shapes.col(k) = v;
    }
    return out;
}

double mode_count(std::span<const double> weights) {
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("mode_count: weights must be nonnegative");
        sum += w;
    }
    if (sum <= 0.0) throw std::invalid_argument("mode_count: undefined for all-zero weights");
    double s2 = 0.0;
    for (double w : weights) s2 += (w / sum) * (w / sum);
    return 1.0 / s2;
}

double mode_count(const std::map<int, double>& weights) {
    std::vector<double> w;
    w.reserve(weights.size());
    for (const auto& [l, v] : weights) w.push_back(v);
    return mode_count(w);
}

ModeCountReport total_mode_count(double azimuthal_avg_count, double radial_count,
                                 std::vector<std::pair<double, double>> per_theta0) {
    if (!(azimuthal_avg_count >= 1.0) || !(radial_count >= 1.0))
        throw std::invalid_argument("total_mode_count: counts must be >= 1");
    ModeCountReport rep;
    rep.azimuthal_per_theta0 = std::move(per_theta0);
    rep.azimuthal_avg = azimuthal_avg_count;
    rep.radial = radial_count;
    rep.total = azimuthal_avg_count * radial_count;
    return rep;
}

} // namespace su11modes
