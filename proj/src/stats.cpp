#include "su11modes/stats.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace su11modes {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double circular_diff(double a, double b) {
    double d = std::fmod(a - b, two_pi);
    if (d < 0) d += two_pi;
    return d;
}

} // namespace

void SliceSpec::validate() const {
    if (!(halfwidth > 0.0)) throw std::invalid_argument("SliceSpec: halfwidth must be positive");
    if (resolution < 8) throw std::invalid_argument("SliceSpec: resolution must be >= 8");
    if (kind == SliceKind::azimuthal && !(center > 0.0))
        throw std::invalid_argument("SliceSpec: azimuthal slice needs theta0 > 0");
}

SliceBinning::SliceBinning(const PolarGrid& grid, const SliceSpec& spec) : spec_(spec) {
    spec_.validate();
    if (!grid.has_cartesian())
        throw std::invalid_argument("SliceBinning: grid carries no camera geometry");
    n_pixels_ = static_cast<std::size_t>(grid.n_x) * grid.n_y;

    const int res = spec_.resolution;
    axis_.resize(res);
    bin_weight_.assign(res, 0.0);

    if (spec_.kind == SliceKind::azimuthal) {
        if (!(spec_.center - spec_.halfwidth > grid.theta_floor()))
            throw std::invalid_argument(
                "SliceBinning: azimuthal slice must satisfy theta0 - halfwidth > theta_floor");
        if (spec_.center + spec_.halfwidth > grid.theta_max)
            throw std::domain_error("SliceBinning: slice extends beyond the grid");
        const double dphi = two_pi / res;
        for (int b = 0; b < res; ++b) axis_[b] = (b + 0.5) * dphi;

        for (int iy = 0; iy < grid.n_y; ++iy)
            for (int ix = 0; ix < grid.n_x; ++ix) {
                const double t = grid.pixel_theta(ix, iy);
                if (std::abs(t - spec_.center) > spec_.halfwidth) continue;
                const double ph = grid.pixel_phi(ix, iy);
                const std::uint32_t px = static_cast<std::uint32_t>(iy) * grid.n_x + ix;
                double x = ph / dphi - 0.5;
                if (x < 0) x += res;
                const int b0 = static_cast<int>(x) % res;
                const double f = x - std::floor(x);
                const int b1 = (b0 + 1) % res;
                hits_.push_back({px, static_cast<std::uint32_t>(b0), static_cast<float>(1.0 - f)});
                pixel_coord_.push_back(ph);
                hits_.push_back({px, static_cast<std::uint32_t>(b1), static_cast<float>(f)});
                pixel_coord_.push_back(ph);
                bin_weight_[b0] += 1.0 - f;
                bin_weight_[b1] += f;
            }
    } else {
        const double lo = grid.theta_floor();
        const double hi = grid.theta_max;
        const double dth = (hi - lo) / res;
        for (int b = 0; b < res; ++b) axis_[b] = lo + (b + 0.5) * dth;

        for (int iy = 0; iy < grid.n_y; ++iy)
            for (int ix = 0; ix < grid.n_x; ++ix) {
                const double t = grid.pixel_theta(ix, iy);
                if (t < lo || t > hi) continue;
                const double ph = grid.pixel_phi(ix, iy);
                const double d = std::min(circular_diff(ph, spec_.center),
                                          circular_diff(spec_.center, ph));
                if (d > spec_.halfwidth) continue;
                const std::uint32_t px = static_cast<std::uint32_t>(iy) * grid.n_x + ix;
                double x = (t - lo) / dth - 0.5;
                if (x <= 0.0) {
                    hits_.push_back({px, 0u, 1.0f});
                    pixel_coord_.push_back(t);
                    bin_weight_[0] += 1.0;
                } else if (x >= res - 1.0) {
                    hits_.push_back({px, static_cast<std::uint32_t>(res - 1), 1.0f});
                    pixel_coord_.push_back(t);
                    bin_weight_[res - 1] += 1.0;
                } else {
                    const int b0 = static_cast<int>(x);
                    const double f = x - b0;
                    hits_.push_back({px, static_cast<std::uint32_t>(b0), static_cast<float>(1.0 - f)});
                    pixel_coord_.push_back(t);
                    hits_.push_back({px, static_cast<std::uint32_t>(b0 + 1), static_cast<float>(f)});
                    pixel_coord_.push_back(t);
                    bin_weight_[b0] += 1.0 - f;
                    bin_weight_[b0 + 1] += f;
                }
            }
    }

    for (int b = 0; b < res; ++b)
        if (bin_weight_[b] <= 0.0)
            throw std::invalid_argument(
                "SliceBinning: empty bin; resolution too fine for the pixel coverage");
}

std::vector<double> SliceBinning::extract(const Frame& frame) const {
    if (static_cast<std::size_t>(frame.width) * frame.height != n_pixels_)
        throw std::invalid_argument("SliceBinning: frame does not match the grid");
    std::vector<double> out(axis_.size(), 0.0);
    for (const Hit& h : hits_) out[h.bin] += static_cast<double>(h.weight) * frame.pixels[h.pixel];
    for (std::size_t b = 0; b < out.size(); ++b) out[b] /= bin_weight_[b];
    return out;
}

std::vector<double> SliceBinning::fourier_attenuation(int l_limit) const {
    if (spec_.kind != SliceKind::azimuthal)
        throw std::invalid_argument("fourier_attenuation: azimuthal slices only");
    const int res = spec_.resolution;
    std::vector<double> att(l_limit + 1, 1.0);
    for (int l = 1; l <= l_limit; ++l) {
        std::complex<double> acc = 0.0;
        std::vector<std::complex<double>> per_bin(res, 0.0);
        for (std::size_t k = 0; k < hits_.size(); ++k) {
            const Hit& h = hits_[k];
            const double rel = pixel_coord_[k] - axis_[h.bin];
            per_bin[h.bin] += static_cast<double>(h.weight) *
                              std::complex<double>{std::cos(l * rel), std::sin(l * rel)};
        }
        for (int b = 0; b < res; ++b) acc += per_bin[b] / bin_weight_[b];
        acc /= static_cast<double>(res);
        att[l] = std::norm(acc);
    }
    return att;
}

std::vector<double> extract_slice(const Frame& frame, const PolarGrid& grid,
                                  const SliceSpec& spec) {
    return SliceBinning(grid, spec).extract(frame);
}

CovarianceAccumulator::CovarianceAccumulator(int dim) {
    if (dim < 1) throw std::invalid_argument("CovarianceAccumulator: dim must be >= 1");
    sum_x_ = Eigen::VectorXd::Zero(dim);
    sum_xx_ = Eigen::MatrixXd::Zero(dim, dim);
}

void CovarianceAccumulator::accumulate(std::span<const double> profile) {
    if (static_cast<int>(profile.size()) != dim())
        throw std::invalid_argument("CovarianceAccumulator: profile length mismatch");
    Eigen::Map<const Eigen::VectorXd> v(profile.data(), profile.size());
    sum_x_ += v;
    sum_xx_.selfadjointView<Eigen::Lower>().rankUpdate(v, 1.0);
    ++n_;
}

void CovarianceAccumulator::merge(const CovarianceAccumulator& other) {
    if (other.dim() != dim())
        throw std::invalid_argument("CovarianceAccumulator: dimension mismatch in merge");
    sum_x_ += other.sum_x_;
    sum_xx_ += other.sum_xx_;
    n_ += other.n_;
}

Eigen::MatrixXd CovarianceAccumulator::finalize() const {
    if (n_ < 2)
        throw std::runtime_error("CovarianceAccumulator: need at least 2 profiles to finalize");
    const double n = static_cast<double>(n_);
    Eigen::MatrixXd full = sum_xx_.selfadjointView<Eigen::Lower>();
    Eigen::MatrixXd cov = (full - sum_x_ * sum_x_.transpose() / n) / (n - 1.0);
    return 0.5 * (cov + cov.transpose());
}

Eigen::VectorXd CovarianceAccumulator::mean() const {
    if (n_ < 1) throw std::runtime_error("CovarianceAccumulator: empty");
    return sum_x_ / static_cast<double>(n_);
}

namespace {
constexpr char kAccMagic[4] = {'S', '1', '1', 'A'};
constexpr std::uint16_t kAccVersion = 1;
} // namespace

void CovarianceAccumulator::save(std::ostream& os) const {
    os.write(kAccMagic, 4);
    const std::uint16_t ver = kAccVersion;
    os.write(reinterpret_cast<const char*>(&ver), sizeof ver);
    const std::uint32_t d = static_cast<std::uint32_t>(dim());
    os.write(reinterpret_cast<const char*>(&d), sizeof d);
    os.write(reinterpret_cast<const char*>(&n_), sizeof n_);
    os.write(reinterpret_cast<const char*>(sum_x_.data()),
             static_cast<std::streamsize>(sizeof(double)) * dim());
    os.write(reinterpret_cast<const char*>(sum_xx_.data()),
             static_cast<std::streamsize>(sizeof(double)) * dim() * dim());
    if (!os) throw std::runtime_error("CovarianceAccumulator: checkpoint write failed");
}

CovarianceAccumulator CovarianceAccumulator::load(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kAccMagic, 4) != 0)
        throw std::runtime_error("CovarianceAccumulator: bad checkpoint magic");
    std::uint16_t ver = 0;
    is.read(reinterpret_cast<char*>(&ver), sizeof ver);
    if (!is || ver != kAccVersion)
        throw std::runtime_error("CovarianceAccumulator: unsupported checkpoint version");
    std::uint32_t d = 0;
    is.read(reinterpret_cast<char*>(&d), sizeof d);
    if (!is || d < 1) throw std::runtime_error("CovarianceAccumulator: bad checkpoint dimension");
    CovarianceAccumulator acc(static_cast<int>(d));
    is.read(reinterpret_cast<char*>(&acc.n_), sizeof acc.n_);
    is.read(reinterpret_cast<char*>(acc.sum_x_.data()),
            static_cast<std::streamsize>(sizeof(double)) * d);
    is.read(reinterpret_cast<char*>(acc.sum_xx_.data()),
            static_cast<std::streamsize>(sizeof(double)) * d * d);
    if (!is) throw std::runtime_error("CovarianceAccumulator: truncated checkpoint");
    return acc;
}

CovarianceAccumulator merge(CovarianceAccumulator a, const CovarianceAccumulator& b) {
    a.merge(b);
    return a;
}

CovarianceMatrix finalize_covariance(const CovarianceAccumulator& acc,
                                     const SliceBinning& binning) {
    CovarianceMatrix out;
    out.cov = acc.finalize();
    out.axis = binning.axis();
    out.spec = binning.spec();
    out.n_frames = acc.count();
    if (binning.spec().kind == SliceKind::azimuthal)
        out.attenuation = binning.fourier_attenuation(binning.resolution() / 2);
    return out;
}

std::vector<double> antidiagonal_average(const Eigen::MatrixXd& cov) {
    if (cov.rows() != cov.cols())
        throw std::invalid_argument("antidiagonal_average: matrix must be square");
    const int r = static_cast<int>(cov.rows());
    std::vector<double> circ(r, 0.0);
    for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k) circ[(j - k + r) % r] += cov(j, k);
    for (double& v : circ) v /= r;
    return circ;
}

CovarianceCurve antidiagonal_average(const CovarianceMatrix& cov) {
    if (cov.spec.kind != SliceKind::azimuthal)
        throw std::invalid_argument("antidiagonal_average: needs an azimuthal covariance");
    const auto circ = antidiagonal_average(cov.cov);
    const int r = static_cast<int>(circ.size());
    const double dphi = two_pi / r;

    CovarianceCurve curve;
    curve.theta0 = cov.spec.center;
    curve.n_frames = cov.n_frames;
    curve.period_bins = r;
    curve.attenuation = cov.attenuation;
    curve.delta.resize(2 * r - 1);
    curve.value.resize(2 * r - 1);
    for (int i = 0; i < 2 * r - 1; ++i) {
        const int d = i - (r - 1);
        curve.delta[i] = d * dphi;
        curve.value[i] = circ[((d % r) + r) % r];
    }
    return curve;
}

std::vector<double> CovarianceCurve::circular() const {
    const int r = period_bins;
    std::vector<double> circ(r, 0.0);
    for (int d = 0; d < r; ++d) circ[d] = value[d + r - 1];
    return circ;
}

double fwhm(std::span<const double> axis, std::span<const double> value) {
    if (axis.size() != value.size() || axis.size() < 8)
        throw std::invalid_argument("fwhm: need matching axis/value arrays of length >= 8");
    const std::size_t n = axis.size();
    const std::size_t edge = std::max<std::size_t>(1, n / 10);
    std::vector<double> outer;
    outer.reserve(2 * edge);
    for (std::size_t i = 0; i < edge; ++i) outer.push_back(value[i]);
    for (std::size_t i = n - edge; i < n; ++i) outer.push_back(value[i]);
    std::sort(outer.begin(), outer.end());
    const double baseline = outer.size() % 2 == 1
                                ? outer[outer.size() / 2]
                                : 0.5 * (outer[outer.size() / 2 - 1] + outer[outer.size() / 2]);

    std::size_t peak = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (value[i] > value[peak]) peak = i;
    const double height = value[peak] - baseline;
    if (!(height > 0.0)) throw std::runtime_error("fwhm: flat curve, width undefined");
    const double half = baseline + 0.5 * height;

    double left = axis.front();
    bool found_left = false;
    for (std::size_t i = peak; i-- > 0;) {
        if (value[i] <= half) {
            const double f = (half - value[i]) / (value[i + 1] - value[i]);
            left = axis[i] + f * (axis[i + 1] - axis[i]);
            found_left = true;
            break;
        }
    }
    double right = axis.back();
    bool found_right = false;
    for (std::size_t i = peak + 1; i < n; ++i) {
        if (value[i] <= half) {
            const double f = (value[i - 1] - half) / (value[i - 1] - value[i]);
            right = axis[i - 1] + f * (axis[i] - axis[i - 1]);
            found_right = true;
            break;
        }
    }
    if (!found_left || !found_right)
        throw std::runtime_error("fwhm: curve does not cross half maximum inside the axis");
    return right - left;
}

double fwhm(const CovarianceCurve& curve) { return fwhm(curve.delta, curve.value); }

std::vector<SiegertEstimate> siegert_check(const FrameStack& stack,
                                           std::span<const std::size_t> pixels) {
    const std::size_t n = stack.size();
    if (n < 100) throw std::invalid_argument("siegert_check: need at least 100 frames");
    std::vector<SiegertEstimate> out;
    out.reserve(pixels.size());
    for (std::size_t px : pixels) {
        double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
        for (const Frame& f : stack.frames) {
            const double v = f.pixels.at(px);
            const double v2 = v * v;
            s1 += v;
            s2 += v2;
            s3 += v2 * v;
            s4 += v2 * v2;
        }
        const double m1 = s1 / n, m2 = s2 / n, m3 = s3 / n, m4 = s4 / n;
        if (m1 == 0.0) continue;  // dark pixel, g2 undefined
        const double g2 = m2 / (m1 * m1);
        const double var_i = m2 - m1 * m1;
        const double var_i2 = m4 - m2 * m2;
        const double cov_i_i2 = m3 - m1 * m2;
        double var_g2 = (var_i2 / std::pow(m1, 4) + 4.0 * m2 * m2 * var_i / std::pow(m1, 6) -
                         4.0 * m2 * cov_i_i2 / std::pow(m1, 5)) /
                        static_cast<double>(n);
        if (var_g2 < 0.0) var_g2 = 0.0;
        out.push_back({px, g2, std::sqrt(var_g2)});
    }
    return out;
}

} // namespace su11modes
