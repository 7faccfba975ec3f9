#ifndef SU11MODES_STATS_HPP
#define SU11MODES_STATS_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "su11modes/model.hpp"
#include "su11modes/synth.hpp"

namespace su11modes {

enum class SliceKind {
    azimuthal,  // I(phi) at fixed theta0, integrated over +-halfwidth in theta
    radial,     // I(theta) at fixed phi0, integrated over +-halfwidth in phi
};

struct SliceSpec {
    SliceKind kind = SliceKind::azimuthal;
    double center = 0.0;     // theta0 (azimuthal) or phi0 (radial), rad
    double halfwidth = 0.0;  // integration half-range, rad
    int resolution = 0;      // number of 1D bins

    void validate() const;
};

// Fixed pixel-to-bin assignment for one grid + slice. Each pixel's exact
// (theta, phi) is split linearly between the two adjacent bins along the
// slice axis (hard window across it); bin values are weight-normalized.
class SliceBinning {
  public:
    SliceBinning(const PolarGrid& grid, const SliceSpec& spec);

    std::vector<double> extract(const Frame& frame) const;
    const std::vector<double>& axis() const { return axis_; }
    const SliceSpec& spec() const { return spec_; }
    int resolution() const { return spec_.resolution; }

    // Squared magnitude of the mean per-bin phase window, |W(l)|^2, for
    // l = 0..l_limit. This is the exact attenuation the finite azimuthal
    // binning applies to harmonic l of the field correlation.
    std::vector<double> fourier_attenuation(int l_limit) const;

  private:
    struct Hit {
        std::uint32_t pixel;
        std::uint32_t bin;
        float weight;
    };
    SliceSpec spec_;
    std::vector<double> axis_;
    std::vector<Hit> hits_;
    std::vector<double> bin_weight_;
    std::vector<double> pixel_coord_;  // slice-axis coordinate per hit (for attenuation)
    std::size_t n_pixels_ = 0;
};

std::vector<double> extract_slice(const Frame& frame, const PolarGrid& grid,
                                  const SliceSpec& spec);

// Mergeable running sums for the sample covariance of 1D profiles.
// Finalization uses the unbiased 1/(n-1) normalization.
class CovarianceAccumulator {
  public:
    explicit CovarianceAccumulator(int dim);

    void accumulate(std::span<const double> profile);
    void merge(const CovarianceAccumulator& other);
    Eigen::MatrixXd finalize() const;  // throws when fewer than 2 profiles seen
    Eigen::VectorXd mean() const;

    int dim() const { return static_cast<int>(sum_x_.size()); }
    std::int64_t count() const { return n_; }

    // Resumable binary checkpoint (versioned header).
    void save(std::ostream& os) const;
    static CovarianceAccumulator load(std::istream& is);

  private:
    std::int64_t n_ = 0;
    Eigen::VectorXd sum_x_;
    Eigen::MatrixXd sum_xx_;  // lower triangle maintained
};

CovarianceAccumulator merge(CovarianceAccumulator a, const CovarianceAccumulator& b);

// Finalized covariance with its slice provenance.
struct CovarianceMatrix {
    Eigen::MatrixXd cov;
    std::vector<double> axis;
    SliceSpec spec;
    std::int64_t n_frames = 0;
    std::vector<double> attenuation;  // azimuthal kind only; may be empty
};

CovarianceMatrix finalize_covariance(const CovarianceAccumulator& acc,
                                     const SliceBinning& binning);

// Azimuthal covariance averaged along phi + phi'; values are a function of
// the circular difference dphi, reported over (-2pi, 2pi) as 2R-1 samples
// (the two halves repeat with period 2pi).
struct CovarianceCurve {
    std::vector<double> delta;
    std::vector<double> value;
    double theta0 = 0.0;
    std::int64_t n_frames = 0;
    int period_bins = 0;
    std::vector<double> attenuation;

    // one period of the circular averages, d = 0..R-1
    std::vector<double> circular() const;
};

std::vector<double> antidiagonal_average(const Eigen::MatrixXd& cov);
CovarianceCurve antidiagonal_average(const CovarianceMatrix& cov);

// Full width at half of (max - baseline); baseline is the median of the
// outer 20% of the axis, crossings are linearly interpolated.
double fwhm(std::span<const double> axis, std::span<const double> value);
double fwhm(const CovarianceCurve& curve);

struct SiegertEstimate {
    std::size_t pixel = 0;
    double g2 = 0.0;
    double stderr_ = 0.0;
};

// Per-pixel g2 = <I^2>/<I>^2 with a delta-method standard error.
// Requires at least 100 frames; zero-mean pixels are dropped.
std::vector<SiegertEstimate> siegert_check(const FrameStack& stack,
                                           std::span<const std::size_t> pixels);

} // namespace su11modes

#endif
