#ifndef SU11MODES_RECON_HPP
#define SU11MODES_RECON_HPP

#include <map>
#include <stdexcept>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "su11modes/stats.hpp"

namespace su11modes {

// Raised when the Fourier coefficients of sqrt(covariance) carry an
// imaginary part above tolerance: the source is asymmetric or the slice
// is misaligned.
struct AsymmetryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// OAM weight distribution; context is either one radial angle theta0 or
// the radial average.
struct OamSpectrum {
    std::map<int, double> weights;
    double theta0 = 0.0;
    bool radially_averaged = false;
    bool normalized = false;

    OamSpectrum& normalize();
    double mode_count() const;
};

// Circular Fourier coefficients of sqrt(curve) over one 2pi period.
// Negative covariance entries are clamped to zero before the square root;
// the known binning attenuation carried by the curve is divided out.
OamSpectrum oam_spectrum_at(const CovarianceCurve& curve);

// Radially averaged weights Lambda_l: theta0-weighted trapezoidal
// integral of the per-slice coefficients (up to a common positive scale).
OamSpectrum oam_spectrum_avg(const std::vector<CovarianceCurve>& curves);

// Radial Schmidt modes from the square root of a radial-slice covariance.
// shapes.col(p) is u_p(theta) on the slice bins, unit-normalized, with the
// largest-magnitude sample positive; weights are descending and >= 0.
struct RadialModeSet {
    Eigen::MatrixXd shapes;       // n_bins x n_modes
    std::vector<double> weights;  // descending
    std::vector<double> axis;     // theta bin centers
};

RadialModeSet radial_modes(const CovarianceMatrix& cov);

// Participation ratio 1/sum(w/sum(w))^2.
double mode_count(std::span<const double> weights);
double mode_count(const std::map<int, double>& weights);

struct ModeCountReport {
    std::vector<std::pair<double, double>> azimuthal_per_theta0;  // (theta0, count)
    double azimuthal_avg = 0.0;
    double radial = 0.0;
    double total = 0.0;
};

ModeCountReport total_mode_count(double azimuthal_avg_count, double radial_count,
                                 std::vector<std::pair<double, double>> per_theta0 = {});

} // namespace su11modes

#endif
