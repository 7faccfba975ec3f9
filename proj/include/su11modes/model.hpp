#ifndef SU11MODES_MODEL_HPP
#define SU11MODES_MODEL_HPP

#include <compare>
#include <complex>
#include <map>
#include <vector>

namespace su11modes {

// Polar analysis grid plus the Cartesian camera grid frames live on.
// Angles are radial angles theta = q/k in rad; phi is the azimuth in
// [0, 2pi). All pixel-to-angle conversion goes through pitch (rad/pixel).
struct PolarGrid {
    double theta_min = 0.0;
    double theta_max = 0.0;
    int n_theta = 0;
    int n_phi = 0;

    // Cartesian source grid (set when frames arrive as camera images).
    int n_x = 0;
    int n_y = 0;
    double pitch = 0.0;      // rad per pixel
    double center_x = 0.0;   // pixel coordinates of the optical axis
    double center_y = 0.0;

    PolarGrid(double theta_min, double theta_max, int n_theta, int n_phi);
    PolarGrid(double theta_min, double theta_max, int n_theta, int n_phi,
              int n_x, int n_y, double pitch);

    double theta_bin_width() const { return (theta_max - theta_min) / n_theta; }
    double theta_center(int i) const { return theta_min + (i + 0.5) * theta_bin_width(); }
    // Regularization floor for the 1/sqrt(theta) coordinate factor; pixels
    // inside the floor are excluded from analysis regions.
    double theta_floor() const { return theta_min + 0.5 * theta_bin_width(); }

    bool has_cartesian() const { return n_x > 0 && n_y > 0; }
    double pixel_x(int ix) const { return (ix - center_x) * pitch; }
    double pixel_y(int iy) const { return (iy - center_y) * pitch; }
    double pixel_theta(int ix, int iy) const;
    double pixel_phi(int ix, int iy) const;  // in [0, 2pi)
};

struct ModeIndex {
    int l = 0;  // azimuthal (OAM) charge, may be negative
    int p = 0;  // radial index, >= 0
    auto operator<=>(const ModeIndex&) const = default;
};

enum class SpectrumKind {
    input_lambda,   // normalized Schmidt eigenvalues, sum = 1
    output_lambda,  // per-mode photon numbers, unnormalized
};

// Map from (l, p) to a nonnegative weight. Input-kind spectra must be
// normalized to 1 within 1e-12.
class SchmidtSpectrum {
  public:
    SchmidtSpectrum(SpectrumKind kind, std::map<ModeIndex, double> weights);

    SpectrumKind kind() const { return kind_; }
    const std::map<ModeIndex, double>& weights() const { return weights_; }
    double at(ModeIndex m) const;
    double sum() const { return sum_; }
    std::size_t size() const { return weights_.size(); }

    // Participation ratio 1/sum(normalized weights^2).
    double schmidt_number() const;

    // Weights summed over p (per OAM charge) or over l (per radial index).
    std::map<int, double> sum_over_p() const;
    std::map<int, double> sum_over_l() const;

  private:
    SpectrumKind kind_;
    std::map<ModeIndex, double> weights_;
    double sum_ = 0.0;
};

// Geometric eigenvalue law lambda_lp ~ mu^(2p+|l|), normalized to 1,
// over l in [-l_max, l_max], p in [0, p_max]. Requires 0 < mu < 1.
SchmidtSpectrum geometric_spectrum(double mu, int l_max, int p_max);

// Smallest truncation (l_max, p_max) whose discarded geometric tail is
// below `tail` of the total weight.
std::pair<int, int> suggested_truncation(double mu, double tail = 1e-6);

// Laguerre-Gauss radial profiles u_lp(theta) sampled on the grid's theta
// bins and re-orthonormalized so that sum_j u_lp u_lp' dtheta = delta_pp'
// holds on the grid. The matching 2D mode is u_lp(theta) e^{il phi}/sqrt(theta).
class ModeBasis {
  public:
    ModeBasis(PolarGrid grid, double waist, int l_max, int p_max,
              std::vector<std::vector<std::vector<double>>> profiles);

    const PolarGrid& grid() const { return grid_; }
    double waist() const { return waist_; }
    int l_max() const { return l_max_; }
    int p_max() const { return p_max_; }
    bool contains(ModeIndex m) const;

    // Sampled profile for mode (l, p); profiles depend on |l|.
    const std::vector<double>& profile(ModeIndex m) const;

    // Profile value at arbitrary theta: linear interpolation between bin
    // centers, anchored to 0 at theta = 0, zero outside the grid.
    double value(ModeIndex m, double theta) const;

    // Full 2D mode u_lp(theta) e^{il phi}/sqrt(theta) with the floor
    // regularization applied to the square root.
    std::complex<double> mode_value(ModeIndex m, double theta, double phi) const;

    // Copy of this basis with every l sharing the l = 0 radial profiles
    // (the "radial modes do not depend on l" degenerate variant).
    ModeBasis with_shared_radial_profiles() const;

  private:
    PolarGrid grid_;
    double waist_;
    int l_max_;
    int p_max_;
    // profiles_[|l|][p] -> n_theta samples
    std::vector<std::vector<std::vector<double>>> profiles_;
};

ModeBasis build_lg_basis(const PolarGrid& grid, double waist, int l_max, int p_max);

struct AngularPoint {
    double theta = 0.0;
    double phi = 0.0;
};

// Two-photon amplitude
//   F = sum_lp sqrt(lambda_lp) u_lp(t_s)/sqrt(t_s) e^{il phi_s}
//                              u_lp(t_i)/sqrt(t_i) e^{-il phi_i}.
// Requires an input-kind spectrum and both angles inside the grid range.
std::complex<double> evaluate_tpa(const SchmidtSpectrum& spectrum, const ModeBasis& basis,
                                  AngularPoint qs, AngularPoint qi);

} // namespace su11modes

#endif
