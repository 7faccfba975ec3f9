#ifndef SU11MODES_SU11_HPP
#define SU11MODES_SU11_HPP

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "su11modes/model.hpp"

namespace su11modes {

// Two-amplifier SU(1,1) interferometer: parametric gains G1, G2 and
// pump phase Phi (stored reduced to [0, 2pi)).
struct InterferometerConfig {
    double g1 = 0.0;
    double g2 = 0.0;
    double phi = 0.0;

    InterferometerConfig(double g1, double g2, double phi);
};

// Per-mode Bogoliubov coefficients of the combined two-pass evolution:
//   w1 = cosh(r G1) cosh(r G2) + e^{i Phi} sinh(r G1) sinh(r G2)
//   w2 = sinh(r G1) cosh(r G2) + e^{i Phi} cosh(r G1) sinh(r G2)
// with r = sqrt(lambda_lp). Satisfies |w1|^2 - |w2|^2 = 1 per mode.
struct EffectiveWeights {
    struct Entry {
        std::complex<double> w1;
        std::complex<double> w2;
    };
    std::map<ModeIndex, Entry> modes;
};

EffectiveWeights effective_weights(const InterferometerConfig& cfg,
                                   const SchmidtSpectrum& spectrum);

// Output Schmidt eigenvalues Lambda_lp = |w2|^2 (photon numbers per mode).
SchmidtSpectrum output_spectrum(const InterferometerConfig& cfg,
                                const SchmidtSpectrum& spectrum);

// High-gain approximation
//   Lambda_lp ~ 1/4 sinh^2(sqrt(lambda)(G1+G2)) |1 + e^{i Phi}|^2.
SchmidtSpectrum high_gain_approx(const InterferometerConfig& cfg,
                                 const SchmidtSpectrum& spectrum);

// Both sides of the validity condition
//   sinh(sqrt(lambda)(G1+G2)) |1+e^{i Phi}|  >>  sinh(sqrt(lambda)|G1-G2|),
// with ">>" read as lhs >= ratio_threshold * rhs.
struct ValidityReport {
    double lhs = 0.0;
    double rhs = 0.0;
    bool valid = false;
};

ValidityReport approx_validity(const InterferometerConfig& cfg, double lambda,
                               double ratio_threshold = 10.0);

// Mean signal photon number per plane-wave mode at radial angle theta:
//   <N_s(theta)> = sum_lp |w2|^2 |u_lp(theta)|^2 / theta.
double mean_photons_vs_angle(const InterferometerConfig& cfg, const SchmidtSpectrum& spectrum,
                             const ModeBasis& basis, double theta);

// Total mean signal photon number sum_lp |w2|^2.
double total_photons(const InterferometerConfig& cfg, const SchmidtSpectrum& spectrum);

// total_photons evaluated on a uniform phase grid over [0, 2pi).
std::vector<std::pair<double, double>> phase_sweep(double g1, double g2, int n_phases,
                                                   const SchmidtSpectrum& spectrum);

} // namespace su11modes

#endif
