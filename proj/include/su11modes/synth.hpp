#ifndef SU11MODES_SYNTH_HPP
#define SU11MODES_SYNTH_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "su11modes/model.hpp"

namespace su11modes {

// Single-shot far-field intensity image on the camera grid. Pixel values
// are stored as 32-bit floats; statistics accumulate in 64-bit.
struct Frame {
    int width = 0;
    int height = 0;
    double pitch = 0.0;   // rad per pixel
    double center_x = 0.0;
    double center_y = 0.0;
    std::vector<float> pixels;  // row-major, height rows of width

    Frame() = default;
    Frame(int w, int h, double pitch, double cx, double cy);

    float& at(int ix, int iy) { return pixels[static_cast<std::size_t>(iy) * width + ix]; }
    float at(int ix, int iy) const { return pixels[static_cast<std::size_t>(iy) * width + ix]; }
    double theta(int ix, int iy) const;
    double phi(int ix, int iy) const;
    bool same_geometry(const Frame& o) const;
};

struct FrameStack {
    std::vector<Frame> frames;
    std::uint64_t seed = 0;
    std::string source;  // generation parameters or ingestion path

    void push(Frame f);
    std::size_t size() const { return frames.size(); }
    const Frame& operator[](std::size_t i) const { return frames[i]; }
};

// Camera imperfections: constant background plus additive Gaussian noise,
// clamped at zero.
struct NoiseModel {
    bool enabled = false;
    double electronic_sigma = 0.0;  // intensity units per pixel
    double background = 0.0;

    void validate() const;
};

enum class BeamSelection {
    signal_only,  // filtered single beam, per-mode thermal statistics
    twin,         // both beams on the camera
};

// Precomputed sampler: draws per-mode circular complex Gaussian amplitudes
// c_lp keyed by (seed, frame, mode) and evaluates
//   E_s = sum_lp c_lp sqrt(Lambda_lp) u_lp(theta) e^{il phi} / sqrt(theta)
// per pixel. Signal-only frames are |E_s|^2. Twin frames add the idler beam
// E_i built from conj(c_lp) on modes v_lp e^{-il phi}/sqrt(theta); the two
// beams are spectrally distinct, so the camera records |E_s|^2 + |E_i|^2.
class FieldSampler {
  public:
    FieldSampler(const SchmidtSpectrum& output, const ModeBasis& basis,
                 const PolarGrid& grid, BeamSelection selection);

    Frame sample(std::uint64_t seed, std::uint64_t frame_index) const;
    std::size_t mode_count() const { return modes_.size(); }

  private:
    PolarGrid grid_;
    BeamSelection selection_;
    std::vector<ModeIndex> modes_;
    std::vector<double> amplitudes_;          // sqrt(Lambda_lp)
    Eigen::MatrixXcd signal_modes_;           // n_pixels x n_modes
    Eigen::MatrixXcd idler_modes_;            // filled for twin selection
};

Frame sample_signal_frame(const SchmidtSpectrum& output, const ModeBasis& basis,
                          const PolarGrid& grid, std::uint64_t seed,
                          std::uint64_t frame_index = 0);

Frame sample_twin_frame(const SchmidtSpectrum& output, const ModeBasis& basis,
                        const PolarGrid& grid, std::uint64_t seed,
                        std::uint64_t frame_index = 0);

Frame add_noise(const Frame& frame, const NoiseModel& noise, std::uint64_t seed,
                std::uint64_t frame_index = 0);

// n_frames synthetic frames, parallel over frames, deterministic for a
// fixed seed regardless of thread count.
FrameStack simulate_stack(const SchmidtSpectrum& output, const ModeBasis& basis,
                          const PolarGrid& grid, BeamSelection selection, int n_frames,
                          std::uint64_t seed, const NoiseModel& noise = {});

} // namespace su11modes

#endif
