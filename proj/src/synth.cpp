#include "su11modes/synth.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "su11modes/parallel.hpp"
#include "su11modes/rng.hpp"

namespace su11modes {

Frame::Frame(int w, int h, double pitch_, double cx, double cy)
    : width(w), height(h), pitch(pitch_), center_x(cx), center_y(cy),
      pixels(static_cast<std::size_t>(w) * h, 0.0f) {
    if (w < 1 || h < 1) throw std::invalid_argument("Frame: dimensions must be positive");
    if (!(pitch > 0.0)) throw std::invalid_argument("Frame: pitch must be positive");
}

double Frame::theta(int ix, int iy) const {
    return std::hypot((ix - center_x) * pitch, (iy - center_y) * pitch);
}

double Frame::phi(int ix, int iy) const {
    double a = std::atan2((iy - center_y) * pitch, (ix - center_x) * pitch);
    if (a < 0) a += 2.0 * M_PI;
    return a;
}

bool Frame::same_geometry(const Frame& o) const {
    return width == o.width && height == o.height && pitch == o.pitch &&
           center_x == o.center_x && center_y == o.center_y;
}

void FrameStack::push(Frame f) {
    if (!frames.empty() && !frames.front().same_geometry(f))
        throw std::invalid_argument("FrameStack: frames must share one grid");
    frames.push_back(std::move(f));
}

void NoiseModel::validate() const {
    if (electronic_sigma < 0.0)
        throw std::invalid_argument("NoiseModel: electronic_sigma must be >= 0");
    if (background < 0.0)
        throw std::invalid_argument("NoiseModel: background must be >= 0");
}

FieldSampler::FieldSampler(const SchmidtSpectrum& output, const ModeBasis& basis,
                           const PolarGrid& grid, BeamSelection selection)
    : grid_(grid), selection_(selection) {
    if (output.kind() != SpectrumKind::output_lambda)
        throw std::invalid_argument("FieldSampler: spectrum must be output-kind");
    if (!grid.has_cartesian())
        throw std::invalid_argument("FieldSampler: grid carries no camera geometry");

    for (const auto& [m, w] : output.weights()) {
        if (w <= 0.0) continue;
        if (!basis.contains(m)) {
            std::ostringstream msg;
            msg << "FieldSampler: mode (l=" << m.l << ", p=" << m.p
                << ") has weight but is missing from the basis";
            throw std::invalid_argument(msg.str());
        }
        modes_.push_back(m);
        amplitudes_.push_back(std::sqrt(w));
    }
    if (modes_.empty())
        throw std::invalid_argument("FieldSampler: spectrum has no positive weights");

    const std::size_t n_px = static_cast<std::size_t>(grid.n_x) * grid.n_y;
    const std::size_t n_md = modes_.size();
    signal_modes_.resize(n_px, n_md);
    if (selection_ == BeamSelection::twin) idler_modes_.resize(n_px, n_md);

    for (int iy = 0; iy < grid.n_y; ++iy)
        for (int ix = 0; ix < grid.n_x; ++ix) {
            const std::size_t px = static_cast<std::size_t>(iy) * grid.n_x + ix;
            const double t = grid.pixel_theta(ix, iy);
            const double ph = grid.pixel_phi(ix, iy);
            for (std::size_t k = 0; k < n_md; ++k) {
                const ModeIndex m = modes_[k];
                signal_modes_(px, k) = amplitudes_[k] * basis.mode_value(m, t, ph);
                if (selection_ == BeamSelection::twin)
                    idler_modes_(px, k) =
                        amplitudes_[k] * basis.mode_value({-m.l, m.p}, t, ph);
            }
        }
}

Frame FieldSampler::sample(std::uint64_t seed, std::uint64_t frame_index) const {
    const std::size_t n_md = modes_.size();
    Eigen::VectorXcd c(n_md);
    for (std::size_t k = 0; k < n_md; ++k)
        c(k) = rng_circular_gaussian(seed, frame_index, k);

    Frame f(grid_.n_x, grid_.n_y, grid_.pitch, grid_.center_x, grid_.center_y);
    const Eigen::VectorXcd e_s = signal_modes_ * c;
    if (selection_ == BeamSelection::signal_only) {
        for (std::size_t px = 0; px < f.pixels.size(); ++px)
            f.pixels[px] = static_cast<float>(std::norm(e_s(px)));
    } else {
        const Eigen::VectorXcd e_i = idler_modes_ * c.conjugate();
        for (std::size_t px = 0; px < f.pixels.size(); ++px)
            f.pixels[px] = static_cast<float>(std::norm(e_s(px)) + std::norm(e_i(px)));
    }
    return f;
}

Frame sample_signal_frame(const SchmidtSpectrum& output, const ModeBasis& basis,
                          const PolarGrid& grid, std::uint64_t seed,
                          std::uint64_t frame_index) {
    return FieldSampler(output, basis, grid, BeamSelection::signal_only)
        .sample(seed, frame_index);
}

Frame sample_twin_frame(const SchmidtSpectrum& output, const ModeBasis& basis,
                        const PolarGrid& grid, std::uint64_t seed,
                        std::uint64_t frame_index) {
    return FieldSampler(output, basis, grid, BeamSelection::twin)
        .sample(seed, frame_index);
}

Frame add_noise(const Frame& frame, const NoiseModel& noise, std::uint64_t seed,
                std::uint64_t frame_index) {
    noise.validate();
    if (!noise.enabled) return frame;
    Frame out = frame;
    // separate key domain from the field sampler
    const std::uint64_t noise_seed = rng_mix(seed ^ 0x6E6F697365ull);
    for (std::size_t px = 0; px < out.pixels.size(); ++px) {
        double v = out.pixels[px] + noise.background;
        if (noise.electronic_sigma > 0.0)
            v += noise.electronic_sigma * rng_gaussian(noise_seed, frame_index, px);
        out.pixels[px] = static_cast<float>(v > 0.0 ? v : 0.0);
    }
    return out;
}

FrameStack simulate_stack(const SchmidtSpectrum& output, const ModeBasis& basis,
                          const PolarGrid& grid, BeamSelection selection, int n_frames,
                          std::uint64_t seed, const NoiseModel& noise) {
    if (n_frames < 1) throw std::invalid_argument("simulate_stack: n_frames must be >= 1");
    noise.validate();

    FieldSampler sampler(output, basis, grid, selection);
    FrameStack stack;
    stack.seed = seed;
    {
        std::ostringstream src;
        src << "synthetic(seed=" << seed << ", frames=" << n_frames << ", beams="
            << (selection == BeamSelection::twin ? "twin" : "signal") << ")";
        stack.source = src.str();
    }
    stack.frames.resize(n_frames);
    parallel_for_chunks(static_cast<std::size_t>(n_frames),
                        [&](std::size_t begin, std::size_t end, unsigned) {
                            for (std::size_t i = begin; i < end; ++i) {
                                Frame f = sampler.sample(seed, i);
                                if (noise.enabled) f = add_noise(f, noise, seed, i);
                                stack.frames[i] = std::move(f);
                            }
                        });
    return stack;
}

} // namespace su11modes
