#ifndef SU11MODES_CONFIG_HPP
#define SU11MODES_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace su11modes {

// Collects every violated field before failing.
struct ConfigError : std::runtime_error {
    std::vector<std::string> issues;
    explicit ConfigError(std::vector<std::string> list);
};

enum class OutputFormat { csv, svg, both };

struct SourceConfig {
    double mu = 0.675;
    double waist = 0.004;  // rad
    int l_max = 16;        // <= 0 selects the geometric-tail rule
    int p_max = 8;
    int nx = 64;
    int ny = 64;
    double pitch = 0.0005;  // rad per pixel
    int n_theta = 512;
    int n_phi = 128;
    bool shared_radial_profiles = false;
};

struct InterferometerBlock {
    double g1 = 2.1;
    double g2 = 3.3;
    double phi = 3.82;
};

struct SynthesisConfig {
    int frames = 500;
    std::uint64_t seed = 1;
    bool twin = false;
    bool noise_enabled = false;
    double noise_sigma = 0.0;
    double noise_background = 0.0;
};

struct AnalysisConfig {
    double azimuthal_halfwidth = 0.0011;  // rad
    int azimuthal_bins = 128;
    std::vector<double> theta0_list;      // empty: contiguous coverage over the beam
    double radial_phi_center = 0.0;
    double radial_phi_halfwidth = 0.08;   // rad
    int radial_bins = 48;
    int phase_sweep_points = 64;
    double weight_floor = 0.01;           // fraction of the peak weight reported/compared
    double verify_weight_tolerance = 0.05;
    double verify_count_tolerance = 0.10;
};

struct OutputConfig {
    std::filesystem::path dir = "out";
    OutputFormat format = OutputFormat::csv;
    std::filesystem::path stack_path;  // optional FSTK input for analysis commands
};

struct RunConfig {
    SourceConfig source;
    InterferometerBlock interferometer;
    SynthesisConfig synthesis;
    AnalysisConfig analysis;
    OutputConfig output;
};

RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& json_text);

} // namespace su11modes

#endif
