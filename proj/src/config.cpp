#include "su11modes/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace su11modes {

namespace {

using nlohmann::json;

ConfigError make_error(std::vector<std::string> issues) { return ConfigError(std::move(issues)); }

class BlockReader {
  public:
    BlockReader(const json& j, std::string prefix, std::vector<std::string>& issues)
        : j_(j), prefix_(std::move(prefix)), issues_(issues) {}

    template <typename T>
    void read(const char* key, T& out) {
        seen_.push_back(key);
        auto it = j_.find(key);
        if (it == j_.end()) return;
        try {
            out = it->get<T>();
        } catch (const json::exception&) {
            issues_.push_back(prefix_ + key + ": wrong type");
        }
    }

    void finish() {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            bool known = false;
            for (const char* k : seen_)
                if (it.key() == k) known = true;
            if (!known) issues_.push_back(prefix_ + it.key() + ": unknown key");
        }
    }

  private:
    const json& j_;
    std::string prefix_;
    std::vector<std::string>& issues_;
    std::vector<const char*> seen_;
};

const json* block(const json& root, const char* name, std::vector<std::string>& issues) {
    auto it = root.find(name);
    if (it == root.end()) return nullptr;
    if (!it->is_object()) {
        issues.push_back(std::string(name) + ": must be an object");
        return nullptr;
    }
    return &*it;
}

void check_physics(const RunConfig& c, std::vector<std::string>& issues) {
    const auto& s = c.source;
    if (!(s.mu > 0.0 && s.mu < 1.0)) issues.push_back("source.mu: must lie in (0, 1)");
    if (!(s.waist > 0.0)) issues.push_back("source.waist_rad: must be positive");
    if (s.nx < 8 || s.ny < 8) issues.push_back("source.grid_nx/grid_ny: must be >= 8");
    if (!(s.pitch > 0.0)) issues.push_back("source.pitch_rad: must be positive");
    if (s.n_theta < 2) issues.push_back("source.n_theta: must be >= 2");
    if (s.n_phi < 4) issues.push_back("source.n_phi: must be >= 4");
    const double theta_max = 0.5 * std::min(s.nx, s.ny) * s.pitch;
    if (s.waist > 0 && s.pitch > 0 && s.n_theta >= 2 &&
        s.waist / (theta_max / s.n_theta) < 8.0)
        issues.push_back("source: n_theta does not resolve the waist (need >= 8 bins across it)");
    if (c.interferometer.g1 < 0.0) issues.push_back("interferometer.g1: must be >= 0");
    if (c.interferometer.g2 < 0.0) issues.push_back("interferometer.g2: must be >= 0");
    if (c.synthesis.frames < 1) issues.push_back("synthesis.frames: must be >= 1");
    if (c.synthesis.noise_sigma < 0.0) issues.push_back("synthesis.noise_sigma: must be >= 0");
    if (c.synthesis.noise_background < 0.0)
        issues.push_back("synthesis.noise_background: must be >= 0");
    if (!(c.analysis.azimuthal_halfwidth > 0.0))
        issues.push_back("analysis.azimuthal_halfwidth_rad: must be positive");
    if (c.analysis.azimuthal_bins < 8) issues.push_back("analysis.azimuthal_bins: must be >= 8");
    if (!(c.analysis.radial_phi_halfwidth > 0.0))
        issues.push_back("analysis.radial_phi_halfwidth_rad: must be positive");
    if (c.analysis.radial_bins < 8) issues.push_back("analysis.radial_bins: must be >= 8");
    if (c.analysis.phase_sweep_points < 1)
        issues.push_back("analysis.phase_sweep_points: must be >= 1");
    for (double t : c.analysis.theta0_list)
        if (!(t > 0.0)) issues.push_back("analysis.theta0_list_rad: entries must be positive");
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> list)
    : std::runtime_error([&list] {
          std::ostringstream os;
          os << "invalid configuration (" << list.size() << " issue"
             << (list.size() == 1 ? "" : "s") << "):";
          for (const auto& s : list) os << "\n  - " << s;
          return os.str();
      }()),
      issues(std::move(list)) {}

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw make_error({std::string("not valid JSON: ") + e.what()});
    }
    if (!root.is_object()) throw make_error({"top level must be an object"});

    std::vector<std::string> issues;
    RunConfig cfg;

    static const char* known_blocks[] = {"source", "interferometer", "synthesis", "analysis",
                                         "output"};
    for (auto it = root.begin(); it != root.end(); ++it) {
        bool known = false;
        for (const char* k : known_blocks)
            if (it.key() == k) known = true;
        if (!known) issues.push_back(it.key() + ": unknown block");
    }

    if (const json* b = block(root, "source", issues)) {
        BlockReader r(*b, "source.", issues);
        r.read("mu", cfg.source.mu);
        r.read("waist_rad", cfg.source.waist);
        r.read("l_max", cfg.source.l_max);
        r.read("p_max", cfg.source.p_max);
        r.read("grid_nx", cfg.source.nx);
        r.read("grid_ny", cfg.source.ny);
        r.read("pitch_rad", cfg.source.pitch);
        r.read("n_theta", cfg.source.n_theta);
        r.read("n_phi", cfg.source.n_phi);
        r.read("shared_radial_profiles", cfg.source.shared_radial_profiles);
        r.finish();
    }
    if (const json* b = block(root, "interferometer", issues)) {
        BlockReader r(*b, "interferometer.", issues);
        r.read("g1", cfg.interferometer.g1);
        r.read("g2", cfg.interferometer.g2);
        r.read("phi_rad", cfg.interferometer.phi);
        r.finish();
    }
    if (const json* b = block(root, "synthesis", issues)) {
        BlockReader r(*b, "synthesis.", issues);
        r.read("frames", cfg.synthesis.frames);
        r.read("seed", cfg.synthesis.seed);
        r.read("twin", cfg.synthesis.twin);
        r.read("noise_enabled", cfg.synthesis.noise_enabled);
        r.read("noise_sigma", cfg.synthesis.noise_sigma);
        r.read("noise_background", cfg.synthesis.noise_background);
        r.finish();
    }
    if (const json* b = block(root, "analysis", issues)) {
        BlockReader r(*b, "analysis.", issues);
        r.read("azimuthal_halfwidth_rad", cfg.analysis.azimuthal_halfwidth);
        r.read("azimuthal_bins", cfg.analysis.azimuthal_bins);
        r.read("theta0_list_rad", cfg.analysis.theta0_list);
        r.read("radial_phi_center_rad", cfg.analysis.radial_phi_center);
        r.read("radial_phi_halfwidth_rad", cfg.analysis.radial_phi_halfwidth);
        r.read("radial_bins", cfg.analysis.radial_bins);
        r.read("phase_sweep_points", cfg.analysis.phase_sweep_points);
        r.read("weight_floor", cfg.analysis.weight_floor);
        r.read("verify_weight_tolerance", cfg.analysis.verify_weight_tolerance);
        r.read("verify_count_tolerance", cfg.analysis.verify_count_tolerance);
        r.finish();
    }
    if (const json* b = block(root, "output", issues)) {
        BlockReader r(*b, "output.", issues);
        std::string dir, format, stack;
        r.read("dir", dir);
        r.read("format", format);
        r.read("stack_path", stack);
        r.finish();
        if (!dir.empty()) cfg.output.dir = dir;
        if (!stack.empty()) cfg.output.stack_path = stack;
        if (!format.empty()) {
            if (format == "csv")
                cfg.output.format = OutputFormat::csv;
            else if (format == "svg")
                cfg.output.format = OutputFormat::svg;
            else if (format == "both")
                cfg.output.format = OutputFormat::both;
            else
                issues.push_back("output.format: must be csv, svg or both");
        }
    }

    check_physics(cfg, issues);
    if (!issues.empty()) throw make_error(std::move(issues));
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw make_error({"cannot open config file: " + path.string()});
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_config(buf.str());
}

} // namespace su11modes
