#ifndef SU11MODES_REPORT_HPP
#define SU11MODES_REPORT_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "su11modes/model.hpp"
#include "su11modes/recon.hpp"
#include "su11modes/stats.hpp"

namespace su11modes {

// Deterministic number formatting shared by every emitter ("%.10g").
std::string format_number(double v);

void write_spectrum_csv(const SchmidtSpectrum& s, const std::filesystem::path& path);
void write_oam_csv(const OamSpectrum& s, const std::filesystem::path& path);
void write_sweep_csv(const std::vector<std::pair<double, double>>& sweep,
                     const std::filesystem::path& path);
void write_curve_csv(const std::vector<CovarianceCurve>& curves,
                     const std::filesystem::path& path);
void write_matrix_csv(const CovarianceMatrix& m, const std::filesystem::path& path);
void write_radial_modes_csv(const RadialModeSet& modes, int max_modes,
                            const std::filesystem::path& path);

struct FwhmRow {
    double theta0 = 0.0;
    double width = 0.0;
    double speckle = 0.0;  // width * theta0
    double oam_count = 0.0;
};
void write_fwhm_csv(const std::vector<FwhmRow>& rows, const std::filesystem::path& path);

// Minimal SVG line plot: polylines, axes, tick labels, series legend.
class SvgPlot {
  public:
    SvgPlot(std::string title, std::string xlabel, std::string ylabel);
    void add_series(std::vector<double> x, std::vector<double> y, std::string label);
    void write(const std::filesystem::path& path) const;

  private:
    std::string title_, xlabel_, ylabel_;
    struct Series {
        std::vector<double> x, y;
        std::string label;
    };
    std::vector<Series> series_;
};

} // namespace su11modes

#endif
