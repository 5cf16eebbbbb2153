#include "fir/svg.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace fir {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 56.0;

struct AxisMap {
  double lo, hi;
  double to(double v, double pixel_lo, double pixel_hi) const {
    const double t = (v - lo) / (hi - lo);
    return pixel_lo + t * (pixel_hi - pixel_lo);
  }
};

AxisMap axis_for(const Vector& values, double cutoff) {
  double hi = std::max(values.maxCoeff(), cutoff) * 1.08;
  if (hi <= 0.0) hi = 1.0;
  return AxisMap{0.0, hi};
}

}  // namespace

void write_outlier_map_svg(const std::string& path, const Vector& sd, const Vector& od,
                           double cutoff_sd, double cutoff_od,
                           const std::vector<bool>& flags) {
  if (sd.size() != od.size() || static_cast<std::size_t>(sd.size()) != flags.size()) {
    throw std::invalid_argument("write_outlier_map_svg: length mismatch");
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open file for writing");

  const AxisMap xm = axis_for(sd, cutoff_sd);
  const AxisMap ym = axis_for(od, cutoff_od);
  const double x0 = kMargin, x1 = kWidth - 16.0;
  const double y0 = kHeight - kMargin, y1 = 16.0;  // svg y grows downward

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x1 << "\" y2=\"" << y0
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y1
      << "\" stroke=\"black\"/>\n";

  const double cx = xm.to(cutoff_sd, x0, x1);
  out << "<line x1=\"" << cx << "\" y1=\"" << y0 << "\" x2=\"" << cx << "\" y2=\"" << y1
      << "\" stroke=\"red\" stroke-dasharray=\"6 4\"/>\n";
  const double cy = ym.to(cutoff_od, y0, y1);
  out << "<line x1=\"" << x0 << "\" y1=\"" << cy << "\" x2=\"" << x1 << "\" y2=\"" << cy
      << "\" stroke=\"red\" stroke-dasharray=\"6 4\"/>\n";

  for (Index i = 0; i < sd.size(); ++i) {
    const bool flagged = flags[static_cast<std::size_t>(i)];
    out << "<circle cx=\"" << xm.to(sd(i), x0, x1) << "\" cy=\"" << ym.to(od(i), y0, y1)
        << "\" r=\"3\" fill=\"" << (flagged ? "crimson" : "steelblue")
        << "\" fill-opacity=\"0.8\"/>\n";
  }

  out << "<text x=\"" << 0.5 * (x0 + x1) << "\" y=\"" << kHeight - 14.0
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
         "score distance</text>\n";
  out << "<text x=\"18\" y=\"" << 0.5 * (y0 + y1)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
         "transform=\"rotate(-90 18 "
      << 0.5 * (y0 + y1) << ")\">orthogonal distance</text>\n";
  out << "</svg>\n";
}

}  // namespace fir
