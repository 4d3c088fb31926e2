#include "covergeo/render.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "covergeo/errors.hpp"
#include "covergeo/mask_io.hpp"

namespace covergeo {

namespace {

void require_2d(const Geometry& g) {
  if (g.ndim != 2) throw InputError("unsupported dimension: rendering is 2D only");
}

std::string open_svg(const Geometry& g) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << g.dims[0] << ' ' << g.dims[1]
     << "\" width=\"" << 4 * g.dims[0] << "\" height=\"" << 4 * g.dims[1] << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return os.str();
}

// Horizontal runs of cells with the same key (key 0 is skipped).
void fill_runs(std::ostringstream& os, const Geometry& g, const std::function<int(std::size_t)>& key,
               const std::function<std::string(int)>& color) {
  for (int j = 0; j < g.dims[1]; ++j) {
    const int row = g.dims[1] - 1 - j;
    for (int i = 0; i < g.dims[0];) {
      const int k = key(g.index(i, j));
      int end = i + 1;
      while (end < g.dims[0] && key(g.index(end, j)) == k) ++end;
      if (k != 0) {
        os << "<rect x=\"" << i << "\" y=\"" << row << "\" width=\"" << end - i << "\" height=\"1\" fill=\""
           << color(k) << "\"/>\n";
      }
      i = end;
    }
  }
}

// Cell edges separating members from non-members of `in`, as one path.
void boundary_path(std::ostringstream& os, const Geometry& g, const std::function<bool(int, int)>& in,
                   const char* stroke, double width) {
  os << "<path fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\" d=\"";
  for (int j = 0; j <= g.dims[1]; ++j) {
    for (int i = 0; i <= g.dims[0]; ++i) {
      const int top = g.dims[1] - j;  // SVG y of the lower edge of cell row j
      if (in(i, j) != in(i - 1, j)) os << 'M' << i << ' ' << top << "v-1";
      if (in(i, j) != in(i, j - 1)) os << 'M' << i << ' ' << top << "h1";
    }
  }
  os << "\"/>\n";
}

std::string hue_color(int id) {
  const double hue = std::fmod(id * 137.50776405, 360.0);
  std::ostringstream os;
  os << "hsl(" << static_cast<int>(hue) << ",65%," << (id % 2 ? 60 : 72) << "%)";
  return os.str();
}

std::function<bool(int, int)> member(const GridSet& s) {
  return [&s](int i, int j) { return s.contains(i, j, 0); };
}

}  // namespace

std::string render_partition_svg(const Partition& p) {
  const Geometry& g = p.base.geometry();
  require_2d(g);
  std::ostringstream os;
  os << open_svg(g);
  fill_runs(os, g, [&](std::size_t i) { return p.labels[i]; }, hue_color);
  boundary_path(os, g, member(p.base), "black", 0.25);
  os << "</svg>\n";
  return os.str();
}

std::string render_overlay_svg(const GridSet& E, const GridSet& sigma_in) {
  const Geometry& g = E.geometry();
  require_2d(g);
  const GridSet sigma = sigma_in.geometry() == g ? sigma_in : sigma_in.reembed(g);
  std::ostringstream os;
  os << open_svg(g);
  fill_runs(os, g, [&](std::size_t i) { return E.contains(i) ? 1 : 0; }, [](int) { return std::string("#d9d9d9"); });
  boundary_path(os, g, member(E), "black", 0.3);
  boundary_path(os, g, member(sigma), "#d62728", 0.3);
  os << "</svg>\n";
  return os.str();
}

std::string render_samples_svg(const GridSet& E, const SampleSet& samples, double r) {
  const Geometry& g = E.geometry();
  require_2d(g);
  std::ostringstream os;
  os << open_svg(g);
  fill_runs(os, g, [&](std::size_t i) { return E.contains(i) ? 1 : 0; }, [](int) { return std::string("#d9d9d9"); });
  boundary_path(os, g, member(E), "black", 0.3);
  const double rr = r / g.h;
  for (const Point& p : samples.points) {
    const double x = (p[0] - g.origin[0]) / g.h;
    const double y = g.dims[1] - (p[1] - g.origin[1]) / g.h;
    os << "<circle cx=\"" << format_double(x) << "\" cy=\"" << format_double(y) << "\" r=\"" << format_double(rr)
       << "\" fill=\"none\" stroke=\"#1f77b4\" stroke-opacity=\"0.35\" stroke-width=\"0.2\"/>\n"
       << "<circle cx=\"" << format_double(x) << "\" cy=\"" << format_double(y)
       << "\" r=\"0.4\" fill=\"#1f77b4\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace covergeo
