#include "covergeo/distance.hpp"

#include <algorithm>
#include <cmath>

#include "covergeo/errors.hpp"

namespace covergeo {

namespace {

// 1D lower envelope of parabolas (Felzenszwalb & Huttenlocher) over one line
// of `n` values with stride `stride`. `f`, `v`, `z` are scratch of size n, n, n+1.
void edt_line(SquaredCells* data, int n, std::size_t stride, std::vector<SquaredCells>& f,
              std::vector<int>& v, std::vector<double>& z) {
  int k = -1;
  for (int q = 0; q < n; ++q) {
    f[q] = data[q * stride];
    if (f[q] == kNoSource) continue;
    const double fq = static_cast<double>(f[q]) + static_cast<double>(q) * q;
    double s = 0.0;
    while (k >= 0) {
      const int p = v[k];
      const double fp = static_cast<double>(f[p]) + static_cast<double>(p) * p;
      s = (fq - fp) / (2.0 * (q - p));
      if (s > z[k]) break;
      --k;
    }
    ++k;
    v[k] = q;
    z[k] = k == 0 ? -std::numeric_limits<double>::infinity() : s;
    z[k + 1] = std::numeric_limits<double>::infinity();
  }
  if (k < 0) return;  // no source on this line; leave kNoSource
  int j = 0;
  for (int q = 0; q < n; ++q) {
    while (z[j + 1] < q) ++j;
    const SquaredCells d = static_cast<SquaredCells>(q - v[j]);
    data[q * stride] = d * d + f[v[j]];
  }
}

struct LineSet {
  int length;
  std::size_t stride;
  std::size_t count;
  std::vector<std::size_t> starts;
};

LineSet lines_along(const Geometry& g, int axis) {
  LineSet ls;
  ls.length = g.dims[axis];
  ls.stride = axis == 0 ? 1 : axis == 1 ? static_cast<std::size_t>(g.dims[0])
                                        : static_cast<std::size_t>(g.dims[0]) * g.dims[1];
  for (int k = 0; k < g.dims[2]; ++k) {
    for (int j = 0; j < g.dims[1]; ++j) {
      for (int i = 0; i < g.dims[0]; ++i) {
        const bool first = (axis == 0 && i == 0) || (axis == 1 && j == 0) || (axis == 2 && k == 0);
        if (first) ls.starts.push_back(g.index(i, j, k));
      }
    }
  }
  ls.count = ls.starts.size();
  return ls;
}

std::vector<SquaredCells> seed(const Geometry& g, std::span<const std::uint8_t> source) {
  std::vector<SquaredCells> d(g.cell_count(), kNoSource);
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (source[i]) d[i] = 0;
  }
  return d;
}

}  // namespace

namespace kernels {

std::vector<SquaredCells> squared_edt(const Geometry& g, std::span<const std::uint8_t> source) {
  return parabolic_envelope(g, seed(g, source));
}

std::vector<SquaredCells> parabolic_envelope(const Geometry& g, std::vector<SquaredCells> d) {
  for (int axis = 0; axis < g.ndim; ++axis) {
    const LineSet ls = lines_along(g, axis);
    const long nlines = static_cast<long>(ls.count);
#pragma omp parallel
    {
      std::vector<SquaredCells> f(ls.length);
      std::vector<int> v(ls.length);
      std::vector<double> z(ls.length + 1);
#pragma omp for schedule(static)
      for (long l = 0; l < nlines; ++l) {
        edt_line(d.data() + ls.starts[l], ls.length, ls.stride, f, v, z);
      }
    }
  }
  return d;
}

std::vector<SquaredCells> squared_edt_serial(const Geometry& g, std::span<const std::uint8_t> source) {
  std::vector<SquaredCells> d = seed(g, source);
  for (int axis = 0; axis < g.ndim; ++axis) {
    const LineSet ls = lines_along(g, axis);
    std::vector<SquaredCells> f(ls.length);
    std::vector<int> v(ls.length);
    std::vector<double> z(ls.length + 1);
    for (std::size_t l = 0; l < ls.count; ++l) {
      edt_line(d.data() + ls.starts[l], ls.length, ls.stride, f, v, z);
    }
  }
  return d;
}

}  // namespace kernels

double DistanceField::max_over(const GridSet& set) const {
  double m = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (set.contains(i)) m = std::max(m, values[i]);
  }
  return m;
}

DistanceField distance_transform(const GridSet& set, bool from_complement) {
  const Geometry& g = set.geometry();
  std::vector<std::uint8_t> source(set.mask().begin(), set.mask().end());
  if (from_complement) {
    for (auto& s : source) s = !s;
  }
  if (std::none_of(source.begin(), source.end(), [](std::uint8_t s) { return s != 0; })) {
    throw InputError("empty source");
  }
  DistanceField df;
  df.geometry = g;
  df.squared_cells = kernels::squared_edt(g, source);
  df.values.resize(df.squared_cells.size());
  for (std::size_t i = 0; i < df.values.size(); ++i) {
    df.values[i] = g.h * std::sqrt(static_cast<double>(df.squared_cells[i]));
  }
  return df;
}

}  // namespace covergeo
