#include "covergeo/mask_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "covergeo/errors.hpp"

namespace covergeo {

namespace {

constexpr const char* kFormat = "covergeo-mask/v1";

int image_rows(const Geometry& g) { return g.dims[1] * g.dims[2]; }

// PBM row -> (j, k).
std::pair<int, int> row_to_jk(const Geometry& g, int row) {
  const int k = row / g.dims[1];
  const int j = g.dims[1] - 1 - row % g.dims[1];
  return {j, k};
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) throw InputError("bad number in mask header: '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  int v = 0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) throw InputError("bad integer in mask header: '" + s + "'");
  return v;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

Geometry parse_header(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InputError("mask header line without '=': " + line);
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto need = [&](const char* key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw InputError(std::string("mask header missing key '") + key + "'");
    return it->second;
  };
  if (need("format") != kFormat) throw InputError("unsupported mask format '" + need("format") + "'");

  Geometry g;
  g.ndim = parse_int(need("n"));
  const auto dims = split_ws(need("dims"));
  const auto origin = split_ws(need("origin"));
  if (dims.size() != 3 || origin.size() != 3) throw InputError("mask header dims/origin need 3 entries");
  for (int a = 0; a < 3; ++a) {
    g.dims[a] = parse_int(dims[a]);
    g.origin[a] = parse_double(origin[a]);
  }
  g.h = parse_double(need("h"));
  g.validate();
  return g;
}

// Skips whitespace and '#' comments in a PNM header.
std::size_t skip_space(const std::string& s, std::size_t p) {
  while (p < s.size()) {
    if (s[p] == '#') {
      while (p < s.size() && s[p] != '\n') ++p;
    } else if (std::isspace(static_cast<unsigned char>(s[p]))) {
      ++p;
    } else {
      break;
    }
  }
  return p;
}

int read_header_int(const std::string& s, std::size_t& p) {
  p = skip_space(s, p);
  const std::size_t b = p;
  while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
  if (b == p) throw InputError("malformed PBM header");
  return parse_int(s.substr(b, p - b));
}

bool rim_clear(const Geometry& g, std::span<const std::uint8_t> mask) {
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) continue;
    const CellCoord c = g.coords(i);
    for (int a = 0; a < g.ndim; ++a) {
      if (c[a] == 0 || c[a] == g.dims[a] - 1) return false;
    }
  }
  return true;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot open for writing: " + path.string());
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open: " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string encode_header(const Geometry& g) {
  std::ostringstream os;
  os << "format=" << kFormat << '\n'
     << "n=" << g.ndim << '\n'
     << "dims=" << g.dims[0] << ' ' << g.dims[1] << ' ' << g.dims[2] << '\n'
     << "h=" << format_double(g.h) << '\n'
     << "origin=" << format_double(g.origin[0]) << ' ' << format_double(g.origin[1]) << ' '
     << format_double(g.origin[2]) << '\n'
     << "encoding=pbm\n";
  return os.str();
}

std::string encode_pbm(const GridSet& set) {
  const Geometry& g = set.geometry();
  const int w = g.dims[0];
  const int rows = image_rows(g);
  std::string out = "P4\n" + std::to_string(w) + ' ' + std::to_string(rows) + '\n';
  const std::size_t stride = (static_cast<std::size_t>(w) + 7) / 8;
  for (int r = 0; r < rows; ++r) {
    const auto [j, k] = row_to_jk(g, r);
    std::string line(stride, '\0');
    for (int i = 0; i < w; ++i) {
      if (set.contains(i, j, k)) line[i / 8] = static_cast<char>(line[i / 8] | (0x80 >> (i % 8)));
    }
    out += line;
  }
  return out;
}

std::filesystem::path header_path(const std::filesystem::path& pbm) {
  std::filesystem::path p = pbm;
  p.replace_extension(".hdr");
  return p;
}

void write_mask(const GridSet& set, const std::filesystem::path& path) {
  write_file(path, encode_pbm(set));
  write_file(header_path(path), encode_header(set.geometry()));
}

GridSet decode_mask(const std::string& pbm, const std::string& header) {
  const Geometry g = parse_header(header);
  if (pbm.size() < 2 || pbm[0] != 'P' || (pbm[1] != '1' && pbm[1] != '4')) {
    throw InputError("not a PBM (P1/P4) file");
  }
  const bool binary = pbm[1] == '4';
  std::size_t p = 2;
  const int w = read_header_int(pbm, p);
  const int rows = read_header_int(pbm, p);
  if (w != g.dims[0] || rows != image_rows(g)) {
    throw InputError("PBM size " + std::to_string(w) + "x" + std::to_string(rows) +
                     " does not match header dims");
  }
  std::vector<std::uint8_t> mask(g.cell_count(), 0);
  if (binary) {
    ++p;  // single whitespace after the header
    const std::size_t stride = (static_cast<std::size_t>(w) + 7) / 8;
    if (pbm.size() < p + stride * rows) throw InputError("truncated PBM data");
    for (int r = 0; r < rows; ++r) {
      const auto [j, k] = row_to_jk(g, r);
      for (int i = 0; i < w; ++i) {
        const auto byte = static_cast<unsigned char>(pbm[p + r * stride + i / 8]);
        mask[g.index(i, j, k)] = (byte >> (7 - i % 8)) & 1;
      }
    }
  } else {
    for (int r = 0; r < rows; ++r) {
      const auto [j, k] = row_to_jk(g, r);
      for (int i = 0; i < w; ++i) {
        p = skip_space(pbm, p);
        if (p >= pbm.size() || (pbm[p] != '0' && pbm[p] != '1')) throw InputError("truncated PBM data");
        mask[g.index(i, j, k)] = pbm[p++] == '1';
      }
    }
  }
  if (rim_clear(g, mask)) return GridSet(g, std::move(mask));
  return GridSet::padded_from(g, std::move(mask), 1);
}

GridSet read_mask(const std::filesystem::path& path) {
  return decode_mask(read_file(path), read_file(header_path(path)));
}

std::string encode_label_pgm(const Geometry& g, std::span<const std::int32_t> labels) {
  if (labels.size() != g.cell_count()) throw InputError("label raster size does not match geometry");
  const int w = g.dims[0];
  const int rows = image_rows(g);
  std::string out = "P5\n" + std::to_string(w) + ' ' + std::to_string(rows) + "\n65535\n";
  out.reserve(out.size() + 2 * labels.size());
  for (int r = 0; r < rows; ++r) {
    const auto [j, k] = row_to_jk(g, r);
    for (int i = 0; i < w; ++i) {
      const std::int32_t v = labels[g.index(i, j, k)];
      if (v < 0 || v > 65535) throw InputError("label out of 16-bit range");
      out += static_cast<char>((v >> 8) & 0xff);
      out += static_cast<char>(v & 0xff);
    }
  }
  return out;
}

void write_label_pgm(const Geometry& g, std::span<const std::int32_t> labels,
                     const std::filesystem::path& path) {
  write_file(path, encode_label_pgm(g, labels));
}

}  // namespace covergeo
