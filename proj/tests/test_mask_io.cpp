#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "covergeo/errors.hpp"
#include "covergeo/mask_io.hpp"
#include "covergeo/shapes.hpp"
#include "oracles.hpp"

using namespace covergeo;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "covergeo_mask_io";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("2D round trip through disk") {
  const GridSet d = make_disk(9.5, 0.25);
  const fs::path p = scratch("disk.pbm");
  write_mask(d, p);
  const GridSet back = read_mask(p);
  CHECK(back == d);
}

TEST_CASE("3D round trip and odd widths") {
  std::mt19937_64 rng(8);
  Geometry g = oracle::grid(13, 7, 5, 0.5);
  g.origin = {-1.5, 2.0, 0.25};
  const GridSet s(g, oracle::random_mask(g, 0.5, rng, true));
  CHECK(decode_mask(encode_pbm(s), encode_header(g)) == s);
  const fs::path p = scratch("cloud.pbm");
  write_mask(s, p);
  CHECK(read_mask(p) == s);
}

TEST_CASE("writing is deterministic") {
  const GridSet d = make_dumbbell(6.0, 16.0, 3.0, 0.5);
  const fs::path a = scratch("a.pbm"), b = scratch("b.pbm");
  write_mask(d, a);
  write_mask(d, b);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(header_path(a)) == slurp(header_path(b)));
}

TEST_CASE("plain P1 input and top row first") {
  const std::string hdr = "format=covergeo-mask/v1\nn=2\ndims=4 3 1\nh=1\norigin=0 0 0\nencoding=pbm\n";
  const std::string pbm = "P1\n4 3\n0 0 0 0\n0 1 0 0\n0 0 0 0\n";
  const GridSet s = decode_mask(pbm, hdr);
  CHECK(s.count() == 1);
  CHECK(s.contains(1, 1));
}

TEST_CASE("touching rim is padded on load") {
  const std::string hdr = "format=covergeo-mask/v1\nn=2\ndims=2 2 1\nh=1\norigin=0 0 0\nencoding=pbm\n";
  const GridSet s = decode_mask("P1\n2 2\n1 1\n1 1\n", hdr);
  CHECK(s.geometry().dims[0] == 4);
  CHECK(s.count() == 4);
}

TEST_CASE("malformed input") {
  const std::string hdr = "format=covergeo-mask/v1\nn=2\ndims=4 3 1\nh=1\norigin=0 0 0\nencoding=pbm\n";
  CHECK_THROWS_AS(decode_mask("P1\n4 2\n0 0 0 0\n0 0 0 0\n", hdr), InputError);
  CHECK_THROWS_AS(decode_mask("P3\n4 3\n", hdr), InputError);
  CHECK_THROWS_AS(decode_mask("P1\n4 3\n0 0 0 0\n0 0 0 0\n0 0 0 0\n", "format=other\n"), InputError);
  CHECK_THROWS_AS(read_mask(scratch("missing.pbm")), InputError);
}

TEST_CASE("label graymap layout") {
  const Geometry g = oracle::grid(3, 2);
  const std::vector<std::int32_t> labels{0, 1, 2, 300, 4, 5};
  const std::string pgm = encode_label_pgm(g, labels);
  const std::string head = "P5\n3 2\n65535\n";
  REQUIRE(pgm.size() == head.size() + 12);
  CHECK(pgm.substr(0, head.size()) == head);
  // Top row (j = 1) first, big-endian 16-bit samples.
  CHECK(static_cast<unsigned char>(pgm[head.size() + 0]) == 0x01);
  CHECK(static_cast<unsigned char>(pgm[head.size() + 1]) == 0x2c);
  CHECK(static_cast<unsigned char>(pgm[head.size() + 11]) == 2);
}

TEST_CASE("doubles round trip in text") {
  for (double v : {0.1, 1.0 / 64.0, 3.0e-300, -2.5}) CHECK(std::stod(format_double(v)) == v);
}
