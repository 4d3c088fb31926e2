// covergeo: good partitions, coverage bounds, flat-norm regularization and
// Monte Carlo checks from the command line. See README.md for examples.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "covergeo/bounds.hpp"
#include "covergeo/errors.hpp"
#include "covergeo/flatnorm.hpp"
#include "covergeo/mask_io.hpp"
#include "covergeo/montecarlo.hpp"
#include "covergeo/partition.hpp"
#include "covergeo/render.hpp"
#include "covergeo/report.hpp"
#include "covergeo/shapes.hpp"

namespace fs = std::filesystem;
using namespace covergeo;

namespace {

struct Options {
  std::string shape;
  double h = 0.0;
  double delta = 0.0;
  std::vector<double> lambda;
  std::vector<std::uint64_t> n_ladder;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";

  // bound
  std::string kind = "reach";
  int M = 0;
  int n = 2;
  double measure_E = 0.0;
  double measure_A = 0.0;
  double measure_S = 0.0;
  double p_target = 0.99;

  // cover / pipeline
  double radius_factor = 3.0;
  bool eta = false;
  bool threshold = false;
  bool fill_in = false;

  // render
  std::string what = "partition";
  std::size_t samples = 0;
};

void emit(const Options& o, const std::string& name, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(o.out);
  std::ofstream os(fs::path(o.out) / name, std::ios::binary);
  if (!os) throw InputError("cannot write " + (fs::path(o.out) / name).string());
  os << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

GridSet load_shape(const Options& o) {
  if (o.shape.empty()) throw InputError("--shape is required");
  const ShapeSpec spec = parse_shape(o.shape, o.h);
  if (spec.kind != "file" && !(o.h > 0.0)) throw InputError("--h must be > 0");
  return make_shape(spec);
}

void require_delta(const Options& o) {
  if (!(o.delta > 0.0)) throw InputError("--delta must be > 0");
}

std::vector<std::uint64_t> ladder_or_default(const Options& o, const CoverageBound& b) {
  if (!o.n_ladder.empty()) return o.n_ladder;
  const std::uint64_t n0 = invert_for_N(b, 0.5);
  return {n0, 2 * n0, 4 * n0, invert_for_N(b, o.p_target)};
}

int cmd_shape(const Options& o) {
  const GridSet E = load_shape(o);
  if (!o.out.empty()) {
    fs::path p(o.out);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    write_mask(E, p);
  }
  json j = summary_json(E);
  j["shape"] = o.shape;
  std::cout << dump(document("shape", j));
  return 0;
}

int cmd_partition(const Options& o) {
  const GridSet E = load_shape(o);
  require_delta(o);
  const Partition P = o.eta ? partition_with_eta(E, o.delta) : good_partition(E, o.delta);
  const GoodCertificate cert = certify_good(P, o.delta);
  if (!o.out.empty()) {
    emit(o, "labels.pgm", encode_label_pgm(P.base.geometry(), P.labels));
    emit(o, "partition.json", dump(document("partition", to_json(P))));
    emit(o, "certificate.json", dump(document("good-certificate", to_json(cert))));
    if (E.ndim() == 2) emit(o, "partition.svg", render_partition_svg(P));
  }
  json summary = {{"M", P.regions.size()}, {"ell", P.ell}, {"certificate", to_json(cert)}};
  summary["certificate"].erase("regions");
  std::cout << dump(document("partition-summary", summary));
  return cert.verdict ? 0 : 1;
}

CoverageBound bound_from_args(const Options& o) {
  if (o.kind == "reach") return bound_reach(o.M, o.n, o.delta, o.measure_E);
  if (o.kind == "U-minus-A") return bound_U_minus_A(o.M, o.n, o.delta, o.measure_A, o.measure_E);
  if (o.kind == "flatnorm") return bound_flatnorm(o.M, o.delta, o.measure_S, o.measure_A);
  throw InputError("--kind must be reach, regions, U-minus-A or flatnorm (regions needs --shape)");
}

int cmd_bound(const Options& o) {
  CoverageBound b;
  if (!o.shape.empty()) {
    const GridSet E = load_shape(o);
    require_delta(o);
    const Partition P = good_partition(E, o.delta);
    if (o.kind == "regions") {
      std::vector<double> m;
      for (const Region& r : P.regions) m.push_back(r.measure);
      b = bound_regions(m, E.measure());
    } else if (o.kind == "reach") {
      b = bound_reach(static_cast<int>(P.regions.size()), E.ndim(), o.delta, E.measure());
    } else {
      throw InputError("with --shape, --kind must be reach or regions");
    }
  } else {
    b = bound_from_args(o);
  }
  const auto ladder = ladder_or_default(o, b);
  if (o.format == "csv") {
    std::cout << bound_csv(b, ladder);
  } else {
    json j = {{"bound", to_json(b)}, {"table", bound_table(b, ladder)},
              {"N_for_p", {{"p", o.p_target}, {"N", invert_for_N(b, o.p_target)}}}};
    std::cout << dump(document("bound", j));
  }
  return 0;
}

int cmd_cover(const Options& o) {
  if (o.trials == 0) throw InputError("--trials must be >= 1");
  const GridSet E = load_shape(o);
  require_delta(o);
  const Partition P = good_partition(E, o.delta);
  const CoverageBound b = bound_reach(static_cast<int>(P.regions.size()), E.ndim(), o.delta, E.measure());
  std::vector<TrialReport> rows;
  bool all = true;
  for (std::uint64_t N : ladder_or_default(o, b)) {
    TrialConfig cfg;
    cfg.r = o.radius_factor * o.delta;
    cfg.N = N;
    cfg.trials = o.trials;
    cfg.seed = o.seed;
    if (o.trials >= 100) cfg.bound = b.evaluate(static_cast<double>(N)).value;
    rows.push_back(estimate_probability(E, cfg));
    all = all && rows.back().verdict.value_or(true);
  }
  json reports = json::array();
  for (const auto& r : rows) reports.push_back(to_json(r));
  const json doc = document("cover", {{"bound", to_json(b)}, {"M", P.regions.size()}, {"seed", o.seed},
                                      {"reports", reports}, {"verdict", all}});
  if (o.format == "csv") {
    std::cout << ladder_csv(rows);
    if (!o.out.empty()) emit(o, "cover.json", dump(doc));
  } else {
    std::cout << dump(doc);
    if (!o.out.empty()) emit(o, "cover.csv", ladder_csv(rows));
  }
  return all ? 0 : 1;
}

int cmd_flatnorm(const Options& o) {
  if (o.fill_in) {
    const ShapeSpec spec = parse_shape(o.shape, o.h);
    if (spec.kind != "disk-minus-hole") throw InputError("--fill-in needs a disk-minus-hole shape");
    if (o.lambda.size() != 1) throw InputError("--fill-in takes exactly one --lambda");
    const HoleKind kind = spec.params.count("hole") && spec.params.at("hole") == "bowtie" ? HoleKind::Bowtie
                                                                                        : HoleKind::Square;
    const HoleShape hs = make_disk_minus_hole(spec.number("r"), spec.number("a"), kind, o.h);
    const FillInReport rep = fill_in_experiment(hs.U, hs.A, o.lambda.front());
    if (!o.out.empty()) emit(o, "fill_in.svg", render_overlay_svg(hs.E, rep.flatnorm.sigma));
    std::cout << dump(document("fill-in", to_json(rep)));
    return 0;
  }
  const GridSet E = load_shape(o);
  json doc = json::object();
  if (o.threshold) doc["threshold"] = to_json(lambda_threshold(E));
  if (!o.lambda.empty()) {
    const auto results = flatnorm_ladder(E, o.lambda);
    json arr = json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
      json j = to_json(results[i]);
      if (!results[i].sigma.empty()) j["reach_check"] = to_json(minimizer_reach_check(results[i]));
      arr.push_back(j);
      if (!o.out.empty()) {
        emit(o, "overlay_" + std::to_string(i) + ".svg", render_overlay_svg(E, results[i].sigma));
      }
    }
    doc["results"] = arr;
  }
  if (doc.empty()) throw InputError("give --lambda values and/or --threshold");
  std::cout << dump(document("flatnorm", doc));
  return 0;
}

int cmd_pipeline(const Options& o) {
  const GridSet E = load_shape(o);
  require_delta(o);
  if (o.lambda.size() != 1) throw InputError("--lambda takes exactly one value here");
  const PipelineResult res = almost_cover_pipeline(E, o.lambda.front(), o.delta);
  json reports = json::array();
  bool all = true;
  std::vector<TrialReport> rows;
  if (o.trials > 0) {
    const GridSet e_here = res.A.geometry() == E.geometry() ? E : E.reembed(res.A.geometry());
    for (std::uint64_t N : ladder_or_default(o, res.bound)) {
      TrialConfig cfg;
      cfg.r = o.radius_factor * o.delta;
      cfg.N = N;
      cfg.trials = o.trials;
      cfg.seed = o.seed;
      cfg.mode = {Mode::Almost, res.alpha};
      cfg.sample_from = &res.A;
      if (o.trials >= 100) cfg.bound = res.bound.evaluate(static_cast<double>(N)).value;
      rows.push_back(estimate_probability(e_here, cfg));
      json r = to_json(rows.back());
      r.erase("fractions");
      reports.push_back(r);
      all = all && rows.back().verdict.value_or(true);
    }
  }
  json doc = document("pipeline", to_json(res));
  doc["reports"] = reports;
  doc["verdict"] = all && res.almost.verdict;
  if (!o.out.empty()) {
    emit(o, "labels.pgm", encode_label_pgm(res.partition.base.geometry(), res.partition.labels));
    emit(o, "overlay.svg", render_overlay_svg(res.A.geometry() == E.geometry() ? E : E.reembed(res.A.geometry()),
                                              res.flatnorm.sigma));
    emit(o, "cover.csv", ladder_csv(rows));
  }
  std::cout << dump(doc);
  return doc["verdict"].get<bool>() ? 0 : 1;
}

int cmd_render(const Options& o) {
  const GridSet E = load_shape(o);
  std::string svg;
  if (o.what == "partition") {
    require_delta(o);
    svg = render_partition_svg(good_partition(E, o.delta));
  } else if (o.what == "overlay") {
    if (o.lambda.size() != 1) throw InputError("overlay needs one --lambda");
    svg = render_overlay_svg(E, flatnorm_minimize(E, o.lambda.front()).sigma);
  } else if (o.what == "samples") {
    require_delta(o);
    if (o.samples == 0) throw InputError("samples needs --samples N >= 1");
    svg = render_samples_svg(E, sample_uniform(E, o.samples, o.seed), o.radius_factor * o.delta);
  } else {
    throw InputError("--what must be partition, overlay or samples");
  }
  if (o.out.empty()) {
    std::cout << svg;
  } else {
    std::ofstream os(o.out, std::ios::binary);
    if (!os) throw InputError("cannot write " + o.out);
    os << svg;
  }
  return 0;
}

void shape_opts(CLI::App* c, Options& o) {
  c->add_option("--shape", o.shape, "disk:r=1 | two-disks:r=,sep= | dumbbell:r=,sep=,neck= | cube:side=[,dim=3] | "
                                    "disk-minus-hole:r=,a=[,hole=square|bowtie] | ball:r= | file:PATH");
  c->add_option("--h", o.h, "cell size (physical length)");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"covergeo: good partitions, coverage bounds and flat-norm regularization"};
  app.set_config("--config", "", "TOML/INI file with option values; flags override it");
  // CLI11 binds -h to help by default, which clashes with --h (cell size).
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);

  auto* shape = app.add_subcommand("shape", "rasterize a shape and write mask + header");
  shape_opts(shape, o);
  shape->add_option("--out", o.out, "output .pbm path (sidecar .hdr written next to it)");

  auto* part = app.add_subcommand("partition", "good partition and its certificate");
  shape_opts(part, o);
  part->add_option("--delta", o.delta)->required();
  part->add_flag("--eta", o.eta, "fatten by eta_delta instead of delta");
  part->add_option("--out", o.out, "output directory");

  auto* bound = app.add_subcommand("bound", "coverage lower bound table");
  shape_opts(bound, o);
  bound->add_option("--kind", o.kind, "reach | regions | U-minus-A | flatnorm");
  bound->add_option("--M", o.M);
  bound->add_option("--n", o.n);
  bound->add_option("--delta", o.delta);
  bound->add_option("--measure-E", o.measure_E);
  bound->add_option("--measure-A", o.measure_A);
  bound->add_option("--measure-S", o.measure_S);
  bound->add_option("--n-ladder", o.n_ladder)->delimiter(',');
  bound->add_option("--p", o.p_target, "target probability for N inversion");
  bound->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));

  auto* cover = app.add_subcommand("cover", "Monte Carlo coverage against the reach bound");
  shape_opts(cover, o);
  cover->add_option("--delta", o.delta)->required();
  cover->add_option("--n-ladder", o.n_ladder)->delimiter(',');
  cover->add_option("--trials", o.trials);
  cover->add_option("--seed", o.seed);
  cover->add_option("--radius-factor", o.radius_factor, "ball radius in units of delta");
  cover->add_option("--p", o.p_target);
  cover->add_option("--out", o.out, "output directory");
  cover->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));

  auto* flat = app.add_subcommand("flatnorm", "flat-norm minimizers, threshold, fill-in");
  shape_opts(flat, o);
  flat->add_option("--lambda", o.lambda)->delimiter(',');
  flat->add_flag("--threshold", o.threshold, "locate Lambda_E");
  flat->add_flag("--fill-in", o.fill_in, "fill-in experiment on a disk-minus-hole shape");
  flat->add_option("--out", o.out, "output directory for overlays");

  auto* pipe = app.add_subcommand("pipeline", "flat norm -> almost partition -> bound -> Monte Carlo");
  shape_opts(pipe, o);
  pipe->add_option("--lambda", o.lambda)->delimiter(',')->required();
  pipe->add_option("--delta", o.delta)->required();
  pipe->add_option("--n-ladder", o.n_ladder)->delimiter(',');
  pipe->add_option("--trials", o.trials);
  pipe->add_option("--seed", o.seed);
  pipe->add_option("--radius-factor", o.radius_factor);
  pipe->add_option("--p", o.p_target);
  pipe->add_option("--out", o.out, "output directory");

  auto* render = app.add_subcommand("render", "static SVG figures");
  shape_opts(render, o);
  render->add_option("--what", o.what, "partition | overlay | samples");
  render->add_option("--delta", o.delta);
  render->add_option("--lambda", o.lambda)->delimiter(',');
  render->add_option("--samples", o.samples);
  render->add_option("--seed", o.seed);
  render->add_option("--radius-factor", o.radius_factor);
  render->add_option("--out", o.out, "output .svg path");
  render->add_option("--format", o.format)->check(CLI::IsMember({"svg"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*shape) return cmd_shape(o);
    if (*part) return cmd_partition(o);
    if (*bound) return cmd_bound(o);
    if (*cover) return cmd_cover(o);
    if (*flat) return cmd_flatnorm(o);
    if (*pipe) return cmd_pipeline(o);
    if (*render) return cmd_render(o);
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis violated [" << to_string(e.which()) << "]: " << e.inequality() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
