#include "covergeo/report.hpp"

#include <sstream>

#include "covergeo/errors.hpp"
#include "covergeo/mask_io.hpp"

namespace covergeo {

namespace {

json coords(const CellCoord& c, int n) {
  json a = json::array();
  for (int i = 0; i < n; ++i) a.push_back(c[i]);
  return a;
}

json value_json(const BoundValue& v) {
  return {{"value", v.value}, {"raw", v.raw}, {"underflow", v.underflow}};
}

}  // namespace

json document(const std::string& kind, json payload) {
  json doc = {{"schema", kSchema},
              {"kind", kind},
              {"units", {{"length", "L"}, {"measure", "L^n"}, {"lambda", "1/L"}, {"probability", "1"}}}};
  for (auto& [k, v] : payload.items()) {
    if (doc.contains(k)) throw InputError("payload key collides with the document header: " + k);
    doc[k] = v;
  }
  return doc;
}

json to_json(const Geometry& g) {
  return {{"n", g.ndim},
          {"dims", {g.dims[0], g.dims[1], g.dims[2]}},
          {"h", g.h},
          {"origin", {g.origin[0], g.origin[1], g.origin[2]}}};
}

json summary_json(const GridSet& s) {
  return {{"geometry", to_json(s.geometry())}, {"cells", s.count()}, {"measure", s.measure()}};
}

json to_json(const Partition& p) {
  json regions = json::array();
  for (const Region& r : p.regions) {
    regions.push_back({{"id", r.id},
                       {"cells", r.cells},
                       {"measure", r.measure},
                       {"diameter", r.diameter},
                       {"seed_index", r.seed_index},
                       {"seed_cube", coords(r.seed_cube, p.base.ndim())}});
  }
  return {{"base", summary_json(p.base)},
          {"delta", p.delta},
          {"ell", p.ell},
          {"fatten_radius", p.fatten_radius},
          {"removed_measure", p.removed_measure},
          {"M", p.regions.size()},
          {"regions", regions}};
}

json to_json(const GoodCertificate& c) {
  json regions = json::array();
  for (const RegionCheck& r : c.regions) {
    regions.push_back({{"id", r.id},
                       {"measure", r.measure},
                       {"diameter", r.diameter},
                       {"measure_ok", r.measure_ok},
                       {"diameter_ok", r.diameter_ok}});
  }
  return {{"delta", c.delta},
          {"volume_floor", c.volume_floor},
          {"diam_cap", c.diam_cap},
          {"measure_slack", c.measure_slack},
          {"diameter_slack", c.diameter_slack},
          {"min_measure", c.min_measure},
          {"max_diameter", c.max_diameter},
          {"labels_conserved", c.labels_conserved},
          {"verdict", c.verdict},
          {"regions", regions}};
}

json to_json(const AlmostCertificate& c) {
  return {{"alpha", c.alpha},
          {"measure_A", c.measure_A},
          {"measure_E", c.measure_E},
          {"coverage_ratio", c.coverage_ratio},
          {"subset", c.subset},
          {"verdict", c.verdict},
          {"literal_reading", c.literal_reading}};
}

json to_json(const CoverageBound& b) {
  json terms = json::array();
  for (const auto& t : b.terms) terms.push_back({{"multiplicity", t.multiplicity}, {"coefficient", t.coefficient}});
  return {{"bound_kind", to_string(b.kind)},
          {"M", b.M},
          {"n", b.n},
          {"delta", b.delta},
          {"measure_E", b.measure_E},
          {"measure_A", b.measure_A},
          {"measure_S", b.measure_S},
          {"terms", terms}};
}

json bound_table(const CoverageBound& b, const std::vector<std::uint64_t>& ladder) {
  json rows = json::array();
  for (std::uint64_t N : ladder) {
    json row = value_json(b.evaluate(static_cast<double>(N)));
    row["N"] = N;
    rows.push_back(row);
  }
  return rows;
}

json to_json(const ReachConstant& rc, int profile_points) {
  json prof = json::array();
  const std::size_t n = rc.theta.size();
  for (int k = 0; k < profile_points && n > 0; ++k) {
    const std::size_t i = (n - 1) * static_cast<std::size_t>(k) / std::max(1, profile_points - 1);
    prof.push_back({rc.theta[i], rc.profile[i]});
  }
  return {{"C_hat", rc.C_hat}, {"theta_star", rc.theta_star}, {"profile", prof}};
}

json to_json(const FlatNormResult& r) {
  return {{"lambda", r.lambda},
          {"energy", r.energy},
          {"perimeter", r.perim_sigma},
          {"sym_diff", r.sym_diff_measure},
          {"quantized_energy", r.quantized_energy},
          {"sigma", summary_json(r.sigma)}};
}

json to_json(const LambdaThreshold& t) {
  return {{"value", t.value}, {"lo", t.lo}, {"hi", t.hi}, {"solves", t.solves}};
}

json to_json(const ReachCheck& c) {
  return {{"lambda", c.lambda},
          {"required", c.required},
          {"sigma_radius", c.sigma_radius},
          {"complement_radius", c.complement_radius},
          {"complement_capped", c.complement_capped},
          {"verdict", c.verdict}};
}

json to_json(const PipelineResult& r) {
  return {{"flatnorm", to_json(r.flatnorm)},
          {"threshold", to_json(r.threshold)},
          {"A", summary_json(r.A)},
          {"partition", to_json(r.partition)},
          {"good_certificate", to_json(r.good)},
          {"almost_certificate", to_json(r.almost)},
          {"alpha", r.alpha},
          {"bound", to_json(r.bound)}};
}

json to_json(const FillInReport& r) {
  return {{"lambda", r.lambda},
          {"margin", r.margin},
          {"stability_U", r.stability_U},
          {"complement_stability_U", r.complement_stability_U},
          {"sym_diff_to_U", r.sym_diff_to_U},
          {"tolerance", r.tolerance},
          {"measure_A", r.measure_A},
          {"flatnorm", to_json(r.flatnorm)},
          {"verdict", r.verdict}};
}

json to_json(const TrialReport& r) {
  json j = {{"trials", r.trials},
            {"N", r.N},
            {"r", r.r},
            {"successes", r.successes},
            {"successes_conservative", r.successes_conservative},
            {"p_hat", r.p_hat},
            {"wilson", {r.wilson_lo, r.wilson_hi}},
            {"bound", r.bound ? json(*r.bound) : json(nullptr)},
            {"verdict", r.verdict ? json(*r.verdict) : json(nullptr)}};
  if (!r.fractions.empty()) j["fractions"] = r.fractions;
  return j;
}

std::string ladder_csv(const std::vector<TrialReport>& rows) {
  std::ostringstream os;
  os << "N,bound,p_hat,wilson_lo,wilson_hi,successes,trials,verdict\n";
  for (const TrialReport& r : rows) {
    os << r.N << ',' << (r.bound ? format_double(*r.bound) : "") << ',' << format_double(r.p_hat) << ','
       << format_double(r.wilson_lo) << ',' << format_double(r.wilson_hi) << ',' << r.successes << ',' << r.trials
       << ',' << (r.verdict ? (*r.verdict ? "pass" : "fail") : "") << '\n';
  }
  return os.str();
}

std::string bound_csv(const CoverageBound& b, const std::vector<std::uint64_t>& ladder) {
  std::ostringstream os;
  os << "N,raw,value,underflow\n";
  for (std::uint64_t N : ladder) {
    const BoundValue v = b.evaluate(static_cast<double>(N));
    os << N << ',' << format_double(v.raw) << ',' << format_double(v.value) << ',' << (v.underflow ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace covergeo
