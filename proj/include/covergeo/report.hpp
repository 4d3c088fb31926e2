#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "covergeo/bounds.hpp"
#include "covergeo/flatnorm.hpp"
#include "covergeo/montecarlo.hpp"
#include "covergeo/partition.hpp"

namespace covergeo {

using nlohmann::json;

inline constexpr const char* kSchema = "covergeo/v1";

/// Top-level document: {"schema", "kind", "units", ...payload}.
json document(const std::string& kind, json payload);

json to_json(const Geometry& g);
json summary_json(const GridSet& s);
json to_json(const Partition& p);
json to_json(const GoodCertificate& c);
json to_json(const AlmostCertificate& c);
json to_json(const CoverageBound& b);
json bound_table(const CoverageBound& b, const std::vector<std::uint64_t>& ladder);
json to_json(const ReachConstant& rc, int profile_points = 64);
json to_json(const FlatNormResult& r);
json to_json(const LambdaThreshold& t);
json to_json(const ReachCheck& c);
json to_json(const PipelineResult& r);
json to_json(const FillInReport& r);
json to_json(const TrialReport& r);

/// Fixed-column CSV: N,bound,p_hat,wilson_lo,wilson_hi,successes,trials,verdict.
std::string ladder_csv(const std::vector<TrialReport>& rows);

/// N,raw,value,underflow for each N of the ladder.
std::string bound_csv(const CoverageBound& b, const std::vector<std::uint64_t>& ladder);

}  // namespace covergeo
