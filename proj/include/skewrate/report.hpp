#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "skewrate/verify.hpp"

namespace skewrate {

using Json = nlohmann::ordered_json;

/// Exact serializers. Rationals and big integers become strings ("7/2",
/// "inf"); only machine-sized exponents of germ supports are JSON numbers.
Json to_json(const SparsePoly2& poly);
Json to_json(const NewtonPolygon& polygon);
Json to_json(const WeightInterval& interval);
Json to_json(const CaseData& c);
Json to_json(const WeightIntervals& wi);
Json to_json(const Bracket& b);
Json to_json(const RatePrediction& pred);
Json to_json(const AsymptoticRate& rate);
Json to_json(const VerificationReport& rep);
Json to_json(const FuzzSummary& summary);

/// Oracle data for f^n.
struct IterateReport {
  std::uint64_t n = 0;
  SkewGerm fn;
  NewtonPolygon polygon;
  Orders q_orders;
  std::uint64_t c_fn = 0;
};
IterateReport iterate_report(const SkewGerm& f, std::uint64_t n, const Limits& limits = {});
Json to_json(const IterateReport& it);

}  // namespace skewrate
