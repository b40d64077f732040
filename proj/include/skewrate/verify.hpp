#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "skewrate/blowup.hpp"
#include "skewrate/predict.hpp"

namespace skewrate {

/// One prediction compared with the oracle. `tag` names the claim that was
/// tested; on failure `observed` holds the exact oracle value.
struct CheckResult {
  std::string claim;
  std::string tag;
  bool passed = true;
  std::string expected;
  std::string observed;
};

struct Finding {
  std::string kind;  // vanishing | reappearance | coefficient_mismatch | unclaimed | resource | weight_outside_range
  std::optional<std::uint64_t> n;
  std::string detail;
};

struct OracleStep {
  std::uint64_t n = 0;
  Rational c_qn;
  Rational c_fn;
  std::uint64_t ord_z = 0;
  std::uint64_t ord_w = 0;
  std::vector<LatticePoint> vertices;
  std::vector<std::pair<Rational, Rational>> weights;  // (l, w_l(Q^n))
  Rational dominant_coeff;                             // 0 when absent
  std::size_t term_count = 0;
};

struct StepRecord {
  OracleStep oracle;
  RatePrediction prediction;
  std::vector<CheckResult> checks;
};

struct ReadingReport {
  CaseData case_data;
  WeightIntervals intervals;
  AsymptoticRate asymptotic;
  std::vector<Rational> l_samples;
  VanishingObservation vanishing;
  std::vector<StepRecord> steps;
  std::vector<CheckResult> checks;  // not tied to a single n
  std::vector<LemmaCheck> lemma_checks;
};

struct VerifyOptions {
  std::uint64_t n_max = 3;
  std::vector<Rational> extra_l;
  Limits limits;
  bool blowups = true;
};

struct VerificationReport {
  SkewGerm germ;
  std::uint64_t n_max = 0;
  std::uint64_t n_computed = 0;
  std::vector<ReadingReport> readings;
  std::vector<Finding> findings;
  std::optional<std::string> resource_error;

  std::size_t checks_run() const;
  std::size_t failures() const;
  bool passed() const { return failures() == 0; }
  bool boundary() const;
  bool vanishing_event() const;
};

/// Iterates f up to opt.n_max and tests every prediction for every reading.
/// A resource guard stops the iteration; results for earlier n are kept.
VerificationReport verify_germ(const SkewGerm& f, const VerifyOptions& opt = {});

struct FuzzConfig {
  std::uint64_t seed = 20240601;
  std::uint64_t germ_count = 200;
  std::uint64_t delta_max = 3;
  std::uint64_t support_max = 6;
  std::int64_t coeff_min = -3;
  std::int64_t coeff_max = 3;
  std::uint64_t n_max = 3;
  std::uint64_t degree_cap = 160;   // bound on deg Q^{n_max}; larger germs are skipped
  std::uint64_t exponent_max = 4;   // support of q drawn with i + j <= exponent_max
  std::uint32_t boundary_bias_pct = 20;
  std::uint32_t vanishing_bias_pct = 5;
  std::uint64_t coverage_cap = 400;  // extra draws allowed to reach coverage

  friend bool operator==(const FuzzConfig&, const FuzzConfig&) = default;
};

/// Deterministic germ source. Uses std::mt19937_64 and an explicit
/// rejection-sampled range reduction, so sequences match across platforms.
class GermGenerator {
 public:
  explicit GermGenerator(const FuzzConfig& config);

  /// Plain draw: delta, a support of at most support_max points, coefficients.
  SkewGerm random();
  /// Draw with delta placed on the intercept of a polygon edge.
  SkewGerm boundary();
  /// Case 2 with d = 0 on the boundary, coefficients solved so the edge sum is
  /// zero. Returns nullopt when no admissible coefficient exists for the draw.
  std::optional<SkewGerm> vanishing();
  /// Mixes the three according to the configured biases.
  SkewGerm next();

 private:
  std::uint64_t below(std::uint64_t bound);
  std::int64_t coefficient();
  SparsePoly2 draw_p(std::uint64_t delta);

  FuzzConfig config_;
  std::mt19937_64 rng_;
};

struct FuzzFailure {
  std::uint64_t index = 0;
  std::string p;
  std::string q;
  std::string reading;
  std::string claim;
  std::string tag;
  std::string expected;
  std::string observed;

  friend bool operator==(const FuzzFailure&, const FuzzFailure&) = default;
};

struct FuzzSummary {
  FuzzConfig config;
  std::string generator = "mt19937_64";
  std::uint64_t germs_generated = 0;
  std::uint64_t germs_verified = 0;
  std::uint64_t skipped_resource = 0;
  std::uint64_t coverage_draws = 0;
  std::array<std::uint64_t, 4> primary_case_counts{};  // index = case number - 1
  std::array<std::uint64_t, 4> reading_counts{};
  std::uint64_t boundary_germs = 0;
  std::uint64_t vanishing_events = 0;
  std::uint64_t checks_run = 0;
  std::uint64_t failures = 0;
  std::uint64_t findings = 0;
  std::uint64_t coefficient_mismatches = 0;
  bool coverage_met = false;
  std::vector<FuzzFailure> failure_list;  // first 20

  friend bool operator==(const FuzzSummary&, const FuzzSummary&) = default;
};

FuzzSummary fuzz(const FuzzConfig& config);

/// Upper bound on the total degree of Q^n, saturating at UINT64_MAX.
std::uint64_t degree_bound(const SkewGerm& f, std::uint64_t n);

}  // namespace skewrate
