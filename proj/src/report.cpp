#include "skewrate/report.hpp"

#include "skewrate/errors.hpp"

namespace skewrate {

namespace {

Json str(const Rational& v) { return to_string(v); }
Json str(const BigInt& v) { return to_string(v); }
Json str(const ExtendedRational& v) { return to_string(v); }
Json rat(const Rational& v) { return to_string(v); }

// Germ lattice coordinates are bounded by the exponent ceiling.
Json small(const BigInt& v) {
  if (v.fits_slong_p()) return v.get_si();
  return to_string(v);
}

Json point(const LatticePoint& p) { return Json::array({str(p.i), str(p.j)}); }

template <class T, class F>
Json array_of(const std::vector<T>& xs, F&& f) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(f(x));
  return out;
}

template <class T, class F>
Json opt(const std::optional<T>& x, F&& f) {
  return x ? Json(f(*x)) : Json(nullptr);
}

std::string shape_name(RectangleShape s) {
  switch (s) {
    case RectangleShape::UpperBoundary: return "upper_boundary";
    case RectangleShape::Interior: return "interior";
    case RectangleShape::LowerBoundary: return "lower_boundary";
  }
  return "interior";
}

Json lemma(const LemmaCheck& l) {
  return Json{{"name", l.name}, {"holds", l.holds}, {"witness", opt(l.witness, point)}};
}

Json check(const CheckResult& c) {
  return Json{{"claim", c.claim},
              {"tag", c.tag},
              {"passed", c.passed},
              {"expected", c.expected},
              {"observed", c.observed}};
}

Json oracle(const OracleStep& o) {
  Json weights = Json::array();
  for (const auto& [l, w] : o.weights) weights.push_back({{"l", str(l)}, {"w", str(w)}});
  return Json{{"n", o.n},
              {"c_qn", str(o.c_qn)},
              {"c_fn", str(o.c_fn)},
              {"ord_z", o.ord_z},
              {"ord_w", o.ord_w},
              {"vertices", array_of(o.vertices, point)},
              {"weights", weights},
              {"dominant_coeff", str(o.dominant_coeff)},
              {"term_count", o.term_count}};
}

Json vertex(const VertexPrediction& v) {
  return Json{{"point", point(v.point)},
              {"tag", to_string(v.tag)},
              {"slope", str(v.slope)},
              {"delta_pow_vs_intercept", to_string(v.delta_pow_vs_intercept)}};
}

}  // namespace

Json to_json(const SparsePoly2& poly) {
  Json terms = Json::array();
  for (const auto& t : poly.terms()) terms.push_back({{"i", t.exp.i}, {"j", t.exp.j}, {"coeff", str(t.coeff)}});
  return Json{{"text", to_string(poly)}, {"terms", terms}};
}

Json to_json(const NewtonPolygon& polygon) {
  Json vs = Json::array();
  for (const auto& v : polygon.vertices) vs.push_back(Json::array({small(v.i), small(v.j)}));
  return Json{{"vertices", vs}, {"intercepts", array_of(polygon.intercepts, rat)}};
}

Json to_json(const WeightInterval& interval) {
  return Json{{"lower", str(interval.lower)},
              {"upper", str(interval.upper)},
              {"lower_closed", interval.lower_closed},
              {"upper_closed", interval.upper_closed},
              {"text", to_string(interval)}};
}

Json to_json(const CaseData& c) {
  return Json{{"case", to_string(c.kind)},
              {"delta", small(c.delta)},
              {"gamma", small(c.gamma())},
              {"d", small(c.d())},
              {"l1", str(c.l1)},
              {"l2", str(c.l2)},
              {"k", c.k ? Json(*c.k) : Json(nullptr)},
              {"alpha", opt(c.alpha, [](const Rational& a) { return str(a); })},
              {"delta_eq_T_upper", c.delta_eq_T_upper},
              {"delta_eq_T_lower", c.delta_eq_T_lower},
              {"applicable", array_of(c.applicable, [](CaseKind k) { return to_string(k); })},
              {"polygon", to_json(c.polygon)}};
}

Json to_json(const WeightIntervals& wi) {
  Json out{{"interval", Json::array({str(wi.I_f.lower), str(wi.I_f.upper)})},
           {"interval_detail", to_json(wi.I_f)}};
  if (wi.rectangle) {
    const WeightRectangle& r = *wi.rectangle;
    out["rectangle"] = Json{
        {"shape", shape_name(r.shape)},
        {"first", to_json(r.first)},
        {"sum_lower", str(r.sum_lower)},
        {"sum_upper", str(r.sum_upper)},
        {"excluded_corner",
         opt(r.excluded_corner, [](const RationalPoint& p) { return Json::array({str(p.x), str(p.y)}); })}};
  } else {
    out["rectangle"] = nullptr;
  }
  out["interval_AR"] = opt(wi.I_f_AR, [](const WeightInterval& i) { return to_json(i); });
  return out;
}

Json to_json(const Bracket& b) {
  return Json{{"lower", str(b.lower)},
              {"upper", str(b.upper)},
              {"lower_strict", b.lower_strict},
              {"upper_strict", b.upper_strict},
              {"exact", b.is_exact()},
              {"tag", b.tag},
              {"text", to_string(b)}};
}

Json to_json(const RatePrediction& p) {
  Json present = Json::array();
  for (const auto& [pt, tag] : p.present_terms) present.push_back({{"point", point(pt)}, {"tag", tag}});
  return Json{
      {"n", p.n},
      {"gamma_n", str(p.gamma_n)},
      {"d_n", str(p.d_pow_n)},
      {"delta_n", str(p.delta_pow_n)},
      {"dominant", point(p.dominant)},
      {"dominant_coeff", opt(p.dominant_coeff, [](const Rational& r) { return str(r); })},
      {"may_vanish", p.may_vanish},
      {"dominant_position", opt(p.dominant_position, [](DominantPosition d) { return to_string(d); })},
      {"c_qn", to_json(p.cqn)},
      {"c_fn", to_json(p.cfn)},
      {"c_fn_summary", array_of(p.cfn_summary, [](const Bracket& b) { return to_json(b); })},
      {"prev_vertex", opt(p.prev_vertex, vertex)},
      {"next_vertex", opt(p.next_vertex, vertex)},
      {"M_n_prev", opt(p.M_n_claim, [](SlopeClaim s) { return to_string(s); })},
      {"M_n_next", opt(p.M_n_next_claim, [](SlopeClaim s) { return to_string(s); })},
      {"ord_z", opt(p.ord_z, [](const BigInt& v) { return str(v); })},
      {"ord_w", opt(p.ord_w, [](const BigInt& v) { return str(v); })},
      {"present_terms", present},
      {"watched_term", opt(p.watched_term, point)}};
}

Json to_json(const AsymptoticRate& rate) {
  return Json{{"c_infinity", str(rate.c_infinity)},
              {"D_candidates", array_of(rate.D_candidates, rat)}};
}

Json to_json(const VerificationReport& rep) {
  Json readings = Json::array();
  for (const auto& r : rep.readings) {
    Json steps = Json::array();
    for (const auto& s : r.steps) {
      steps.push_back({{"oracle", oracle(s.oracle)},
                       {"prediction", to_json(s.prediction)},
                       {"checks", array_of(s.checks, check)}});
    }
    readings.push_back({{"classification", to_json(r.case_data)},
                        {"intervals", to_json(r.intervals)},
                        {"asymptotic", to_json(r.asymptotic)},
                        {"l_samples", array_of(r.l_samples, rat)},
                        {"absent_at", r.vanishing.absent},
                        {"steps", steps},
                        {"checks", array_of(r.checks, check)},
                        {"lemma_checks", array_of(r.lemma_checks, lemma)}});
  }
  Json findings = Json::array();
  for (const auto& f : rep.findings) {
    findings.push_back({{"kind", f.kind}, {"n", f.n ? Json(*f.n) : Json(nullptr)}, {"detail", f.detail}});
  }
  return Json{{"germ", {{"p", to_string(rep.germ.p())}, {"q", to_string(rep.germ.q())}}},
              {"n_max", rep.n_max},
              {"n_computed", rep.n_computed},
              {"checks_run", rep.checks_run()},
              {"failures", rep.failures()},
              {"passed", rep.passed()},
              {"resource_error", rep.resource_error ? Json(*rep.resource_error) : Json(nullptr)},
              {"findings", findings},
              {"readings", readings}};
}

Json to_json(const FuzzSummary& s) {
  const FuzzConfig& c = s.config;
  Json failures = Json::array();
  for (const auto& f : s.failure_list) {
    failures.push_back({{"index", f.index},
                        {"p", f.p},
                        {"q", f.q},
                        {"reading", f.reading},
                        {"claim", f.claim},
                        {"tag", f.tag},
                        {"expected", f.expected},
                        {"observed", f.observed}});
  }
  auto counts = [](const std::array<std::uint64_t, 4>& a) {
    return Json{{"Case1", a[0]}, {"Case2", a[1]}, {"Case3", a[2]}, {"Case4", a[3]}};
  };
  return Json{{"config",
               {{"seed", c.seed},
                {"count", c.germ_count},
                {"delta_max", c.delta_max},
                {"support_max", c.support_max},
                {"coeff_min", c.coeff_min},
                {"coeff_max", c.coeff_max},
                {"n_max", c.n_max},
                {"degree_cap", c.degree_cap},
                {"exponent_max", c.exponent_max},
                {"boundary_bias_pct", c.boundary_bias_pct},
                {"vanishing_bias_pct", c.vanishing_bias_pct},
                {"coverage_cap", c.coverage_cap}}},
              {"generator", s.generator},
              {"germs_generated", s.germs_generated},
              {"germs_verified", s.germs_verified},
              {"skipped_resource", s.skipped_resource},
              {"coverage_draws", s.coverage_draws},
              {"primary_cases", counts(s.primary_case_counts)},
              {"readings", counts(s.reading_counts)},
              {"boundary_germs", s.boundary_germs},
              {"vanishing_events", s.vanishing_events},
              {"checks_run", s.checks_run},
              {"failures", s.failures},
              {"findings", s.findings},
              {"coefficient_mismatches", s.coefficient_mismatches},
              {"coverage_met", s.coverage_met},
              {"failure_list", failures}};
}

IterateReport iterate_report(const SkewGerm& f, std::uint64_t n, const Limits& limits) {
  if (n == 0) throw DomainError("n must be positive");
  SkewGerm fn = iterate_germ(f, n, limits);
  const Orders qo = orders(fn.q());
  const std::uint64_t c_fn = std::min(orders(fn.p()).c, qo.c);
  NewtonPolygon poly = newton_polygon(fn.q());
  return IterateReport{n, std::move(fn), std::move(poly), qo, c_fn};
}

Json to_json(const IterateReport& it) {
  return Json{{"n", it.n},
              {"p_n", to_json(it.fn.p())},
              {"q_n", to_json(it.fn.q())},
              {"polygon", to_json(it.polygon)},
              {"c_qn", it.q_orders.c},
              {"ord_z", it.q_orders.ord_z},
              {"ord_w", it.q_orders.ord_w},
              {"c_pn", orders(it.fn.p()).c},
              {"c_fn", it.c_fn}};
}

}  // namespace skewrate
