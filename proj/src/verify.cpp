#include "skewrate/verify.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "skewrate/errors.hpp"
#include "skewrate/sequences.hpp"

namespace skewrate {

namespace {

bool contains(const SparsePoly2& q, const LatticePoint& p) {
  if (!p.i.fits_ulong_p() || !p.j.fits_ulong_p() || p.i < 0 || p.j < 0) return false;
  return q.contains(Exponent{p.i.get_ui(), p.j.get_ui()});
}

Rational coefficient_at(const SparsePoly2& q, const LatticePoint& p) {
  if (!p.i.fits_ulong_p() || !p.j.fits_ulong_p() || p.i < 0 || p.j < 0) return Rational(0);
  return q.coefficient(Exponent{p.i.get_ui(), p.j.get_ui()});
}

std::string yes_no(bool b) { return b ? "present" : "absent"; }

class Checks {
 public:
  explicit Checks(std::vector<CheckResult>& out) : out_(out) {}

  void expect(std::string claim, std::string tag, bool ok, std::string expected,
              std::string observed) {
    out_.push_back({std::move(claim), std::move(tag), ok, std::move(expected), std::move(observed)});
  }

 private:
  std::vector<CheckResult>& out_;
};

// Endpoints that belong to the interval, plus one interior point.
std::vector<Rational> sample_points(const WeightInterval& I) {
  std::vector<Rational> out;
  if (I.lower.is_finite() && I.lower_closed) out.push_back(I.lower.value());
  if (I.upper.is_finite() && I.upper_closed) out.push_back(I.upper.value());
  if (I.lower.is_finite() && I.upper.is_finite()) {
    if (I.lower.value() < I.upper.value()) out.push_back((I.lower.value() + I.upper.value()) / 2);
  } else if (I.lower.is_finite()) {
    out.push_back(I.lower.value() + 1);
  }
  std::vector<Rational> kept;
  for (auto& l : out) {
    l.canonicalize();
    if (l > 0 && I.contains(l) && std::find(kept.begin(), kept.end(), l) == kept.end())
      kept.push_back(l);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

// Up to `limit` positive integers in I.
std::vector<std::uint64_t> integers_in(const WeightInterval& I, std::size_t limit) {
  std::vector<std::uint64_t> out;
  if (I.empty()) return out;
  BigInt k = 1;
  if (I.lower.is_finite()) {
    const Rational& lo = I.lower.value();
    BigInt ceil_lo;
    mpz_cdiv_q(ceil_lo.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    k = std::max(k, ceil_lo);
  }
  for (std::size_t tries = 0; out.size() < limit && tries < limit + 2; ++tries, ++k) {
    if (I.upper.is_finite() && Rational(k) > I.upper.value()) break;
    if (I.contains(Rational(k)) && k.fits_ulong_p()) out.push_back(k.get_ui());
  }
  return out;
}

// Up to `limit` positive integers L with 1/L in I.
std::vector<std::uint64_t> integer_inverses_in(const WeightInterval& I, std::size_t limit) {
  std::vector<std::uint64_t> out;
  if (I.empty()) return out;
  BigInt L = 1;
  if (I.upper.is_finite()) {
    const Rational inv = 1 / I.upper.value();
    BigInt ceil_inv;
    mpz_cdiv_q(ceil_inv.get_mpz_t(), inv.get_num_mpz_t(), inv.get_den_mpz_t());
    L = std::max(L, ceil_inv);
  }
  for (std::size_t tries = 0; out.size() < limit && tries < limit + 2; ++tries, ++L) {
    const Rational l(BigInt(1), L);
    if (I.lower.is_finite() && l < I.lower.value()) break;
    if (I.contains(l) && L.fits_ulong_p()) out.push_back(L.get_ui());
  }
  return out;
}

void tag_lemmas(std::vector<LemmaCheck>& out, std::vector<LemmaCheck> checks, const std::string& at) {
  for (auto& c : checks) {
    c.name += at;
    out.push_back(std::move(c));
  }
}

std::string label(const CaseData& c) {
  std::string s = to_string(c.kind);
  if (c.k) s += "[k=" + std::to_string(*c.k) + "]";
  return s;
}

// Position of p in the vertex chain, or npos.
std::size_t index_of(const std::vector<LatticePoint>& vs, const LatticePoint& p) {
  for (std::size_t k = 0; k < vs.size(); ++k)
    if (vs[k] == p) return k;
  return std::string::npos;
}

std::string vertex_list(const std::vector<LatticePoint>& vs) {
  std::string s;
  for (const auto& v : vs) s += to_string(v);
  return s;
}

void check_vertex(Checks& chk, const std::string& side, const VertexPrediction& v,
                  const RatePrediction& pred, const std::vector<LatticePoint>& vs) {
  const std::string tag = "vertex." + to_string(v.tag);
  const std::size_t at = index_of(vs, pred.dominant);
  const bool prev = side == "prev";
  std::optional<LatticePoint> neighbour;
  if (at != std::string::npos) {
    if (prev && at > 0) neighbour = vs[at - 1];
    if (!prev && at + 1 < vs.size()) neighbour = vs[at + 1];
  }
  chk.expect("vertex." + side, tag, neighbour && *neighbour == v.point, to_string(v.point),
             neighbour ? to_string(*neighbour) : std::string("none in ") + vertex_list(vs));

  const Rational G(pred.gamma_n), E(pred.d_pow_n);
  const Rational dx = G - Rational(v.point.i);
  if (dx != 0) {
    const Rational slope = (E - Rational(v.point.j)) / dx;
    chk.expect("vertex." + side + ".slope", tag, slope == v.slope, to_string(v.slope),
               to_string(slope));
  }
  const Rational intercept = E - v.slope * G;
  const Rational dn(pred.delta_pow_n);
  InterceptRelation rel = dn < intercept   ? InterceptRelation::Less
                          : dn == intercept ? InterceptRelation::Equal
                                            : InterceptRelation::Greater;
  chk.expect("vertex." + side + ".intercept", tag, rel == v.delta_pow_vs_intercept,
             "delta^n " + to_string(v.delta_pow_vs_intercept) + " than intercept",
             to_string(dn) + " vs " + to_string(intercept));
}

struct SlopeObservation {
  ExtendedRational prev;  // +inf without a previous vertex
  Rational next;          // 0 without a next vertex
};

SlopeObservation observe_slopes(const std::vector<LatticePoint>& vs, std::size_t at,
                                const RatePrediction& pred) {
  SlopeObservation o{ExtendedRational::infinity(), Rational(0)};
  const Rational G(pred.gamma_n), E(pred.d_pow_n);
  if (at > 0) {
    const auto& a = vs[at - 1];
    o.prev = ExtendedRational((Rational(a.j) - E) / (G - Rational(a.i)));
  }
  if (at + 1 < vs.size()) {
    const auto& b = vs[at + 1];
    o.next = (E - Rational(b.j)) / (Rational(b.i) - G);
  }
  return o;
}

StepRecord verify_step(const SkewGerm& f, const CaseData& c, const SkewGerm& fn, std::uint64_t n,
                       const ReadingReport& rr, std::vector<Finding>& findings) {
  StepRecord rec;
  const SparsePoly2& Qn = fn.q();
  OracleStep& o = rec.oracle;
  o.n = n;
  const Orders ord = orders(Qn);
  o.c_qn = Rational(static_cast<unsigned long>(ord.c));
  o.c_fn = std::min<Rational>(Rational(static_cast<unsigned long>(orders(fn.p()).c)), o.c_qn);
  o.ord_z = ord.ord_z;
  o.ord_w = ord.ord_w;
  o.vertices = newton_polygon(Qn).vertices;
  o.term_count = Qn.size();
  for (const auto& l : rr.l_samples) o.weights.emplace_back(l, weight(Qn, l));

  rec.prediction = predict(f, c, n, rr.vanishing);
  const RatePrediction& pred = rec.prediction;
  o.dominant_coeff = coefficient_at(Qn, pred.dominant);
  Checks chk(rec.checks);
  const std::string dom = to_string(pred.dominant);
  const bool present = o.dominant_coeff != 0;

  if (!pred.may_vanish) {
    chk.expect("dominant.present", "weights.dominant_term", present, dom + " present",
               yes_no(present));
    if (pred.dominant_coeff && present && *pred.dominant_coeff != o.dominant_coeff) {
      findings.push_back({"coefficient_mismatch", n,
                          label(c) + ": coefficient of " + dom + " is " + to_string(o.dominant_coeff) +
                              ", remark gives " + to_string(*pred.dominant_coeff)});
    }
  }

  for (const auto& [l, w] : o.weights) {
    const WeightClaim claim = predict_weight(c, n, l);
    chk.expect("weight@l=" + to_string(l), "weights.equality", claim.value == w,
               to_string(claim.value), to_string(w));
  }

  chk.expect("c(Q^n)", pred.cqn.tag, pred.cqn.holds(o.c_qn), to_string(pred.cqn, "c"),
             to_string(o.c_qn));
  chk.expect("c(f^n)", pred.cfn.tag, pred.cfn.holds(o.c_fn), to_string(pred.cfn, "c"),
             to_string(o.c_fn));
  for (const auto& b : pred.cfn_summary)
    chk.expect("c(f^n).summary", b.tag, b.holds(o.c_fn), to_string(b, "c"), to_string(o.c_fn));

  if (pred.prev_vertex) check_vertex(chk, "prev", *pred.prev_vertex, pred, o.vertices);
  if (pred.next_vertex) check_vertex(chk, "next", *pred.next_vertex, pred, o.vertices);

  const std::size_t at = index_of(o.vertices, pred.dominant);
  if (pred.M_n_claim || pred.M_n_next_claim) {
    if (at == std::string::npos) {
      chk.expect("slope.vertex", "slope.M_n", false, dom + " is a vertex", vertex_list(o.vertices));
    } else {
      const SlopeObservation s = observe_slopes(o.vertices, at, pred);
      if (pred.M_n_claim) {
        const ExtendedRational M(1 / c.l1);
        const bool ok = *pred.M_n_claim == SlopeClaim::EqualsM ? s.prev == M : s.prev > M;
        chk.expect("slope.prev", "slope.M_n." + to_string(*pred.M_n_claim), ok,
                   to_string(*pred.M_n_claim) + " with M = " + to_string(M), to_string(s.prev));
      }
      if (pred.M_n_next_claim) {
        const Rational M = 1 / c.l1_plus_l2().value();
        chk.expect("slope.next", "slope.M_n." + to_string(*pred.M_n_next_claim), s.next <= M,
                   "at_most " + to_string(M), to_string(s.next));
      }
    }
  }

  if (pred.ord_z) {
    chk.expect("ord_z", "order.z", *pred.ord_z == BigInt(static_cast<unsigned long>(o.ord_z)),
               to_string(*pred.ord_z), std::to_string(o.ord_z));
  }
  if (pred.ord_w) {
    chk.expect("ord_w", "order.w", *pred.ord_w == BigInt(static_cast<unsigned long>(o.ord_w)),
               to_string(*pred.ord_w), std::to_string(o.ord_w));
  }

  if (pred.dominant_position) {
    bool ok = at != std::string::npos;
    switch (*pred.dominant_position) {
      case DominantPosition::Only: ok = ok && o.vertices.size() == 1; break;
      case DominantPosition::First: ok = ok && at == 0; break;
      case DominantPosition::Last: ok = ok && at + 1 == o.vertices.size(); break;
      case DominantPosition::Some: break;
    }
    chk.expect("position", "position." + to_string(*pred.dominant_position), ok,
               dom + " " + to_string(*pred.dominant_position), vertex_list(o.vertices));
  }

  for (const auto& [pt, tag] : pred.present_terms) {
    const bool here = contains(Qn, pt);
    chk.expect("term " + to_string(pt), tag, here, "present", yes_no(here));
  }
  return rec;
}

std::vector<LemmaCheck> blowup_checks(const SkewGerm& f, const CaseData& c,
                                      const std::vector<SkewGerm>& iterates, const Limits& limits,
                                      std::vector<Finding>& findings) {
  std::vector<LemmaCheck> out;
  const WeightIntervals wi = weight_intervals(c);
  auto guarded = [&](const std::string& what, auto&& body) {
    try {
      body();
    } catch (const ResourceError& e) {
      findings.push_back({"resource", std::nullopt, label(c) + " " + what + ": " + e.what()});
    } catch (const DomainError& e) {
      out.push_back({what + ": " + e.what(), false, std::nullopt});
    }
  };

  if (c.kind == CaseKind::Case2 || c.kind == CaseKind::Case4) {
    const WeightInterval& first = c.kind == CaseKind::Case2 ? wi.I_f : wi.rectangle->first;
    for (const std::uint64_t l : integers_in(first, 3)) {
      const std::string at = "@l=" + std::to_string(l);
      guarded("pi1" + at, [&] {
        const BlowupReport r = conjugate_pi1(f, c, l, limits);
        tag_lemmas(out, r.lemma_checks, at);
        if (r.transformed && f.p().size() == 1 && iterates.size() >= 2) {
          LemmaCheck k = check_conjugacy_pi1(f, c, l, 2, limits);
          k.name += at;
          out.push_back(std::move(k));
        }
        if (c.kind != CaseKind::Case4 || !r.transformed) return;
        for (const auto& t : classify_all(*r.transformed)) {
          if (t.kind != CaseKind::Case3 || !(t.gamma_d == r.expected_vertex)) continue;
          for (const std::uint64_t L : integer_inverses_in(weight_intervals(t).I_f, 2)) {
            const std::string at2 = at + ",1/l=" + std::to_string(L);
            guarded("pi2" + at2, [&] { tag_lemmas(out, conjugate_pi2(*r.transformed, t, L).lemma_checks, at2); });
          }
        }
      });
    }
  }
  if (c.kind == CaseKind::Case3) {
    for (const std::uint64_t L : integer_inverses_in(wi.I_f, 3)) {
      const std::string at = "@1/l=" + std::to_string(L);
      guarded("pi2" + at, [&] { tag_lemmas(out, conjugate_pi2(f, c, L).lemma_checks, at); });
    }
  }
  return out;
}

ReadingReport verify_reading(const SkewGerm& f, const CaseData& c,
                             const std::vector<SkewGerm>& iterates, const VerifyOptions& opt,
                             std::vector<Finding>& findings) {
  ReadingReport rr;
  rr.case_data = c;
  rr.intervals = weight_intervals(c);
  rr.asymptotic = asymptotic(c);
  const WeightInterval range = weight_equality_range(c);
  rr.l_samples = sample_points(range);
  for (const auto& l : opt.extra_l) {
    if (l > 0 && range.contains(l)) {
      if (std::find(rr.l_samples.begin(), rr.l_samples.end(), l) == rr.l_samples.end())
        rr.l_samples.push_back(l);
    } else {
      findings.push_back({"weight_outside_range", std::nullopt,
                          label(c) + ": l = " + to_string(l) + " is outside " + to_string(range)});
    }
  }
  std::sort(rr.l_samples.begin(), rr.l_samples.end());

  const std::uint64_t N = iterates.size();
  for (std::uint64_t n = 1; n <= N; ++n) {
    const auto w = watched_term(c, n);
    if (w && !contains(iterates[n - 1].q(), *w)) rr.vanishing.absent.push_back(n);
  }
  if (auto n0 = rr.vanishing.first_absent_n()) {
    findings.push_back({"vanishing", *n0,
                        label(c) + ": watched term " + to_string(*watched_term(c, *n0)) +
                            " absent from n = " + std::to_string(*n0)});
  }

  for (std::uint64_t n = 2; n <= N; ++n) {
    if (rr.vanishing.absent_at(n - 1) && !rr.vanishing.absent_at(n)) {
      findings.push_back({"reappearance", n,
                          label(c) + ": watched term " + to_string(*watched_term(c, n)) +
                              " present again at n = " + std::to_string(n)});
    }
  }

  for (std::uint64_t n = 1; n <= N; ++n)
    rr.steps.push_back(verify_step(f, c, iterates[n - 1], n, rr, findings));

  Checks chk(rr.checks);
  if (c.kind == CaseKind::Case2 && c.d() > 0) {
    for (std::uint64_t n = 2; n <= std::min<std::uint64_t>(N, 3); ++n) {
      bool same = false;
      for (const auto& alt : classify_all(iterates[n - 1])) {
        if (alt.kind == CaseKind::Case2 && weight_intervals(alt).I_f == rr.intervals.I_f) same = true;
      }
      chk.expect("interval.stable@n=" + std::to_string(n), "interval.iterate", same,
                 to_string(rr.intervals.I_f), same ? to_string(rr.intervals.I_f) : "differs");
    }
  }
  if (c.kind == CaseKind::Case2 && c.d() == 0 && c.delta_eq_T_upper && N >= 2) {
    const VanishingSum vs = vanishing_sum(f, c);
    const LatticePoint g2{gamma_n(c.delta, c.gamma(), c.d(), 2), BigInt(0)};
    const Rational coeff = coefficient_at(iterates[1].q(), g2);
    chk.expect("vanishing.edge_sum", "vanishing.edge_sum", vs.sum == coeff, to_string(vs.sum),
               to_string(coeff));
    chk.expect("vanishing.trigger", "vanishing.edge_sum", vs.triggers == rr.vanishing.absent_at(2),
               vs.triggers ? "absent at n = 2" : "present at n = 2",
               rr.vanishing.absent_at(2) ? "absent" : "present");
  }

  switch (c.kind) {
    case CaseKind::Case2:
      for (const auto& l : sample_points(rr.intervals.I_f))
        tag_lemmas(rr.lemma_checks, lattice_lemma_case2(f, c, l), "@l=" + to_string(l));
      break;
    case CaseKind::Case3:
      for (const auto& l : sample_points(rr.intervals.I_f))
        tag_lemmas(rr.lemma_checks, lattice_lemma_case3(f, c, l), "@l=" + to_string(l));
      break;
    case CaseKind::Case4: {
      tag_lemmas(rr.lemma_checks, composite_line_checks(c), "");
      const WeightRectangle& rect = *rr.intervals.rectangle;
      for (const auto& x : sample_points(rect.first)) {
        for (const auto& y : sample_points(rect.second_of(x))) {
          const std::string at = "@(" + to_string(x) + "," + to_string(y) + ")";
          try {
            tag_lemmas(rr.lemma_checks, lattice_lemma_case4(f, c, x, y), at);
          } catch (const DomainError& e) {
            rr.lemma_checks.push_back({"rectangle.second_of" + at + ": " + e.what(), false, std::nullopt});
          }
        }
      }
      break;
    }
    case CaseKind::Case1:
      break;
  }
  if (opt.blowups) {
    auto more = blowup_checks(f, c, iterates, opt.limits, findings);
    rr.lemma_checks.insert(rr.lemma_checks.end(), more.begin(), more.end());
  }
  return rr;
}

}  // namespace

std::size_t VerificationReport::checks_run() const {
  std::size_t total = 0;
  for (const auto& r : readings) {
    for (const auto& s : r.steps) total += s.checks.size();
    total += r.checks.size() + r.lemma_checks.size();
  }
  return total;
}

std::size_t VerificationReport::failures() const {
  std::size_t total = 0;
  auto failed = [](const CheckResult& c) { return !c.passed; };
  for (const auto& r : readings) {
    for (const auto& s : r.steps) total += std::count_if(s.checks.begin(), s.checks.end(), failed);
    total += std::count_if(r.checks.begin(), r.checks.end(), failed);
    total += std::count_if(r.lemma_checks.begin(), r.lemma_checks.end(),
                           [](const LemmaCheck& c) { return !c.holds; });
  }
  return total;
}

bool VerificationReport::boundary() const {
  return std::any_of(readings.begin(), readings.end(), [](const ReadingReport& r) {
    return r.case_data.delta_eq_T_upper || r.case_data.delta_eq_T_lower;
  });
}

bool VerificationReport::vanishing_event() const {
  return std::any_of(readings.begin(), readings.end(),
                     [](const ReadingReport& r) { return !r.vanishing.absent.empty(); });
}

VerificationReport verify_germ(const SkewGerm& f, const VerifyOptions& opt) {
  if (opt.n_max == 0) throw DomainError("n_max must be positive");
  VerificationReport rep{f, opt.n_max, 0, {}, {}, std::nullopt};
  IterateSequence seq = iterate_sequence(f, opt.n_max, opt.limits);
  rep.n_computed = seq.iterates.size();
  if (seq.resource_error) {
    rep.resource_error = seq.resource_error;
    rep.findings.push_back({"resource", rep.n_computed + 1, *seq.resource_error});
  }
  for (const auto& c : classify_all(f))
    rep.readings.push_back(verify_reading(f, c, seq.iterates, opt, rep.findings));
  return rep;
}

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max()
                                                          : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

}  // namespace

std::uint64_t degree_bound(const SkewGerm& f, std::uint64_t n) {
  const std::uint64_t dp = f.p().total_degree();
  std::uint64_t p_k = dp;  // deg p^k
  std::uint64_t q_k = f.q().total_degree();
  for (std::uint64_t k = 1; k < n; ++k) {
    std::uint64_t next = 0;
    for (const auto& t : f.q().terms())
      next = std::max(next, sat_add(sat_mul(t.exp.i, p_k), sat_mul(t.exp.j, q_k)));
    q_k = next;
    p_k = sat_mul(p_k, dp);
  }
  return q_k;
}

GermGenerator::GermGenerator(const FuzzConfig& config) : config_(config), rng_(config.seed) {
  if (config.delta_max == 0 || config.support_max == 0 || config.exponent_max == 0)
    throw DomainError("fuzz bounds must be positive");
  if (config.coeff_min > config.coeff_max || (config.coeff_min == 0 && config.coeff_max == 0))
    throw DomainError("coefficient range must contain a nonzero integer");
}

std::uint64_t GermGenerator::below(std::uint64_t bound) {
  // Rejection keeps the draw uniform and the sequence platform-independent.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng_();
  } while (x >= limit);
  return x % bound;
}

std::int64_t GermGenerator::coefficient() {
  const std::int64_t lo = config_.coeff_min, hi = config_.coeff_max;
  const bool has_zero = lo <= 0 && 0 <= hi;
  const auto span = static_cast<std::uint64_t>(hi - lo + 1) - (has_zero ? 1 : 0);
  std::int64_t v = lo + static_cast<std::int64_t>(below(span));
  if (has_zero && v >= 0) ++v;
  return v;
}

SparsePoly2 GermGenerator::draw_p(std::uint64_t delta) {
  std::vector<Term> terms{{Exponent{delta, 0}, Rational(coefficient())}};
  if (below(4) == 0) terms.push_back({Exponent{delta + 1, 0}, Rational(coefficient())});
  return SparsePoly2::from_terms(std::move(terms));
}

SkewGerm GermGenerator::random() {
  const std::uint64_t delta = 1 + below(config_.delta_max);
  const SparsePoly2 p = draw_p(delta);
  for (;;) {
    const std::uint64_t k = 1 + below(config_.support_max);
    std::vector<Term> terms;
    for (std::uint64_t m = 0; m < k; ++m) {
      const std::uint64_t total = 1 + below(config_.exponent_max);
      const std::uint64_t i = below(total + 1);
      terms.push_back({Exponent{i, total - i}, Rational(coefficient())});
    }
    SparsePoly2 q = SparsePoly2::from_terms(std::move(terms));
    if (!q.is_zero()) return SkewGerm(p, std::move(q));
  }
}

SkewGerm GermGenerator::boundary() {
  const std::uint64_t delta = 1 + below(config_.delta_max);
  const SparsePoly2 p = draw_p(delta);
  // Edge on the line v i + u j = u delta through lattice points (u t, delta - v t).
  const std::uint64_t u = 1 + below(2);
  std::uint64_t v = 1 + below(std::min<std::uint64_t>(delta, 2));
  const std::uint64_t t_max = delta / v;
  const std::uint64_t t1 = below(t_max);
  const std::uint64_t t2 = t1 + 1 + below(t_max - t1);
  std::vector<Term> terms{{Exponent{u * t1, delta - v * t1}, Rational(coefficient())},
                          {Exponent{u * t2, delta - v * t2}, Rational(coefficient())}};
  const std::uint64_t extra = below(config_.support_max > 2 ? config_.support_max - 1 : 1);
  for (std::uint64_t m = 0; m < extra; ++m) {
    const std::uint64_t total = 1 + below(config_.exponent_max + 1);
    const std::uint64_t i = below(total + 1);
    const std::uint64_t j = total - i;
    if (v * i + u * j > u * delta) terms.push_back({Exponent{i, j}, Rational(coefficient())});
  }
  return SkewGerm(p, SparsePoly2::from_terms(std::move(terms)));
}

std::optional<SkewGerm> GermGenerator::vanishing() {
  const std::uint64_t delta = 1 + below(config_.delta_max);
  const SparsePoly2 p = draw_p(delta);
  const Rational a = p.terms().front().coeff;
  // Last edge ends at (gamma, 0): v divides delta, gamma = u delta / v.
  std::vector<std::uint64_t> divisors;
  for (std::uint64_t v = 1; v <= delta; ++v)
    if (delta % v == 0) divisors.push_back(v);
  const std::uint64_t v = divisors[below(divisors.size())];
  const std::uint64_t u = 1 + below(2);
  const std::uint64_t t2 = delta / v;
  const std::uint64_t t1 = below(t2);
  const Exponent last{u * t2, 0};
  const Exponent other{u * t1, delta - v * t1};

  std::vector<Term> terms{{last, Rational(coefficient())}};
  for (std::uint64_t t = t1 + 1; t < t2; ++t) {
    if (below(2) == 0) terms.push_back({Exponent{u * t, delta - v * t}, Rational(coefficient())});
  }
  const Rational b_g0 = terms.front().coeff;
  // Edge sum a^I b_IJ b_g0^J over the edge; solve for the coefficient at `other`.
  Rational rest;
  auto contribution = [&](const Exponent& e, const Rational& b) -> Rational {
    Rational x = b;
    for (std::uint64_t k = 0; k < e.i; ++k) x *= a;
    for (std::uint64_t k = 0; k < e.j; ++k) x *= b_g0;
    return x;
  };
  for (const auto& t : terms) rest += contribution(t.exp, t.coeff);
  const Rational unit = contribution(other, Rational(1));
  const Rational solved = -rest / unit;
  if (solved == 0 || !is_integer(solved) || solved < config_.coeff_min || solved > config_.coeff_max)
    return std::nullopt;
  terms.push_back({other, solved});

  const std::uint64_t extra = below(config_.support_max > 2 ? config_.support_max - 1 : 1);
  for (std::uint64_t m = 0; m < extra; ++m) {
    const std::uint64_t total = 1 + below(config_.exponent_max + 1);
    const std::uint64_t i = below(total + 1);
    const std::uint64_t j = total - i;
    if (v * i + u * j > u * delta) terms.push_back({Exponent{i, j}, Rational(coefficient())});
  }
  return SkewGerm(p, SparsePoly2::from_terms(std::move(terms)));
}

SkewGerm GermGenerator::next() {
  const std::uint64_t r = below(100);
  if (r < config_.vanishing_bias_pct) {
    if (auto g = vanishing()) return *g;
    return boundary();
  }
  if (r < config_.vanishing_bias_pct + config_.boundary_bias_pct) return boundary();
  return random();
}

namespace {

struct Coverage {
  std::array<bool, 4> cases{};
  bool boundary = false;
  bool vanishing = false;

  bool met() const {
    return boundary && vanishing && std::all_of(cases.begin(), cases.end(), [](bool b) { return b; });
  }
};

void accumulate(FuzzSummary& sum, Coverage& cov, std::uint64_t index, const SkewGerm& g,
                const std::optional<VerificationReport>& rep, bool skipped) {
  ++sum.germs_generated;
  if (skipped || !rep) {
    ++sum.skipped_resource;
    return;
  }
  if (rep->resource_error) ++sum.skipped_resource;
  ++sum.germs_verified;
  const auto kind_index = [](CaseKind k) { return static_cast<std::size_t>(k) - 1; };
  if (!rep->readings.empty()) ++sum.primary_case_counts[kind_index(rep->readings.front().case_data.kind)];
  for (const auto& r : rep->readings) {
    ++sum.reading_counts[kind_index(r.case_data.kind)];
    cov.cases[kind_index(r.case_data.kind)] = true;
  }
  if (rep->boundary()) {
    ++sum.boundary_germs;
    cov.boundary = true;
  }
  if (rep->vanishing_event()) {
    ++sum.vanishing_events;
    cov.vanishing = true;
  }
  sum.checks_run += rep->checks_run();
  sum.failures += rep->failures();
  sum.findings += rep->findings.size();
  for (const auto& f : rep->findings)
    if (f.kind == "coefficient_mismatch") ++sum.coefficient_mismatches;

  auto record = [&](const std::string& reading, const std::string& claim, const std::string& tag,
                    const std::string& expected, const std::string& observed) {
    if (sum.failure_list.size() >= 20) return;
    sum.failure_list.push_back(
        {index, to_string(g.p()), to_string(g.q()), reading, claim, tag, expected, observed});
  };
  for (const auto& r : rep->readings) {
    const std::string reading = label(r.case_data);
    for (const auto& s : r.steps)
      for (const auto& c : s.checks)
        if (!c.passed) record(reading, c.claim + "@n=" + std::to_string(s.oracle.n), c.tag, c.expected, c.observed);
    for (const auto& c : r.checks)
      if (!c.passed) record(reading, c.claim, c.tag, c.expected, c.observed);
    for (const auto& c : r.lemma_checks)
      if (!c.holds) record(reading, c.name, "lemma", "holds", c.witness ? to_string(*c.witness) : "");
  }
}

void run_batch(const std::vector<SkewGerm>& batch, const FuzzConfig& config, FuzzSummary& sum,
               Coverage& cov) {
  const std::int64_t count = static_cast<std::int64_t>(batch.size());
  std::vector<std::optional<VerificationReport>> reports(batch.size());
  std::vector<char> skipped(batch.size(), 0);
  VerifyOptions opt;
  opt.n_max = config.n_max;
  opt.limits.max_degree = std::max<std::uint64_t>(config.degree_cap, 1);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t k = 0; k < count; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    if (degree_bound(batch[idx], config.n_max) > config.degree_cap) {
      skipped[idx] = 1;
      continue;
    }
    try {
      reports[idx] = verify_germ(batch[idx], opt);
    } catch (const std::exception&) {
      skipped[idx] = 1;
    }
  }
  for (std::size_t k = 0; k < batch.size(); ++k)
    accumulate(sum, cov, sum.germs_generated, batch[k], reports[k], skipped[k] != 0);
}

}  // namespace

FuzzSummary fuzz(const FuzzConfig& config) {
  FuzzSummary sum;
  sum.config = config;
  if (config.germ_count == 0) return sum;

  GermGenerator gen(config);
  Coverage cov;
  std::vector<SkewGerm> batch;
  batch.reserve(config.germ_count);
  for (std::uint64_t k = 0; k < config.germ_count; ++k) batch.push_back(gen.next());
  run_batch(batch, config, sum, cov);

  // Coverage phase: targeted draws for whatever has not been exercised yet.
  while (!cov.met() && sum.coverage_draws < config.coverage_cap) {
    batch.clear();
    for (int k = 0; k < 16 && sum.coverage_draws < config.coverage_cap; ++k) {
      ++sum.coverage_draws;
      if (!cov.vanishing) {
        if (auto g = gen.vanishing()) {
          batch.push_back(*g);
          continue;
        }
      }
      if (!cov.boundary) {
        batch.push_back(gen.boundary());
        continue;
      }
      // Missing case kinds: keep only draws that have the wanted reading.
      const SkewGerm g = k % 2 == 0 ? gen.random() : gen.boundary();
      bool wanted = false;
      for (const auto& c : classify_all(g))
        if (!cov.cases[static_cast<std::size_t>(c.kind) - 1]) wanted = true;
      if (wanted) batch.push_back(g);
    }
    if (!batch.empty()) run_batch(batch, config, sum, cov);
  }
  sum.coverage_met = cov.met();
  return sum;
}

}  // namespace skewrate
