// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "skewrate/blowup.hpp"
#include "skewrate/cli.hpp"
#include "skewrate/verify.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace skewrate;

namespace {

struct Outcome {
  bool ok = true;
  std::string why;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Rational coeff(const oracle::Poly& q, const LatticePoint& pt) {
  const auto it = q.find({pt.i.get_ui(), pt.j.get_ui()});
  return it == q.end() ? Rational(0) : it->second;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 1: fixture suite with pinned values.
Outcome fixture_suite() {
  Outcome o;
  for (std::size_t k = 1; k <= 5; ++k) {
    VerifyOptions opt;
    opt.n_max = 4;
    const VerificationReport rep = verify_germ(fixtures::get(k), opt);
    o.require(rep.n_computed == 4, "g" + std::to_string(k) + " stopped at n = " + std::to_string(rep.n_computed));
    o.require(rep.passed(), "g" + std::to_string(k) + ": " + std::to_string(rep.failures()) + " failed checks");
  }

  const SkewGerm g2 = fixtures::get(2);
  const auto [p2, q2] = oracle::iterate(oracle::from(g2.p()), oracle::from(g2.q()), 2);
  const RatePrediction r2 = predict(g2, classify(g2), 2);
  o.require(oracle::total_order(q2) == 8, "G2 oracle c(Q^2) != 8");
  o.require(r2.cqn.lower == Rational(11, 2) && r2.cqn.upper == 10 && r2.cqn.lower_strict && r2.cqn.upper_strict,
            "G2 bracket is not 11/2 < c < 10");
  o.require(r2.cqn.holds(Rational(8)), "G2 bracket misses 8");
  o.require(r2.prev_vertex && r2.prev_vertex->point == LatticePoint{7, 2}, "G2 prev vertex != (7,2)");
  const auto h2 = oracle::hull_vertices(q2);
  o.require(h2.size() == 3 && h2[1] == oracle::Key{7, 2} && h2[2] == oracle::Key{9, 1},
            "G2 oracle polygon does not have (7,2) before (9,1)");

  const SkewGerm g3 = fixtures::get(3);
  const auto [p3, q3] = oracle::iterate(oracle::from(g3.p()), oracle::from(g3.q()), 2);
  const RatePrediction r3 = predict(g3, classify(g3), 2);
  o.require(r3.next_vertex && r3.next_vertex->point == LatticePoint{2, 2}, "G3 next vertex != (2,2)");
  const auto h3 = oracle::hull_vertices(q3);
  o.require(h3.size() >= 2 && h3[0] == oracle::Key{0, 4} && h3[1] == oracle::Key{2, 2},
            "G3 oracle polygon does not have (2,2) after (0,4)");

  const SkewGerm g4 = fixtures::get(4);
  const auto [p4, q4] = oracle::iterate(oracle::from(g4.p()), oracle::from(g4.q()), 2);
  const RatePrediction r4 = predict(g4, classify(g4), 2);
  o.require(oracle::total_order(q4) == 4 && r4.cqn.is_exact() && r4.cqn.lower == 4, "G4 c(Q^2) = 4 exact");

  const SkewGerm g5 = fixtures::get(5);
  const auto [p5, q5] = oracle::iterate(oracle::from(g5.p()), oracle::from(g5.q()), 2);
  VerifyOptions opt;
  opt.n_max = 2;
  const VerificationReport rep5 = verify_germ(g5, opt);
  o.require(rep5.readings.front().vanishing.first_absent_n() == 2u, "G5 vanishing not at n0 = 2");
  o.require(coeff(q5, {4, 0}) == 0, "G5 oracle still has z^4");
  const CaseData c5 = classify(g5);
  o.require(oracle::weight(q5, c5.l1) == 4 && predict_weight(c5, 2, c5.l1).value == 4, "G5 w_l1(Q^2) != 4");
  return o;
}

// 2: monomial germs against the estimate tables.
Outcome monomial_tables() {
  Outcome o;
  for (long delta = 1; delta <= 4; ++delta)
    for (long gamma = 0; gamma <= 4; ++gamma)
      for (long d = 0; d <= 4; ++d) {
        if (gamma + d == 0) continue;
        const SkewGerm f(SparsePoly2::monomial(Rational(1), {static_cast<std::uint64_t>(delta), 0}),
                         SparsePoly2::monomial(Rational(1), {static_cast<std::uint64_t>(gamma), static_cast<std::uint64_t>(d)}));
        const IterateSequence seq = iterate_sequence(f, 6);
        const std::string at = "(" + std::to_string(delta) + "," + std::to_string(gamma) + "," + std::to_string(d) + ")";
        o.require(!seq.resource_error, at + " hit a resource guard");
        for (std::uint64_t n = 1; n <= seq.iterates.size(); ++n) {
          const SkewGerm& fn = seq.iterates[n - 1];
          const Rational cqn(static_cast<unsigned long>(orders(fn.q()).c));
          const Rational cfn = std::min(cqn, Rational(static_cast<unsigned long>(orders(fn.p()).c)));
          const BigInt gn = oracle::gamma_n(BigInt(delta), BigInt(gamma), BigInt(d), n);
          o.require(cqn == Rational(gn + oracle::ipow(BigInt(d), n)), at + " c(Q^n) != gamma_n + d^n");
          const oracle::MonomialTable t = oracle::monomial_table(delta, gamma, d, n);
          o.require(t.cqn.holds(cqn), at + " table c(Q^n), n = " + std::to_string(n));
          o.require(t.cfn.holds(cfn), at + " table c(f^n), n = " + std::to_string(n));
        }
      }
  return o;
}

// 3: R-map, slope lemma, interval membership, interval stability.
Outcome lemma_suite() {
  Outcome o;
  oracle::Gen gen(20240601);
  std::vector<CaseData> readings;
  std::vector<SkewGerm> germs;
  for (std::size_t k = 1; k <= 6; ++k) germs.push_back(fixtures::get(k));
  for (const auto& f : germs)
    for (const auto& c : classify_all(f)) readings.push_back(c);

  for (const auto& c : readings) {
    const Rational delta(c.delta), gamma(c.gamma()), d(c.d());
    for (int s = 0; s < 50; ++s) {
      const Rational l0 = gen.positive_rational(40, 9);
      Rational l = l0;
      for (std::uint64_t n = 1; n <= 10; ++n) {
        l = (gamma + l * d) / delta;
        o.require(r_map(c, l0, n) == l, "R^n closed form");
      }
    }
  }

  for (long delta = 1; delta <= 4; ++delta)
    for (long gamma = 1; gamma <= 4; ++gamma)
      for (long d = 0; d <= 4; ++d)
        for (std::uint64_t n = 1; n <= 6; ++n) {
          const BigInt D(delta), G(gamma), E(d);
          const Rational slope = Rational(oracle::ipow(E, n) - oracle::ipow(D, n)) / Rational(oracle::gamma_n(D, G, E, n));
          o.require(slope == Rational(E - D) / Rational(G), "slope lemma");
        }

  for (const auto& f : germs) {
    for (const auto& c : classify_all(f)) {
      const WeightIntervals wi = weight_intervals(c);
      for (int s = 0; s < 200; ++s) {
        const Rational x = gen.positive_rational(72, 12);
        if (c.kind == CaseKind::Case2 || c.kind == CaseKind::Case3) {
          o.require(wi.I_f.contains(x) == oracle::in_I_f(f.q(), c, x), "I_f membership at " + to_string(x));
        } else if (c.kind == CaseKind::Case4) {
          const bool first = oracle::in_I_f1(c, x);
          o.require(wi.rectangle->first.contains(x) == first, "I_f^1 membership at " + to_string(x));
          const Rational y = first ? x + gen.positive_rational(24, 12) : x;
          if (first)
            o.require(wi.rectangle->contains(x, y) == oracle::in_I_f2(f.q(), c, x, y - x),
                      "rectangle membership at (" + to_string(x) + ", " + to_string(y) + ")");
        }
      }
    }
  }

  for (std::size_t k : {2u, 5u}) {
    const SkewGerm f = fixtures::get(k);
    const CaseData c = classify(f);
    const WeightInterval I = weight_intervals(c).I_f;
    for (std::uint64_t n = 2; n <= 3; ++n) {
      bool same = false;
      for (const auto& alt : classify_all(iterate_germ(f, n)))
        same = same || (alt.kind == CaseKind::Case2 && weight_intervals(alt).I_f == I);
      o.require(same, "I_f != I_{f^n} for g" + std::to_string(k) + ", n = " + std::to_string(n));
    }
  }
  return o;
}

// 4: blow-ups with integral weights.
Outcome blowup_suite() {
  Outcome o;
  auto run = [&](const SkewGerm& f, const CaseData& c, std::uint64_t l, const std::string& name) {
    const BlowupReport r = conjugate_pi1(f, c, l);
    o.require(r.transformed.has_value(), name + ": no transformed germ");
    o.require(r.all_hold(), name + ": lemma check failed");
    std::vector<RationalPoint> images;
    for (const auto& t : f.q().terms())
      images.push_back(transform_lattice({Rational(static_cast<unsigned long>(t.exp.i)), Rational(static_cast<unsigned long>(t.exp.j))},
                                         A1{Rational(static_cast<unsigned long>(l)), Rational(c.delta)}));
    std::vector<RationalPoint> hull;
    for (const auto& [i, j] : oracle::hull_vertices(oracle::from(r.q_tilde)))
      hull.push_back({Rational(static_cast<unsigned long>(i)), Rational(static_cast<unsigned long>(j))});
    o.require(staircase_hull(images) == hull, name + ": polygon is not the A1 image hull");
    o.require(check_conjugacy_pi1(f, c, l, 2).holds, name + ": conjugacy at n = 2");
    return r;
  };
  const SkewGerm g2 = fixtures::get(2);
  const CaseData c2 = classify(g2);
  for (std::uint64_t l : {2u, 3u}) {
    run(g2, c2, l, "G2 l=" + std::to_string(l));
    const auto lemma = lattice_lemma_case2(g2, c2, Rational(static_cast<unsigned long>(l)));
    for (const auto& x : lemma) o.require(x.holds, "G2 " + x.name);
  }
  const SkewGerm g6 = fixtures::get(6);
  const CaseData c6 = classify(g6);
  o.require(c6.kind == CaseKind::Case4 && c6.l1 == 1, "G6 is not Case 4 with l1 = 1");
  const BlowupReport r6 = run(g6, c6, 1, "G6 l=1");
  for (const auto& x : lattice_lemma_case4(g6, c6, Rational(1), Rational(1))) o.require(x.holds, "G6 " + x.name);
  for (const auto& x : composite_line_checks(c6)) o.require(x.holds, "G6 " + x.name);
  bool pi2_done = false;
  if (r6.transformed) {
    for (const auto& t : classify_all(*r6.transformed)) {
      if (t.kind != CaseKind::Case3 || !(t.gamma_d == r6.expected_vertex)) continue;
      o.require(conjugate_pi2(*r6.transformed, t, 1).all_hold(), "G6 second stage");
      pi2_done = true;
    }
  }
  o.require(pi2_done, "G6 transform has no Case 3 reading");
  return o;
}

// 5: fuzz campaign.
Outcome fuzz_campaign() {
  Outcome o;
  const FuzzConfig cfg;
  o.require(cfg.germ_count >= 200 && cfg.delta_max <= 3 && cfg.support_max <= 6 && cfg.coeff_min == -3 &&
                cfg.coeff_max == 3 && cfg.n_max <= 3 && cfg.boundary_bias_pct >= 10,
            "default configuration out of range");
  const FuzzSummary s = fuzz(cfg);
  o.require(s.germs_verified >= 200, std::to_string(s.germs_verified) + " germs verified");
  o.require(s.failures == 0, std::to_string(s.failures) + " failed checks");
  o.require(s.coverage_met, "coverage not met");
  for (int k = 0; k < 4; ++k) o.require(s.reading_counts[k] > 0, "Case" + std::to_string(k + 1) + " not exercised");
  o.require(s.boundary_germs > 0, "no boundary germ");
  o.require(s.vanishing_events > 0, "no vanishing event");
  o.why = o.ok ? std::to_string(s.germs_verified) + " germs, " + std::to_string(s.checks_run) + " checks" : o.why;
  return o;
}

// 6: dominant coefficient formula on the fixtures.
Outcome coefficient_remark() {
  Outcome o;
  for (std::size_t k = 1; k <= 6; ++k) {
    const SkewGerm f = fixtures::get(k);
    for (const auto& c : classify_all(f)) {
      const Rational b = f.q().coefficient({c.gamma().get_ui(), c.d().get_ui()});
      for (std::uint64_t n = 1; n <= 3; ++n) {
        const RatePrediction r = predict(f, c, n);
        if (r.may_vanish) continue;
        const auto [pn, qn] = oracle::iterate(oracle::from(f.p()), oracle::from(f.q()), n);
        const Rational expect = oracle::dominant_coefficient(f.a_delta(), b, c.delta, c.gamma(), c.d(), n);
        o.require(coeff(qn, r.dominant) == expect, "g" + std::to_string(k) + " n = " + std::to_string(n));
      }
    }
    VerifyOptions opt;
    opt.n_max = 3;
    for (const auto& fd : verify_germ(f, opt).findings)
      o.require(fd.kind != "coefficient_mismatch", "g" + std::to_string(k) + ": " + fd.detail);
  }
  return o;
}

// 7: CLI goldens, round trip, exit statuses.
Outcome cli_contract() {
  Outcome o;
  auto cli = [](const std::vector<std::string>& args, std::string* out = nullptr) {
    std::ostringstream so, se;
    const int code = run_cli(args, so, se);
    if (out) *out = so.str();
    return code;
  };
  auto germ = [](int k) { return fixtures::path("fixtures/g" + std::to_string(k) + ".germ"); };
  const std::vector<std::string> weights[] = {{}, {"--l", "2", "--l", "5/2"}, {"--l", "1"}, {"--l", "1", "--l", "3/2"}, {"--l", "1"}};
  for (int k = 1; k <= 5; ++k) {
    const std::string g = "g" + std::to_string(k);
    std::vector<std::pair<std::string, std::vector<std::string>>> runs{
        {g + "_classify.json", {"classify", "--germ", germ(k), "--format", "json"}},
        {g + "_iterate_n2.json", {"iterate", "--germ", germ(k), "--n", "2", "--format", "json"}},
        {g + "_predict_n2.json", {"predict", "--germ", germ(k), "--n", "2", "--format", "json"}}};
    runs[2].second.insert(runs[2].second.end(), weights[k - 1].begin(), weights[k - 1].end());
    for (const auto& [file, args] : runs) {
      std::string out;
      o.require(cli(args, &out) == 0, file + ": nonzero exit");
      o.require(out == slurp(fixtures::path("golden/" + file)), file + ": differs from golden");
    }
  }

  oracle::Gen gen(7);
  for (int k = 0; k < 100; ++k) {
    const SparsePoly2 a = gen.poly(8, 6);
    o.require(parse_poly(to_string(a)) == a, "round trip of " + to_string(a));
  }

  const std::vector<std::pair<std::vector<std::string>, int>> table = {
      {{"classify", "--germ", germ(2)}, 0},
      {{"verify", "--germ", germ(3), "--n-max", "3"}, 0},
      {{}, 2},
      {{"classify", "--germ", "/nonexistent.germ"}, 2},
      {{"predict", "--germ", germ(2), "--n", "2", "--l", "abc"}, 2},
      {{"iterate", "--germ", germ(4), "--n", "6", "--max-degree", "100"}, 3},
  };
  for (const auto& [args, code] : table) o.require(cli(args) == code, "exit status table");
  VerifyOptions opt;
  opt.n_max = 2;
  VerificationReport rep = verify_germ(fixtures::get(2), opt);
  rep.readings[0].steps[0].checks[0].passed = false;
  o.require(exit_code(rep) == 1, "failed check does not exit 1");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all = {
      {1, "fixture suite", 5, fixture_suite},
      {2, "monomial closed forms", 10, monomial_tables},
      {3, "lemma suite", 0, lemma_suite},
      {4, "blow-up suite", 0, blowup_suite},
      {5, "fuzz campaign", 60, fuzz_campaign},
      {6, "coefficient remark", 0, coefficient_remark},
      {7, "CLI contract", 0, cli_contract},
  };
  bool all_ok = true;
  for (const auto& c : all) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double t = seconds_since(t0);
    if (c.budget_s > 0 && t > c.budget_s) o.require(false, "took " + std::to_string(t) + " s");
    all_ok = all_ok && o.ok;
    std::ostringstream secs;
    secs.precision(2);
    secs << std::fixed << t;
    std::cout << "criterion " << c.id << " (" << c.name << "): " << (o.ok ? "PASS" : "FAIL") << " [" << secs.str()
              << " s]" << (o.why.empty() ? "" : " " + o.why) << "\n";
  }
  return all_ok ? 0 : 1;
}
