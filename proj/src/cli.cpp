#include "skewrate/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "skewrate/errors.hpp"
#include "skewrate/report.hpp"

namespace skewrate {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read germ file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Common {
  std::string germ_path;
  std::string format = "text";
  std::uint64_t max_terms = Limits{}.max_terms;
  std::uint64_t max_degree = Limits{}.max_degree;

  Limits limits() const {
    if (max_degree > Limits::kHardDegreeCeiling)
      throw UsageError("--max-degree exceeds " + std::to_string(Limits::kHardDegreeCeiling));
    return Limits{max_terms, max_degree};
  }
  bool json() const { return format == "json"; }
};

void add_common(CLI::App* cmd, Common& c, bool germ = true) {
  if (germ) cmd->add_option("--germ", c.germ_path, "Germ file")->required();
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--max-terms", c.max_terms, "Term-count guard");
  cmd->add_option("--max-degree", c.max_degree, "Degree guard");
}

std::vector<Rational> parse_weights(const std::vector<std::string>& raw) {
  std::vector<Rational> out;
  for (const auto& s : raw) {
    Rational l;
    try {
      l = parse_rational(trim(s));
    } catch (const DomainError& e) {
      throw UsageError(std::string("--l: ") + e.what());
    }
    if (l <= 0) throw UsageError("--l must be positive, got '" + s + "'");
    out.push_back(l);
  }
  return out;
}

std::string bool_word(bool b) { return b ? "yes" : "no"; }

std::string vertex_list(const std::vector<LatticePoint>& vs) {
  std::string out;
  for (const auto& v : vs) out += (out.empty() ? "" : " ") + to_string(v);
  return out;
}

void print_case(std::ostream& out, const CaseData& c, const WeightIntervals& wi) {
  out << "case: " << to_string(c.kind);
  if (c.k) out << " (k = " << *c.k << ")";
  out << "\n";
  out << "delta: " << to_string(c.delta) << "\n";
  out << "(gamma, d): " << to_string(c.gamma_d) << "\n";
  out << "l1: " << to_string(c.l1) << "\n";
  out << "l2: " << to_string(c.l2) << "\n";
  out << "alpha: " << (c.alpha ? to_string(*c.alpha) : std::string("undefined")) << "\n";
  out << "delta = T upper: " << bool_word(c.delta_eq_T_upper)
      << ", delta = T lower: " << bool_word(c.delta_eq_T_lower) << "\n";
  out << "polygon: " << vertex_list(c.polygon.vertices) << "\n";
  out << "intercepts:";
  for (const auto& t : c.polygon.intercepts) out << " " << to_string(t);
  out << "\n";
  if (wi.rectangle) {
    const WeightRectangle& r = *wi.rectangle;
    out << "I_f first: " << to_string(r.first) << "\n";
    out << "I_f sum: [" << to_string(r.sum_lower) << ", " << to_string(r.sum_upper) << "]\n";
    if (r.excluded_corner) out << "I_f excluded corner: " << to_string(*r.excluded_corner) << "\n";
    if (wi.I_f_AR) out << "I_f^AR: " << to_string(*wi.I_f_AR) << "\n";
  } else {
    out << "I_f: " << to_string(wi.I_f) << "\n";
  }
  out << "applicable:";
  for (auto k : c.applicable) out << " " << to_string(k);
  out << "\n";
}

Json germ_json(const SkewGerm& f) {
  return Json{{"p", to_string(f.p())}, {"q", to_string(f.q())}};
}

int cmd_classify(const Common& opt, std::ostream& out) {
  const SkewGerm f = parse_germ_file(read_file(opt.germ_path));
  const auto readings = classify_all(f);
  if (opt.json()) {
    Json all = Json::array();
    for (const auto& c : readings) {
      const Json cj = to_json(c);
      const Json wj = to_json(weight_intervals(c));
      Json j;
      for (const char* key : {"case", "gamma", "d", "l1", "l2"}) j[key] = cj[key];
      j["interval"] = wj["interval"];
      for (const auto& src : {cj, wj})
        for (auto it = src.begin(); it != src.end(); ++it)
          if (!j.contains(it.key())) j[it.key()] = it.value();
      all.push_back(std::move(j));
    }
    Json doc = all.front();
    doc["germ"] = germ_json(f);
    doc["readings"] = std::move(all);
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  out << "p = " << to_string(f.p()) << "\n";
  out << "q = " << to_string(f.q()) << "\n";
  for (std::size_t r = 0; r < readings.size(); ++r) {
    if (readings.size() > 1) out << "\nreading " << r + 1 << (r == 0 ? " (primary)" : "") << "\n";
    print_case(out, readings[r], weight_intervals(readings[r]));
  }
  return kExitOk;
}

int cmd_iterate(const Common& opt, std::uint64_t n, std::ostream& out) {
  const SkewGerm f = parse_germ_file(read_file(opt.germ_path));
  const IterateReport it = iterate_report(f, n, opt.limits());
  if (opt.json()) {
    Json doc{{"germ", germ_json(f)}};
    doc.update(to_json(it));
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  const std::string sn = std::to_string(n);
  out << "p^" << sn << " = " << to_string(it.fn.p()) << "\n";
  out << "Q^" << sn << " = " << to_string(it.fn.q()) << "\n";
  out << "N(Q^" << sn << "): ";
  for (std::size_t k = 0; k < it.polygon.vertices.size(); ++k)
    out << (k ? " " : "") << to_string(it.polygon.vertices[k]);
  out << "\n";
  out << "c(Q^" << sn << ") = " << it.q_orders.c << "\n";
  out << "ord_z(Q^" << sn << ") = " << it.q_orders.ord_z << "\n";
  out << "ord_w(Q^" << sn << ") = " << it.q_orders.ord_w << "\n";
  out << "c(f^" << sn << ") = " << it.c_fn << "\n";
  return kExitOk;
}

void write_csv(const std::string& path, const CaseData& c, const std::vector<SkewGerm>& iterates,
               const SkewGerm& f, const VanishingObservation& obs) {
  std::ofstream csv(path);
  if (!csv) throw UsageError("cannot write '" + path + "'");
  csv << "n,gamma_n,d_n,c_qn,c_qn_lower,c_qn_upper,c_fn\n";
  for (std::uint64_t n = 1; n <= iterates.size(); ++n) {
    const RatePrediction p = predict(f, c, n, obs);
    const SkewGerm& fn = iterates[n - 1];
    const std::uint64_t cq = orders(fn.q()).c;
    const std::uint64_t cf = std::min(cq, orders(fn.p()).c);
    csv << n << ',' << to_string(p.gamma_n) << ',' << to_string(p.d_pow_n) << ',' << cq << ','
        << to_string(p.cqn.lower) << ',' << to_string(p.cqn.upper) << ',' << cf << "\n";
  }
}

VanishingObservation observe(const CaseData& c, const std::vector<SkewGerm>& iterates) {
  VanishingObservation obs;
  for (std::uint64_t n = 1; n <= iterates.size(); ++n) {
    const auto w = watched_term(c, n);
    if (!w) continue;
    const bool fits = w->i.fits_ulong_p() && w->j.fits_ulong_p();
    if (!fits || !iterates[n - 1].q().contains({w->i.get_ui(), w->j.get_ui()})) obs.absent.push_back(n);
  }
  return obs;
}

int cmd_predict(const Common& opt, std::uint64_t n, const std::vector<Rational>& ls,
                const std::string& csv_path, std::ostream& out) {
  const SkewGerm f = parse_germ_file(read_file(opt.germ_path));
  const auto readings = classify_all(f);

  // Regimes that hinge on whether a watched term survives need the oracle.
  bool need_oracle = !csv_path.empty();
  for (const auto& c : readings)
    for (std::uint64_t m = 1; m <= n && !need_oracle; ++m) need_oracle = watched_term(c, m).has_value();
  std::vector<SkewGerm> iterates;
  if (need_oracle) {
    IterateSequence seq = iterate_sequence(f, n, opt.limits());
    if (seq.resource_error) throw ResourceError(*seq.resource_error);
    iterates = std::move(seq.iterates);
  }

  Json doc{{"germ", germ_json(f)}, {"n", n}};
  Json all = Json::array();
  for (std::size_t r = 0; r < readings.size(); ++r) {
    const CaseData& c = readings[r];
    const VanishingObservation obs = need_oracle ? observe(c, iterates) : VanishingObservation{};
    const RatePrediction pred = predict(f, c, n, obs);
    const AsymptoticRate rate = asymptotic(c);
    const WeightInterval range = weight_equality_range(c);
    if (r == 0 && !csv_path.empty()) write_csv(csv_path, c, iterates, f, obs);

    Json weights = Json::array();
    for (const auto& l : ls) {
      if (range.contains(l)) {
        const WeightClaim w = predict_weight(c, n, l);
        weights.push_back({{"l", to_string(l)}, {"claimed", true}, {"value", to_string(w.value)}, {"exact", w.exact}});
      } else {
        weights.push_back({{"l", to_string(l)}, {"claimed", false}, {"range", to_string(range)}});
      }
    }
    if (opt.json()) {
      Json j{{"classification", to_json(c)},
             {"intervals", to_json(weight_intervals(c))},
             {"prediction", to_json(pred)},
             {"weights", weights},
             {"asymptotic", to_json(rate)}};
      if (pred.watched_term)
        j["watched_term_absent"] = need_oracle ? Json(obs.absent_at(n)) : Json(nullptr);
      all.push_back(std::move(j));
      continue;
    }

    const std::string sn = std::to_string(n);
    if (r) out << "\n";
    out << "reading " << r + 1 << ": " << to_string(c.kind) << " (gamma, d) = " << to_string(c.gamma_d)
        << "\n";
    out << "n = " << sn << "\n";
    out << "dominant term: " << to_string(pred.dominant);
    if (pred.dominant_coeff) out << " coefficient " << to_string(*pred.dominant_coeff);
    if (pred.may_vanish) out << " (may vanish)";
    out << "\n";
    for (const auto& w : weights) {
      out << "w_" << w["l"].get<std::string>() << "(Q^" << sn << ") ";
      if (w["claimed"].get<bool>()) {
        out << "= " << w["value"].get<std::string>() << (w["exact"].get<bool>() ? " exact" : "") << "\n";
      } else {
        out << "not claimed: l outside " << w["range"].get<std::string>() << "\n";
      }
    }
    out << "c(Q^" << sn << "): " << to_string(pred.cqn, "c") << (pred.cqn.is_exact() ? " exact" : "")
        << " [" << pred.cqn.tag << "]\n";
    out << "c(f^" << sn << "): " << to_string(pred.cfn, "c") << (pred.cfn.is_exact() ? " exact" : "")
        << " [" << pred.cfn.tag << "]\n";
    if (pred.prev_vertex)
      out << "prev vertex: " << to_string(pred.prev_vertex->point) << " [" << to_string(pred.prev_vertex->tag)
          << "]\n";
    if (pred.next_vertex)
      out << "next vertex: " << to_string(pred.next_vertex->point) << " [" << to_string(pred.next_vertex->tag)
          << "]\n";
    if (pred.ord_z) out << "ord_z(Q^" << sn << ") = " << to_string(*pred.ord_z) << "\n";
    if (pred.ord_w) out << "ord_w(Q^" << sn << ") = " << to_string(*pred.ord_w) << "\n";
    out << "c_inf = " << to_string(rate.c_infinity) << ", D candidates:";
    for (const auto& d : rate.D_candidates) out << " " << to_string(d);
    out << "\n";
  }
  if (opt.json()) {
    doc["readings"] = std::move(all);
    out << doc.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_verify(const Common& opt, std::uint64_t n_max, const std::vector<Rational>& ls,
               const std::string& csv_path, std::ostream& out) {
  const SkewGerm f = parse_germ_file(read_file(opt.germ_path));
  VerifyOptions vo;
  vo.n_max = n_max;
  vo.extra_l = ls;
  vo.limits = opt.limits();
  const VerificationReport rep = verify_germ(f, vo);

  if (!csv_path.empty() && !rep.readings.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) throw UsageError("cannot write '" + csv_path + "'");
    csv << "n,gamma_n,d_n,c_qn,c_qn_lower,c_qn_upper,c_fn\n";
    for (const auto& s : rep.readings.front().steps) {
      const RatePrediction& p = s.prediction;
      csv << s.oracle.n << ',' << to_string(p.gamma_n) << ',' << to_string(p.d_pow_n) << ','
          << to_string(s.oracle.c_qn) << ',' << to_string(p.cqn.lower) << ',' << to_string(p.cqn.upper)
          << ',' << to_string(s.oracle.c_fn) << "\n";
    }
  }

  if (opt.json()) {
    out << to_json(rep).dump(2) << "\n";
  } else {
    out << "p = " << to_string(f.p()) << "\n";
    out << "q = " << to_string(f.q()) << "\n";
    out << "n_max = " << rep.n_max << ", computed " << rep.n_computed << "\n";
    for (const auto& r : rep.readings) {
      std::size_t run = r.checks.size() + r.lemma_checks.size();
      for (const auto& s : r.steps) run += s.checks.size();
      out << "reading " << to_string(r.case_data.kind) << " (gamma, d) = " << to_string(r.case_data.gamma_d)
          << ": " << run << " checks\n";
      for (const auto& s : r.steps) {
        out << "  n = " << s.oracle.n << ": c(Q^n) = " << to_string(s.oracle.c_qn) << " predicted "
            << to_string(s.prediction.cqn, "c") << "\n";
        for (const auto& c : s.checks) {
          if (!c.passed)
            out << "  FAIL n = " << s.oracle.n << " " << c.claim << " [" << c.tag << "] expected "
                << c.expected << ", observed " << c.observed << "\n";
        }
      }
      for (const auto& c : r.checks) {
        if (!c.passed)
          out << "  FAIL " << c.claim << " [" << c.tag << "] expected " << c.expected << ", observed "
              << c.observed << "\n";
      }
      for (const auto& l : r.lemma_checks) {
        if (!l.holds)
          out << "  FAIL " << l.name << (l.witness ? " at " + to_string(*l.witness) : std::string()) << "\n";
      }
    }
    for (const auto& fd : rep.findings) {
      out << "finding " << fd.kind;
      if (fd.n) out << " n = " << *fd.n;
      out << ": " << fd.detail << "\n";
    }
    out << (rep.passed() ? "PASS" : "FAIL") << " " << rep.checks_run() << " checks, " << rep.failures()
        << " failed\n";
  }
  return exit_code(rep);
}

int cmd_fuzz(const FuzzConfig& cfg, bool json, std::ostream& out) {
  const FuzzSummary s = fuzz(cfg);
  if (json) {
    out << to_json(s).dump(2) << "\n";
  } else {
    out << "seed " << cfg.seed << ", generator " << s.generator << "\n";
    out << "germs generated " << s.germs_generated << ", verified " << s.germs_verified
        << ", skipped (degree cap) " << s.skipped_resource << ", coverage draws " << s.coverage_draws << "\n";
    out << "primary cases:";
    for (int k = 0; k < 4; ++k) out << " Case" << k + 1 << "=" << s.primary_case_counts[k];
    out << "\nreadings:";
    for (int k = 0; k < 4; ++k) out << " Case" << k + 1 << "=" << s.reading_counts[k];
    out << "\nboundary germs " << s.boundary_germs << ", vanishing events " << s.vanishing_events << "\n";
    out << "coverage " << (s.coverage_met ? "met" : "not met") << "\n";
    out << "checks " << s.checks_run << ", failures " << s.failures << ", findings " << s.findings
        << ", coefficient mismatches " << s.coefficient_mismatches << "\n";
    for (const auto& f : s.failure_list) {
      out << "  FAIL #" << f.index << " p = " << f.p << ", q = " << f.q << " " << f.reading << " " << f.claim
          << " [" << f.tag << "] expected " << f.expected << ", observed " << f.observed << "\n";
    }
  }
  return exit_code(s);
}

}  // namespace

int exit_code(const VerificationReport& rep) {
  if (!rep.passed()) return kExitCheckFailure;
  if (rep.resource_error) return kExitResource;
  return kExitOk;
}

int exit_code(const FuzzSummary& summary) { return summary.failures > 0 ? kExitCheckFailure : kExitOk; }

SkewGerm parse_germ_file(std::string_view text) {
  std::optional<SparsePoly2> p, q;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t eol = text.find('\n', offset);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(offset, eol - offset);
    const std::size_t line_start = offset;
    offset = eol + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (trim(line).empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'p = ...' or 'q = ...'", line_start);
    const std::string_view name = trim(line.substr(0, eq));
    const std::string_view expr = line.substr(eq + 1);
    const std::size_t expr_start = line_start + eq + 1;
    auto parse = [&](VarSet vars) {
      try {
        return parse_poly(expr, vars);
      } catch (const ParseError& e) {
        throw ParseError(std::string("in ") + std::string(name) + ": " + e.message(), expr_start + e.position());
      }
    };
    if (name == "p") {
      if (p) throw ParseError("duplicate assignment to p", line_start);
      p = parse(VarSet{true, false});
    } else if (name == "q") {
      if (q) throw ParseError("duplicate assignment to q", line_start);
      q = parse(VarSet{});
    } else {
      throw ParseError("unknown name '" + std::string(name) + "'", line_start);
    }
  }
  if (!p) throw ParseError("missing 'p = ...'", text.size());
  if (!q) throw ParseError("missing 'q = ...'", text.size());
  return SkewGerm(std::move(*p), std::move(*q));
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Attraction rates of skew-product germs", "skewrate"};
  app.require_subcommand(1);

  Common classify_opt, iterate_opt, predict_opt, verify_opt;
  std::uint64_t iterate_n = 1, predict_n = 1, verify_n = 3;
  std::vector<std::string> predict_l, verify_l;
  std::string predict_csv, verify_csv;

  auto* classify = app.add_subcommand("classify", "Case, (gamma, d), l1, l2 and weight intervals");
  add_common(classify, classify_opt);

  auto* iterate = app.add_subcommand("iterate", "Compute f^n exactly");
  add_common(iterate, iterate_opt);
  iterate->add_option("--n", iterate_n, "Iterate")->required()->check(CLI::PositiveNumber);

  auto* predict_cmd = app.add_subcommand("predict", "Predictions for f^n");
  add_common(predict_cmd, predict_opt);
  predict_cmd->add_option("--n", predict_n, "Iterate")->required()->check(CLI::PositiveNumber);
  predict_cmd->add_option("--l", predict_l, "Weight a/b, repeatable");
  predict_cmd->add_option("--csv", predict_csv, "Per-n rows for n = 1..N");

  auto* verify_cmd = app.add_subcommand("verify", "Check every prediction against the oracle");
  add_common(verify_cmd, verify_opt);
  verify_cmd->add_option("--n-max", verify_n, "Largest iterate")->required()->check(CLI::PositiveNumber);
  verify_cmd->add_option("--l", verify_l, "Extra weight a/b, repeatable");
  verify_cmd->add_option("--csv", verify_csv, "Per-n rows for the primary reading");

  FuzzConfig fz;
  std::string fuzz_format = "text";
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Seeded random verification campaign");
  fuzz_cmd->add_option("--seed", fz.seed, "Generator seed")->required();
  fuzz_cmd->add_option("--count", fz.germ_count, "Germs to draw")->required();
  fuzz_cmd->add_option("--delta-max", fz.delta_max, "Largest delta")->required()->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--n-max", fz.n_max, "Largest iterate")->required()->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--boundary-bias", fz.boundary_bias_pct, "Percent of boundary draws")
      ->check(CLI::Range(0, 100));
  fuzz_cmd->add_option("--vanishing-bias", fz.vanishing_bias_pct, "Percent of vanishing draws")
      ->check(CLI::Range(0, 100));
  fuzz_cmd->add_option("--support-max", fz.support_max, "Support size of q")->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--exponent-max", fz.exponent_max, "Bound on i + j in q")->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--degree-cap", fz.degree_cap, "Skip germs whose Q^N may exceed this degree");
  fuzz_cmd->add_option("--coverage-cap", fz.coverage_cap, "Extra draws allowed for coverage");
  fuzz_cmd->add_option("--format", fuzz_format, "Output format")->check(CLI::IsMember({"text", "json"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    err << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (*classify) return cmd_classify(classify_opt, out);
    if (*iterate) return cmd_iterate(iterate_opt, iterate_n, out);
    if (*predict_cmd) return cmd_predict(predict_opt, predict_n, parse_weights(predict_l), predict_csv, out);
    if (*verify_cmd) return cmd_verify(verify_opt, verify_n, parse_weights(verify_l), verify_csv, out);
    if (*fuzz_cmd) {
      if (fz.boundary_bias_pct + fz.vanishing_bias_pct > 100)
        throw UsageError("--boundary-bias plus --vanishing-bias exceeds 100");
      return cmd_fuzz(fz, fuzz_format == "json", out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "invalid germ: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  }
  return kExitUsage;
}

}  // namespace skewrate
