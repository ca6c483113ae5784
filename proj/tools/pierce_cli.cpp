// pierce-lab: expansions, cylinder intervals, dimension experiments and digit
// laws from the command line.
//
// Exit codes: 0 success, 2 bad input or domain error, 3 refusal (a limit the
// answer depends on does not settle on the window; the report is still written).

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "pierce/io.hpp"
#include "pierce/pierce.hpp"

using namespace pierce;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kInputError = 2, kRefused = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json json_int(const BigInt& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

json json_word(const Word& w) {
  json a = json::array();
  for (const auto& d : w) a.push_back(json_int(d));
  return a;
}

json limit_json(const LimitEstimate& e) {
  return {{"quantity", to_string(e.quantity)}, {"n_lo", e.n_lo},       {"n_hi", e.n_hi},
          {"min", e.min},                      {"max", e.max},         {"last", e.last},
          {"tail_min", e.tail_min},            {"tail_max", e.tail_max}, {"stability", to_string(e.stability)}};
}

class Output {
 public:
  explicit Output(const RunConfig& cfg) : cfg_(cfg) {
    if (!cfg.out.empty()) {
      file_ = std::make_unique<std::ofstream>(cfg.out, std::ios::binary);
      if (!*file_) throw InputError("cannot open output file " + cfg.out);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  bool csv() const { return cfg_.format == "csv"; }

 private:
  const RunConfig& cfg_;
  std::unique_ptr<std::ofstream> file_;
};

int cmd_expand(RunConfig& cfg, const std::string& text, long cap) {
  Rational x;
  try {
    x = parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (cap < 1) throw InputError("--cap must be positive");
  cfg.params = {{"x", text}, {"cap", cap}};
  ExpansionResult r = expand(x, static_cast<size_t>(cap));
  bool check = r.terminated && evaluate(r.digits) == x;
  Output out(cfg);
  if (out.csv()) {
    CsvWriter w(out.stream(), cfg, {"k", "digit"});
    for (size_t k = 0; k < r.digits.size(); ++k) w.row({std::to_string(k + 1), r.digits[k].get_str()});
    return kOk;
  }
  json summary = {{"x", to_string(x)},
                  {"length", r.digits.size()},
                  {"terminated", r.terminated},
                  {"remainder", to_string(r.remainder)},
                  {"check", r.terminated ? (check ? "pass" : "fail") : "not_terminated"}};
  write_json(out.stream(), cfg, {{"digits", json_word(r.digits)}}, summary);
  return check || !r.terminated ? kOk : kInputError;
}

int cmd_interval(RunConfig& cfg, const std::string& text) {
  Word w;
  try {
    w = parse_word(text);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (w.empty()) throw InputError("empty word");
  cfg.params = {{"word", text}};
  Interval iv = fundamental_interval(w);
  Output out(cfg);
  if (out.csv()) {
    CsvWriter c(out.stream(), cfg, {"word", "lo", "hi", "lo_closed", "hi_closed", "length", "interval"});
    c.row({w.str(), to_string(iv.lo), to_string(iv.hi), iv.lo_closed ? "true" : "false",
           iv.hi_closed ? "true" : "false", to_string(interval_length(w)), iv.str()});
    return kOk;
  }
  json data = {{"word", json_word(w)},
               {"lo", to_string(iv.lo)},
               {"hi", to_string(iv.hi)},
               {"lo_closed", iv.lo_closed},
               {"hi_closed", iv.hi_closed},
               {"length", to_string(interval_length(w))},
               {"interval", iv.str()}};
  write_json(out.stream(), cfg, data, {{"open_both_ends", !iv.lo_closed && !iv.hi_closed}});
  return kOk;
}

json read_spec(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw InputError("cannot read " + arg.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("spec is not valid JSON: ") + e.what());
  }
}

/// Digit-window profile attached to a family, when it has one.
std::optional<BoundsProfile> family_bounds(const SetSpec& s, long n_max, long window) {
  switch (s.family) {
    case Family::E_star: return estar_bounds(s.require_profile().profile, n_max + 3);
    case Family::E_bounds: return *s.bounds;
    case Family::C_psi_beta:
      if (!s.beta.is_finite()) return std::nullopt;
      return clt_bounds(s.require_profile().profile, s.beta.value, window);
    case Family::L_beta:
      if (!s.beta.is_finite()) return std::nullopt;
      return clt_bounds(catalog::lil_psi().profile, s.beta.value, window);
    default: return std::nullopt;
  }
}

int cmd_dim(RunConfig& cfg, const std::string& spec_arg) {
  json spec_json = read_spec(spec_arg);
  SetSpec s;
  try {
    s = set_spec_from_json(spec_json);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  if (cfg.n_max <= 0) cfg.n_max = 60;
  cfg.params = {{"spec", spec_json}};
  Rational eps = spec_json.contains("epsilon") ? json_rational(spec_json.at("epsilon")) : Rational(1, 100);
  if (sgn(eps) <= 0 || eps >= 1) throw InputError("epsilon must lie in (0, 1)");

  std::vector<RatioPoint> rows;
  json errors = json::array();
  json extra = json::object();
  auto attempt = [&](const char* what, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      errors.push_back({{"sequence", what}, {"error", e.what()}});
    }
  };

  std::optional<BoundsProfile> b;
  attempt("bounds", [&] { b = family_bounds(s, cfg.n_max, cfg.window); });
  if (b) {
    extra["bounds"] = {{"label", b->label}, {"threshold_K", b->threshold_K}};
    attempt("closed_form", [&] {
      DimensionEstimate est = closed_form_ratio_sequences(*b, cfg.n_max);
      rows.insert(rows.end(), est.lower_seq.begin(), est.lower_seq.end());
      rows.insert(rows.end(), est.upper_seq.begin(), est.upper_seq.end());
    });
    attempt("box", [&] {
      auto v = box_ratio_sequence(*b, cfg.n_max, static_cast<size_t>(cfg.enum_cap));
      rows.insert(rows.end(), v.begin(), v.end());
    });
    attempt("gap", [&] {
      auto v = gap_ratio_sequence(*b, cfg.n_max);
      rows.insert(rows.end(), v.begin(), v.end());
    });
  }
  if (s.family == Family::E_phi) {
    attempt("chains", [&] {
      const GrowthProfile& phi = s.require_profile().profile;
      EphiThreshold t = ephi_threshold(phi, eps, cfg.n_max);
      extra["epsilon"] = to_string(eps);
      if (!t.K) {
        extra["chain_threshold"] = {{"failing_check", t.failing_check}, {"failing_index", t.failing_index}};
        return;
      }
      extra["chain_threshold"] = {{"K", *t.K}};
      EphiChains c = ephi_chains(phi, eps, *t.K, cfg.n_max);
      rows.insert(rows.end(), c.xi_chain.begin(), c.xi_chain.end());
      rows.insert(rows.end(), c.theta_chain.begin(), c.theta_chain.end());
    });
  }

  AnalyticDimension a = analytic_dimension(s, cfg.window);
  Emptiness em = emptiness_check(s, cfg.window);
  json windows = json::array();
  for (const auto& w : a.windows) windows.push_back(limit_json(w));
  json summary = {{"family", to_string(s.family)},
                  {"analytic", a.value ? json(*a.value) : json(nullptr)},
                  {"analytic_exact", a.exact ? json(to_string(*a.exact)) : json(nullptr)},
                  {"status", to_string(a.status)},
                  {"empty", a.empty},
                  {"emptiness", to_string(em)},
                  {"note", a.note},
                  {"windows", windows},
                  {"errors", errors}};
  summary.update(extra);

  Output out(cfg);
  if (out.csv()) {
    CsvWriter w(out.stream(), cfg, {"n", "log_count", "log_inv_diam", "ratio", "bound_kind"});
    for (const auto& p : rows)
      w.row({std::to_string(p.n), format_real(p.log_count), format_real(p.log_inv_diam), format_real(p.ratio),
             p.bound_kind});
  } else {
    json data = json::array();
    for (const auto& p : rows)
      data.push_back({{"n", p.n},
                      {"log_count", p.log_count},
                      {"log_inv_diam", p.log_inv_diam},
                      {"ratio", p.ratio},
                      {"bound_kind", p.bound_kind},
                      {"exact_count", p.exact_count}});
    write_json(out.stream(), cfg, data, summary);
  }
  if (a.status == AnalyticStatus::Refused) {
    std::cerr << "refused: " << a.note << "\n";
    return kRefused;
  }
  return kOk;
}

int cmd_law(RunConfig& cfg, const std::string& tag, unsigned threads) {
  LawConfig c;
  try {
    c.law = parse_law(tag);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  c.n = cfg.n_max > 0 ? cfg.n_max : (c.law == Law::LLN ? 200 : c.law == Law::CLT ? 500 : 10000);
  c.count = cfg.count > 0 ? cfg.count : (c.law == Law::LIL ? 200 : 2000);
  if (cfg.n_max < 0 || cfg.count < 0) throw InputError("sizes must be positive");
  if (c.law == Law::LIL && c.n < 3) throw InputError("lil needs n >= 3");
  c.seed = cfg.seed;
  c.threads = threads;
  cfg.n_max = c.n;
  cfg.count = c.count;
  cfg.params = {{"law", tag}};
  LawReport r = run_law(c);

  Output out(cfg);
  bool lil = c.law == Law::LIL;
  if (out.csv()) {
    std::vector<std::string> header = {"seed_index", "n", "statistic"};
    if (lil) header.insert(header.end(), {"running_max", "running_min"});
    CsvWriter w(out.stream(), cfg, header);
    for (size_t i = 0; i < r.statistics.size(); ++i) {
      std::vector<std::string> row = {std::to_string(i), std::to_string(r.n), format_real(r.statistics[i])};
      if (lil) row.insert(row.end(), {format_real(r.running_max[i]), format_real(r.running_min[i])});
      w.row(row);
    }
    return kOk;
  }
  json data = json::array();
  for (size_t i = 0; i < r.statistics.size(); ++i) {
    json row = {{"seed_index", i}, {"n", r.n}, {"statistic", r.statistics[i]}};
    if (lil) {
      row["running_max"] = r.running_max[i];
      row["running_min"] = r.running_min[i];
    }
    data.push_back(row);
  }
  const Summary& s = r.summary;
  json summary = {{"law", to_string(r.law)}, {"n", r.n},           {"sample_count", r.sample_count},
                  {"mean", s.mean},          {"stddev", s.stddev}, {"min", s.min},
                  {"q25", s.q25},            {"median", s.median}, {"q75", s.q75},
                  {"max", s.max},            {"retries", r.retries}};
  if (r.ks_distance) summary["ks_distance"] = *r.ks_distance;
  if (r.lil_pass_rate) summary["lil_pass_rate"] = *r.lil_pass_rate;
  write_json(out.stream(), cfg, data, summary);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pierce-lab: Pierce expansions, digit-window sets and digit laws"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  unsigned threads = 0;
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--n-max", cfg.n_max, "deepest level or digit depth");
  app.add_option("--count", cfg.count, "number of samples");
  app.add_option("--precision-bits", cfg.precision_bits, "working precision for reals")->check(CLI::Range(32, 1 << 20));
  app.add_option("--enum-cap", cfg.enum_cap, "largest word count enumerated exactly");
  app.add_option("--window", cfg.window, "verification window for limits and profile checks");
  app.add_option("--threads", threads, "worker threads for sampling (0: all cores)");

  std::string x, word, spec, law;
  long cap = 10000;
  auto* ex = app.add_subcommand("expand", "digits of a rational in (0, 1]");
  ex->add_option("x", x, "p/q")->required();
  ex->add_option("--cap", cap, "digit cap");
  auto* iv = app.add_subcommand("interval", "cylinder interval of a word");
  iv->add_option("word", word, "comma-separated digits")->required();
  auto* dm = app.add_subcommand("dim", "dimension bounds and closed-form value for a set");
  dm->add_option("spec", spec, "set JSON, or @file")->required();
  auto* lw = app.add_subcommand("law", "Monte Carlo check of a digit law");
  lw->add_option("law", law, "lln, clt or lil")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }
  if (cfg.window < 4) {
    std::cerr << "error: --window must be at least 4\n";
    return kInputError;
  }
  PrecisionScope scope(static_cast<mpfr_prec_t>(cfg.precision_bits));
  try {
    if (*ex) {
      cfg.subcommand = "expand";
      return cmd_expand(cfg, x, cap);
    }
    if (*iv) {
      cfg.subcommand = "interval";
      return cmd_interval(cfg, word);
    }
    if (*dm) {
      cfg.subcommand = "dim";
      return cmd_dim(cfg, spec);
    }
    cfg.subcommand = "law";
    return cmd_law(cfg, law, threads);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
