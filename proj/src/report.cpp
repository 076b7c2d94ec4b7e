#include "czlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "czlab/errors.hpp"

namespace czlab {

namespace {

using nlohmann::json;

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  return num(v);
}

json constants_json(const ExperimentConfig& c) {
  return json{{"config_hash", config_hash(c)}, {"C_lip", c.C_lip},       {"C_Y", c.C_Y},
              {"C_gate", c.C_gate},            {"C_climb", c.C_climb},   {"C_0", c.C_0},
              {"c_0", c.c_0},                  {"C_tail", c.C_tail},     {"C_good", c.C_good},
              {"sigma", c.sigma},              {"c_rhs", c.c_rhs},       {"exit_epsilon", c.exit_epsilon},
              {"exit_cap_fraction", c.exit_cap_fraction}};
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

/// Minimal line/bar chart in a fixed 640x420 frame.
class Svg {
 public:
  Svg(std::string title, double x0, double x1, double y0, double y1)
      : x0_(x0), x1_(x1), y0_(y0), y1_(y1) {
    if (!(x1_ > x0_)) x1_ = x0_ + 1.0;
    if (!(y1_ > y0_)) y1_ = y0_ + 1.0;
    body_ << "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n";
    body_ << "<rect x=\"60\" y=\"40\" width=\"540\" height=\"320\" fill=\"none\" stroke=\"black\"/>\n";
  }
  double px(double x) const { return 60.0 + 540.0 * (x - x0_) / (x1_ - x0_); }
  double py(double y) const { return 360.0 - 320.0 * (y - y0_) / (y1_ - y0_); }
  void polyline(const std::vector<double>& xs, const std::vector<double>& ys, const char* color,
                bool dashed = false) {
    if (xs.empty()) return;
    body_ << "<polyline fill=\"none\" stroke=\"" << color << "\"" << (dashed ? " stroke-dasharray=\"6,4\"" : "")
          << " points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) body_ << fmt(px(xs[i])) << ',' << fmt(py(ys[i])) << ' ';
    body_ << "\"/>\n";
  }
  void points(const std::vector<double>& xs, const std::vector<double>& ys) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      body_ << "<circle cx=\"" << fmt(px(xs[i])) << "\" cy=\"" << fmt(py(ys[i])) << "\" r=\"3\"/>\n";
    }
  }
  void bar(double xa, double xb, double h) {
    body_ << "<rect x=\"" << fmt(px(xa)) << "\" y=\"" << fmt(py(h)) << "\" width=\"" << fmt(px(xb) - px(xa))
          << "\" height=\"" << fmt(py(y0_) - py(h)) << "\" fill=\"steelblue\"/>\n";
  }
  void labels(const std::string& xl, const std::string& yl, const std::string& note) {
    body_ << "<text x=\"330\" y=\"395\" text-anchor=\"middle\" font-size=\"12\">" << xl << " [" << fmt(x0_)
          << ", " << fmt(x1_) << "]</text>\n";
    body_ << "<text x=\"16\" y=\"200\" font-size=\"12\" transform=\"rotate(-90 16 200)\">" << yl << " ["
          << fmt(y0_) << ", " << fmt(y1_) << "]</text>\n";
    body_ << "<text x=\"320\" y=\"414\" text-anchor=\"middle\" font-size=\"10\">" << note << "</text>\n";
  }
  std::string str() const {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\">\n" + body_.str() + "</svg>\n";
  }

 private:
  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
  }
  double x0_, x1_, y0_, y1_;
  std::ostringstream body_;
};

std::string note_line(const ExperimentConfig& c) {
  return "config " + config_hash(c) + " C_lip=" + num(c.C_lip) + " C_Y=" + num(c.C_Y) +
         " C_good=" + num(c.C_good) + " C_gate=" + num(c.C_gate) + " C_climb=" + num(c.C_climb);
}

std::string tail_svg(const ExperimentConfig& c, const EnsembleSummary& s) {
  std::vector<double> xs, ys;
  for (const TailPoint& p : s.tails.points) {
    if (p.pooled_fraction > 0.0) {
      xs.push_back(std::log10(p.T_over_tstar));
      ys.push_back(std::log10(p.pooled_fraction));
    }
  }
  double x0 = 0.0, x1 = 2.0, y0 = -6.0, y1 = 0.0;
  if (!s.tails.points.empty()) {
    x0 = std::log10(s.tails.points.front().T_over_tstar);
    x1 = std::log10(s.tails.points.back().T_over_tstar);
  }
  if (!ys.empty()) {
    y0 = std::floor(*std::min_element(ys.begin(), ys.end())) - 0.5;
    y1 = std::ceil(*std::max_element(ys.begin(), ys.end())) + 0.5;
  }
  Svg svg("pooled tail of M_1(|grad u|^2) in B_{R/2}", x0, x1, y0, y1);
  svg.points(xs, ys);
  svg.polyline(xs, ys, "black");
  if (!ys.empty()) {
    // predicted slope anchored at the first nonzero point
    const double a = ys.front() - s.tails.predicted_slope * xs.front();
    svg.polyline({x0, x1}, {a + s.tails.predicted_slope * x0, a + s.tails.predicted_slope * x1}, "red", true);
  }
  if (s.fit) {
    const double l0 = std::log10(s.fit->window_lo), l1 = std::log10(s.fit->window_hi);
    const double b = s.fit->intercept / std::log(10.0);
    svg.polyline({l0, l1}, {b + s.fit->slope * l0, b + s.fit->slope * l1}, "blue");
  }
  svg.labels("log10 T/t_star", "log10 fraction",
             note_line(c) + " predicted slope " + num(s.tails.predicted_slope) +
                 (s.fit ? " fitted " + num(s.fit->slope) : " fit: " + s.fit_error));
  return svg.str();
}

std::string khist_svg(const ExperimentConfig& c, const std::vector<TrialRecord>& records) {
  std::vector<double> logs;
  for (const TrialRecord& r : records) {
    if (!r.usable()) continue;
    for (double k : r.k_values) logs.push_back(std::log10(k));
  }
  double lo = 0.0, hi = 1.0;
  if (!logs.empty()) {
    lo = *std::min_element(logs.begin(), logs.end());
    hi = *std::max_element(logs.begin(), logs.end());
    if (!(hi > lo)) hi = lo + 1.0;
  }
  const int bins = 24;
  std::vector<double> counts(bins, 0.0);
  for (double v : logs) {
    int b = static_cast<int>((v - lo) / (hi - lo) * bins);
    counts[std::clamp(b, 0, bins - 1)] += 1.0;
  }
  double top = 0.0;
  for (double& cnt : counts) {
    cnt = cnt > 0.0 ? std::log10(cnt) + 1.0 : 0.0;
    top = std::max(top, cnt);
  }
  Svg svg("K histogram over probed cells", lo, hi, 0.0, top);
  for (int b = 0; b < bins; ++b) {
    svg.bar(lo + (hi - lo) * b / bins, lo + (hi - lo) * (b + 1) / bins, counts[b]);
  }
  svg.labels("log10 K", "1 + log10 count", note_line(c));
  return svg.str();
}

std::string ymoment_svg(const ExperimentConfig& c, const EnsembleSummary& s) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < s.exp_moment_curve.size(); ++i) {
    xs.push_back(static_cast<double>(i + 1));
    ys.push_back(std::log10(s.exp_moment_curve[i]));
  }
  double y0 = 0.0, y1 = 1.0;
  if (!ys.empty()) {
    y0 = *std::min_element(ys.begin(), ys.end());
    y1 = *std::max_element(ys.begin(), ys.end());
    if (!(y1 > y0)) {
      y0 -= 0.5;
      y1 += 0.5;
    }
  }
  Svg svg("running mean of exp(Y_R^s)", 1.0, std::max<double>(2.0, xs.size()), y0, y1);
  svg.polyline(xs, ys, "black");
  svg.labels("trials", "log10 mean", note_line(c));
  return svg.str();
}

}  // namespace

std::string provenance_line(const ExperimentConfig& c) {
  return "# czlab config_hash=" + config_hash(c) + " C_lip=" + num(c.C_lip) + " C_Y=" + num(c.C_Y) +
         " C_gate=" + num(c.C_gate) + " C_climb=" + num(c.C_climb) + " C_0=" + num(c.C_0) +
         " c_0=" + num(c.c_0) + " C_tail=" + num(c.C_tail) + " C_good=" + num(c.C_good) +
         " sigma=" + num(c.sigma) + " c_rhs=" + num(c.c_rhs) + " exit_epsilon=" + num(c.exit_epsilon) +
         " exit_cap_fraction=" + num(c.exit_cap_fraction) + "\n";
}

EnsembleSummary summarize(const ExperimentConfig& config, const std::vector<TrialRecord>& records) {
  const ExponentSet exps = config.exponents();
  EnsembleSummary s;
  s.trials = records.size();
  std::vector<std::vector<double>> pooled_k;
  double exp_sum = 0.0;
  std::size_t usable = 0;
  for (const TrialRecord& r : records) {
    if (!r.ok) {
      ++s.failed;
      continue;
    }
    if (r.discarded) {
      ++s.discarded;
      continue;
    }
    ++usable;
    for (const GoodLambdaRow& row : r.good_lambda) {
      ++s.levels;
      if (row.status != "ok") {
        ++s.level_errors;
        continue;
      }
      s.balls += row.selected;
      s.violations += row.violations;
      s.simple_violations += row.simple_violations;
      if (std::isfinite(row.c_meas)) s.max_c_meas = std::max(s.max_c_meas, row.c_meas);
      if (row.lhs > config.C_good * row.rhs1 + config.C_good * (row.rhs2 + row.rhs3)) ++s.c_meas_exceed;
    }
    if (r.w1p_ratio <= 1.0) ++s.w1p_pass;
    s.max_w1p_ratio = std::max(s.max_w1p_ratio, r.w1p_ratio);
    if (r.w1p_lhs > r.w1p_strong * (1.0 + 1e-12)) ++s.strong_form_failures;
    exp_sum += std::exp(std::pow(r.Y_R, config.s));
    s.exp_moment_curve.push_back(exp_sum / static_cast<double>(usable));
    pooled_k.push_back(r.k_values);
    if (!r.jensen_passed) ++s.jensen_failures;
    s.max_identity_error = std::max(s.max_identity_error, r.identity_error);
    if (r.cacc_rhs > 0.0) s.max_cacc_ratio = std::max(s.max_cacc_ratio, r.cacc_lhs / r.cacc_rhs);
  }
  s.w1p_pass_fraction = usable > 0 ? static_cast<double>(s.w1p_pass) / static_cast<double>(usable) : 0.0;
  s.tails = pool_tails(records, exps.tail_slope());
  try {
    s.fit = fit_tail_exponent(s.tails, config.fit_lo, config.fit_hi);
  } catch (const FitError& e) {
    s.fit_error = e.what();
  }
  s.concavity = k_tail_concavity(pooled_k, exps.n_moment);
  return s;
}

EnsembleResult run_ensemble(const ExperimentConfig& config, unsigned workers) {
  config.validate();
  EnsembleResult result;
  result.config = config;
  if (config.calibration_size > 0) {
    result.calibration_records =
        run_trials(config, config.calibration_seed, static_cast<std::size_t>(config.calibration_size), workers);
    result.calibration = calibrate(result.calibration_records);
    result.config.C_Y = result.calibration->C_Y;
    result.config.C_good = result.calibration->C_good;
  }
  result.records = run_trials(result.config, config.base_seed,
                              static_cast<std::size_t>(config.ensemble_size), workers);
  result.summary = summarize(result.config, result.records);
  return result;
}

std::string trial_json(const ExperimentConfig& config, const TrialRecord& r) {
  json j;
  j["provenance"] = constants_json(config);
  j["seed"] = r.seed;
  j["ok"] = r.ok;
  j["discarded"] = r.discarded;
  j["error"] = r.error;
  j["solve"] = {{"iterations", r.iterations},
                {"converged", r.converged},
                {"final_residual", finite_or_string(r.final_residual)},
                {"method", r.method}};
  j["t_star"] = r.t_star;
  j["grad_l1"] = r.grad_l1;
  j["f_norm"] = r.f_norm;
  j["M"] = r.M;
  json tails = json::array();
  for (const TailRow& t : r.tails) tails.push_back({{"T_over_tstar", t.T_over_tstar}, {"fraction", t.fraction}});
  j["tails"] = tails;
  j["sigma"] = r.sigma;
  j["omega"] = r.omega;
  j["beta"] = r.beta;
  json rows = json::array();
  for (const GoodLambdaRow& g : r.good_lambda) {
    rows.push_back({{"j", g.j},
                    {"T_over_tstar", g.T_over_tstar},
                    {"t", g.t},
                    {"status", g.status},
                    {"lhs", g.lhs},
                    {"rhs1", g.rhs1},
                    {"rhs2", g.rhs2},
                    {"rhs3", g.rhs3},
                    {"c_meas", finite_or_string(g.c_meas)},
                    {"I1", g.i1},
                    {"I2", g.i2},
                    {"I3", g.i3},
                    {"violations", g.violations},
                    {"simple_violations", g.simple_violations},
                    {"selected", g.selected},
                    {"exit_balls", g.exit_balls},
                    {"boundary_constant", g.boundary_constant}});
  }
  j["good_lambda"] = rows;
  j["K"] = {{"probes", r.probes}, {"censored_fraction", r.censored_fraction}, {"probed_values", r.k_values}};
  j["moments"] = {{"C_Y", r.C_Y}, {"Z_R", r.Z_R}, {"Y_R", r.Y_R}, {"identity_error", r.identity_error},
                  {"jensen_passed", r.jensen_passed}};
  j["w1p"] = {{"lhs", r.w1p_lhs},
              {"strong_lhs", r.w1p_strong},
              {"rhs", finite_or_string(r.w1p_rhs)},
              {"ratio", finite_or_string(r.w1p_ratio)},
              {"strong_ratio", finite_or_string(r.w1p_strong_ratio)}};
  j["caccioppoli"] = {{"lhs", r.cacc_lhs}, {"rhs", r.cacc_rhs}};
  j["membership_worst_ratio"] = r.membership_worst;
  return j.dump(1) + "\n";
}

namespace {

double real_field(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string t = v.get<std::string>();
    if (t == "inf") return std::numeric_limits<double>::infinity();
    if (t == "-inf") return -std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
  }
  throw IoError("expected a number in trial JSON");
}

}  // namespace

TrialRecord read_trial_json(const std::string& text) {
  TrialRecord r;
  try {
    const json j = json::parse(text);
    r.seed = j.at("seed").get<std::uint64_t>();
    r.ok = j.at("ok").get<bool>();
    r.discarded = j.at("discarded").get<bool>();
    r.error = j.at("error").get<std::string>();
    const json& sv = j.at("solve");
    r.iterations = sv.at("iterations").get<std::size_t>();
    r.converged = sv.at("converged").get<bool>();
    r.final_residual = real_field(sv.at("final_residual"));
    r.method = sv.at("method").get<std::string>();
    r.t_star = j.at("t_star").get<double>();
    r.grad_l1 = j.at("grad_l1").get<double>();
    r.f_norm = j.at("f_norm").get<double>();
    r.M = j.at("M").get<double>();
    for (const json& t : j.at("tails")) {
      r.tails.push_back({t.at("T_over_tstar").get<double>(), t.at("fraction").get<double>()});
    }
    r.sigma = j.at("sigma").get<double>();
    r.omega = j.at("omega").get<double>();
    r.beta = j.at("beta").get<double>();
    for (const json& g : j.at("good_lambda")) {
      GoodLambdaRow row;
      row.j = g.at("j").get<int>();
      row.T_over_tstar = g.at("T_over_tstar").get<double>();
      row.t = g.at("t").get<double>();
      row.status = g.at("status").get<std::string>();
      row.lhs = g.at("lhs").get<double>();
      row.rhs1 = g.at("rhs1").get<double>();
      row.rhs2 = g.at("rhs2").get<double>();
      row.rhs3 = g.at("rhs3").get<double>();
      row.c_meas = real_field(g.at("c_meas"));
      row.i1 = g.at("I1").get<std::size_t>();
      row.i2 = g.at("I2").get<std::size_t>();
      row.i3 = g.at("I3").get<std::size_t>();
      row.violations = g.at("violations").get<std::size_t>();
      row.simple_violations = g.at("simple_violations").get<std::size_t>();
      row.selected = g.at("selected").get<std::size_t>();
      row.exit_balls = g.at("exit_balls").get<std::size_t>();
      row.boundary_constant = g.at("boundary_constant").get<double>();
      r.good_lambda.push_back(row);
    }
    const json& k = j.at("K");
    r.probes = k.at("probes").get<std::size_t>();
    r.censored_fraction = k.at("censored_fraction").get<double>();
    r.k_values = k.at("probed_values").get<std::vector<double>>();
    const json& m = j.at("moments");
    r.C_Y = m.at("C_Y").get<double>();
    r.Z_R = m.at("Z_R").get<double>();
    r.Y_R = m.at("Y_R").get<double>();
    r.identity_error = m.at("identity_error").get<double>();
    r.jensen_passed = m.at("jensen_passed").get<bool>();
    const json& w = j.at("w1p");
    r.w1p_lhs = w.at("lhs").get<double>();
    r.w1p_strong = w.at("strong_lhs").get<double>();
    r.w1p_rhs = real_field(w.at("rhs"));
    r.w1p_ratio = real_field(w.at("ratio"));
    r.w1p_strong_ratio = real_field(w.at("strong_ratio"));
    r.cacc_lhs = j.at("caccioppoli").at("lhs").get<double>();
    r.cacc_rhs = j.at("caccioppoli").at("rhs").get<double>();
    r.membership_worst = j.at("membership_worst_ratio").get<double>();
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed trial JSON: ") + e.what());
  }
  return r;
}

void emit_report(const EnsembleResult& result, const std::string& directory) {
  const ExperimentConfig& c = result.config;
  const EnsembleSummary& s = result.summary;
  if (result.records.empty()) throw ValidationError("emit_report needs at least one record");
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw IoError("cannot create '" + directory + "': " + ec.message());
  const fs::path dir(directory);
  const std::string head = provenance_line(c);

  std::ostringstream trials;
  trials << head
         << "seed,ok,discarded,iterations,converged,final_residual,t_star,M,Z_R,Y_R,w1p_lhs,w1p_strong,"
            "w1p_rhs,w1p_ratio,probes,censored_fraction,cacc_lhs,cacc_rhs,membership_worst,jensen_passed,error\n";
  for (const TrialRecord& r : result.records) {
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    trials << r.seed << ',' << r.ok << ',' << r.discarded << ',' << r.iterations << ',' << r.converged << ','
           << num(r.final_residual) << ',' << num(r.t_star) << ',' << num(r.M) << ',' << num(r.Z_R) << ','
           << num(r.Y_R) << ',' << num(r.w1p_lhs) << ',' << num(r.w1p_strong) << ',' << num(r.w1p_rhs) << ','
           << num(r.w1p_ratio) << ',' << r.probes << ',' << num(r.censored_fraction) << ',' << num(r.cacc_lhs)
           << ',' << num(r.cacc_rhs) << ',' << num(r.membership_worst) << ',' << r.jensen_passed << ',' << err
           << '\n';
  }
  write_file(dir / "trials.csv", trials.str());

  std::ostringstream tails;
  tails << head << "T_over_tstar,pooled_fraction,n_trials\n";
  for (const TailPoint& p : s.tails.points) {
    tails << num(p.T_over_tstar) << ',' << num(p.pooled_fraction) << ',' << p.n_trials << '\n';
  }
  write_file(dir / "tails.csv", tails.str());

  std::ostringstream gl;
  gl << head
     << "seed,j,T_over_tstar,t,LHS,RHS1,RHS2,RHS3,C_meas,I1,I2,I3,violations,simple_violations,selected,"
        "exit_balls,boundary_constant,status\n";
  for (const TrialRecord& r : result.records) {
    for (const GoodLambdaRow& g : r.good_lambda) {
      std::string status = g.status;
      std::replace(status.begin(), status.end(), ',', ';');
      gl << r.seed << ',' << g.j << ',' << num(g.T_over_tstar) << ',' << num(g.t) << ',' << num(g.lhs) << ','
         << num(g.rhs1) << ',' << num(g.rhs2) << ',' << num(g.rhs3) << ',' << num(g.c_meas) << ',' << g.i1
         << ',' << g.i2 << ',' << g.i3 << ',' << g.violations << ',' << g.simple_violations << ','
         << g.selected << ',' << g.exit_balls << ',' << num(g.boundary_constant) << ',' << status << '\n';
    }
  }
  write_file(dir / "goodlambda.csv", gl.str());

  std::ostringstream mom;
  mom << head << "seed,Z_R,Y_R,censored_fraction\n";
  for (const TrialRecord& r : result.records) {
    if (!r.ok) continue;
    mom << r.seed << ',' << num(r.Z_R) << ',' << num(r.Y_R) << ',' << num(r.censored_fraction) << '\n';
  }
  write_file(dir / "moments.csv", mom.str());

  json sum;
  sum["provenance"] = constants_json(c);
  sum["config"] = canonical_text(c);
  sum["trials"] = s.trials;
  sum["failed"] = s.failed;
  sum["discarded"] = s.discarded;
  if (result.calibration) {
    const Calibration& cal = *result.calibration;
    sum["calibration"] = {{"trials", cal.trials},
                          {"max_unit_ratio", cal.max_unit_ratio},
                          {"C_Y", cal.C_Y},
                          {"max_c_meas", cal.max_c_meas},
                          {"C_good", cal.C_good},
                          {"infinite_c_meas", cal.infinite_c_meas}};
  }
  json tail = {{"predicted_slope", s.tails.predicted_slope}, {"window", {c.fit_lo, c.fit_hi}}};
  if (s.fit) {
    tail["slope"] = s.fit->slope;
    tail["stderr"] = s.fit->stderr_slope;
    tail["residuals"] = s.fit->residuals;
  } else {
    tail["error"] = s.fit_error;
  }
  sum["tail_fit"] = tail;
  sum["good_lambda"] = {{"levels", s.levels},
                        {"level_errors", s.level_errors},
                        {"selected_balls", s.balls},
                        {"violations", s.violations},
                        {"simple_violations", s.simple_violations},
                        {"max_c_meas", s.max_c_meas},
                        {"c_meas_exceed", s.c_meas_exceed}};
  sum["w1p"] = {{"pass", s.w1p_pass},
                {"pass_fraction", s.w1p_pass_fraction},
                {"max_ratio", finite_or_string(s.max_w1p_ratio)},
                {"strong_form_failures", s.strong_form_failures}};
  sum["moments"] = {{"exp_moment_curve", s.exp_moment_curve},
                    {"jensen_failures", s.jensen_failures},
                    {"max_identity_error", s.max_identity_error}};
  sum["k_tail_concavity"] = {{"passed", s.concavity.passed},
                             {"points", s.concavity.points},
                             {"worst_z", s.concavity.worst_z},
                             {"thresholds", s.concavity.thresholds},
                             {"survival", s.concavity.survival}};
  sum["max_caccioppoli_ratio"] = s.max_cacc_ratio;
  write_file(dir / "summary.json", sum.dump(1) + "\n");

  write_file(dir / "tail.svg", tail_svg(c, s));
  write_file(dir / "khist.svg", khist_svg(c, result.records));
  write_file(dir / "ymoment.svg", ymoment_svg(c, s));
  for (const TrialRecord& r : result.records) {
    write_file(dir / ("trial_" + std::to_string(r.seed) + ".json"), trial_json(c, r));
  }
}

}  // namespace czlab
