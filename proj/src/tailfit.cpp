#include "czlab/tailfit.hpp"

#include <cmath>
#include <string>

#include "czlab/errors.hpp"

namespace czlab {

TailTable pool_tails(const std::vector<TrialRecord>& records, double predicted_slope) {
  TailTable table;
  table.predicted_slope = predicted_slope;
  for (const TrialRecord& r : records) {
    if (!r.usable() || !(r.t_star > 0.0)) continue;
    if (table.points.empty()) {
      for (const TailRow& row : r.tails) table.points.push_back({row.T_over_tstar, 0.0, 0});
    }
    if (r.tails.size() != table.points.size()) {
      throw ValidationError("trials disagree on the threshold ladder");
    }
    for (std::size_t j = 0; j < r.tails.size(); ++j) {
      table.points[j].pooled_fraction += r.tails[j].fraction;
      ++table.points[j].n_trials;
    }
  }
  for (TailPoint& p : table.points) {
    if (p.n_trials > 0) p.pooled_fraction /= static_cast<double>(p.n_trials);
  }
  return table;
}

TailFit fit_tail_exponent(const TailTable& table, double lo, double hi) {
  TailFit fit;
  fit.window_lo = lo;
  fit.window_hi = hi;
  std::vector<double> y;
  for (const TailPoint& p : table.points) {
    const double slack = 1e-9 * p.T_over_tstar;
    if (p.T_over_tstar < lo - slack || p.T_over_tstar > hi + slack) continue;
    if (!(p.pooled_fraction > 0.0)) continue;
    fit.x.push_back(std::log(p.T_over_tstar));
    y.push_back(std::log(p.pooled_fraction));
  }
  const std::size_t n = fit.x.size();
  if (n < 5) {
    throw FitError("tail fit needs >= 5 nonzero ladder points in [" + std::to_string(lo) + ", " +
                   std::to_string(hi) + "], found " + std::to_string(n));
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += fit.x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (fit.x[i] - mx) * (fit.x[i] - mx);
    sxy += (fit.x[i] - mx) * (y[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * fit.x[i]);
    fit.residuals.push_back(r);
    ss += r * r;
  }
  fit.stderr_slope = std::sqrt(ss / static_cast<double>(n - 2) / sxx);
  return fit;
}

}  // namespace czlab
