#include "dlimit/rate_fit.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <sstream>

#include "dlimit/errors.hpp"

namespace dlimit {

namespace {

struct Line {
  double slope, intercept;
};

Line ols(const std::vector<double>& x, const std::vector<double>& y, std::size_t skip) {
  double mx = 0.0, my = 0.0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i == skip) continue;
    mx += x[i];
    my += y[i];
    ++m;
  }
  mx /= m;
  my /= m;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i == skip) continue;
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (!(sxx > 0.0)) throw DomainError("fit_rate: abscissae are all equal");
  const double b = sxy / sxx;
  return {b, my - b * mx};
}

}  // namespace

RateFit fit_rate(const std::vector<std::pair<double, double>>& pairs) {
  RateFit out;
  std::vector<double> x, y;
  std::vector<std::size_t> origin;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [a, b] = pairs[i];
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
      out.excluded.push_back(i);
      std::ostringstream os;
      os << "point " << i << " (" << a << ", " << b << ") excluded: not positive and finite";
      out.warnings.push_back(os.str());
      continue;
    }
    x.push_back(std::log(a));
    y.push_back(std::log(b));
    origin.push_back(i);
  }
  const std::size_t n = x.size();
  out.used = n;
  if (n < 3) throw DomainError("fit_rate: fewer than three usable points");

  const Line full = ols(x, y, n);
  out.slope = full.slope;
  out.intercept = full.intercept;

  // Jackknife over leave-one-out fits, plus deleted residuals for outliers.
  std::vector<double> loo(n), deleted(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Line l = ols(x, y, i);
    loo[i] = l.slope;
    deleted[i] = std::abs(y[i] - (l.intercept + l.slope * x[i]));
  }
  double mean = 0.0;
  for (double s : loo) mean += s;
  mean /= n;
  double var = 0.0;
  for (double s : loo) var += (s - mean) * (s - mean);
  const double se = std::sqrt(var * (n - 1) / n);
  const boost::math::students_t dist(static_cast<double>(n - 1));
  const double q = boost::math::quantile(boost::math::complement(dist, 0.025));
  out.ci_low = out.slope - q * se;
  out.ci_high = out.slope + q * se;

  // Outlier: the worst deleted residual against the scatter of the fit that
  // leaves that point out.
  if (n >= 4) {
    std::size_t worst = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (deleted[i] > deleted[worst]) worst = i;
    const Line l = ols(x, y, worst);
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == worst) continue;
      const double r = y[i] - (l.intercept + l.slope * x[i]);
      ssr += r * r;
    }
    const double scale = std::sqrt(ssr / static_cast<double>(n - 3));
    if (deleted[worst] > 0.02 && deleted[worst] > 6.0 * scale) {
      out.outlier = true;
      out.outlier_index = origin[worst];
      std::ostringstream os;
      os << "point " << origin[worst] << " is an outlier (deleted log-residual " << deleted[worst]
         << ", scatter of the rest " << scale << ")";
      out.warnings.push_back(os.str());
    }
  }
  return out;
}

}  // namespace dlimit
