#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace dlimit {

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;  ///< log-space intercept
  double ci_low = 0.0;     ///< 95% interval from the leave-one-out (jackknife) spread
  double ci_high = 0.0;
  std::size_t used = 0;
  std::vector<std::size_t> excluded;  ///< indices dropped for nonpositive or non-finite values
  bool outlier = false;
  std::size_t outlier_index = 0;  ///< valid when outlier is set
  std::vector<std::string> warnings;
};

/// Least squares on (log x, log y). Points with y <= 0 are skipped with a
/// warning; fewer than three usable points throws DomainError.
RateFit fit_rate(const std::vector<std::pair<double, double>>& pairs);

}  // namespace dlimit
