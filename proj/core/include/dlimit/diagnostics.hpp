#pragma once

#include <string>
#include <vector>

#include "dlimit/eos.hpp"
#include "dlimit/fields.hpp"

namespace dlimit {

/// Scalars emitted once per accepted step by the solvers.
struct StepDiagnostics {
  double t = 0.0;
  double dt = 0.0;
  double min_p = 0.0;
  double min_S = 0.0;
  double div_H = 0.0;      ///< max |div H| on the grid
  double max_speed = 0.0;  ///< CFL speed used for the step
  double maxwell_speed = 0.0;  ///< 1/sqrt(eps); 0 for the MHD solver
  int substeps = 1;        ///< > 1 when the CFL guard subdivided the step
};

class MetricsSink {
 public:
  virtual ~MetricsSink() = default;
  virtual void record(const StepDiagnostics& d) = 0;
  virtual void warn(const std::string& message) { (void)message; }
};

/// Keeps everything in memory; handy for tests and for the harness.
class RecordingSink : public MetricsSink {
 public:
  void record(const StepDiagnostics& d) override { steps.push_back(d); }
  void warn(const std::string& message) override { warnings.push_back(message); }

  std::vector<StepDiagnostics> steps;
  std::vector<std::string> warnings;
};

/// Throws PositivityError if min p <= p_floor or min S <= S_floor, and
/// NumericalError on any non-finite sample.
void check_positivity(const ScalarField& p, const ScalarField& S, const EosClosure& eos,
                      double t);

/// Pointwise closure coefficients on a grid.
ScalarField density_field(const ScalarField& S, const ScalarField& p, const EosClosure& eos);
ScalarField coeff_a_field(const ScalarField& S, const ScalarField& p, const EosClosure& eos);
ScalarField coeff_b_field(const ScalarField& S, const ScalarField& p, const EosClosure& eos);

}  // namespace dlimit
