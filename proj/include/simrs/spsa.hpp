#pragma once

#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "simrs/rng.hpp"
#include "simrs/types.hpp"

// Projected simultaneous-perturbation stochastic approximation (ascent form).
namespace simrs::spsa {

// a_t = a / (A + t + 1)^alpha,  c_t = c / (t + 1)^gamma.
struct Gains {
  double a = 0.1;
  double A = 0.0;
  double alpha = 0.602;
  double c = 0.1;
  double gamma = 0.101;

  void validate() const;
};

std::pair<double, double> gains_at(const Gains& gains, std::size_t t);

using Objective = std::function<double(const RVector&)>;

// Maps a raw point onto the feasible set; must be idempotent.
using Projection = std::function<RVector(const RVector&)>;

RVector identity_projection(const RVector& z);

// Element-wise reduction onto [0, 2pi).
RVector wrap_phase(const RVector& z);
double wrap_angle(double angle);

// P_t / max(1^T max(z, 0), eps) * max(z, 0).
RVector project_power(const RVector& z, double total_power, double eps);

// Rademacher sign vector.
RVector draw_perturbation(Eigen::Index dim, Rng& rng);

struct Diagnostics {
  std::size_t t = 0;
  double f_plus = 0.0;
  double f_minus = 0.0;
  double grad_norm = 0.0;
};

struct Estimate {
  RVector gradient;
  double f_plus = 0.0;
  double f_minus = 0.0;
};

// Two-sided estimate (f(P(x + c D)) - f(P(x - c D))) / (2c) * D^-1.
Estimate estimate_gradient(const Objective& objective, const RVector& x, double c,
                           const Projection& projection, Rng& rng);

struct Step {
  RVector x;
  Diagnostics diagnostics;
};

// Thrown when the objective returns a non-finite value.
class NonFiniteObjective : public std::runtime_error {
 public:
  NonFiniteObjective(const std::string& what, RVector point)
      : std::runtime_error(what), point_(std::move(point)) {}
  const RVector& point() const { return point_; }

 private:
  RVector point_;
};

// One projected ascent step; exactly two objective evaluations.
Step step(const Objective& objective, const RVector& x, std::size_t t, const Gains& gains,
          const Projection& projection, Rng& rng);

void write_trace(std::ostream& os, const std::vector<Diagnostics>& trace);

}  // namespace simrs::spsa
