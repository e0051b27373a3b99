#include "simrs/spsa.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace simrs::spsa {

namespace {
constexpr double kMachineEps = std::numeric_limits<double>::epsilon();
}  // namespace

void Gains::validate() const {
  if (!(a > 0.0)) throw std::invalid_argument("spsa gains: a must be positive");
  if (!(c > 0.0)) throw std::invalid_argument("spsa gains: c must be positive");
  if (!(alpha > 0.5 && alpha <= 1.0)) throw std::invalid_argument("spsa gains: alpha not in (0.5, 1]");
  if (!(gamma > 0.0 && gamma <= 0.5)) throw std::invalid_argument("spsa gains: gamma not in (0, 0.5]");
  if (!(A >= 0.0)) throw std::invalid_argument("spsa gains: A must be >= 0");
}

std::pair<double, double> gains_at(const Gains& g, std::size_t t) {
  const double td = static_cast<double>(t);
  return {g.a / std::pow(g.A + td + 1.0, g.alpha), g.c / std::pow(td + 1.0, g.gamma)};
}

RVector identity_projection(const RVector& z) { return z; }

double wrap_angle(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2pi.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

RVector wrap_phase(const RVector& z) { return z.unaryExpr([](double v) { return wrap_angle(v); }); }

RVector project_power(const RVector& z, double total_power, double eps) {
  const RVector clipped = z.cwiseMax(0.0);
  const double sum = clipped.sum();
  // Points already on the simplex (up to summation rounding) are returned as is,
  // which makes the projection exactly idempotent.
  if (clipped == z && std::abs(sum - total_power) <= 64.0 * kMachineEps * total_power) return z;
  const double scale = total_power / std::max(sum, eps);
  return scale * clipped;
}

RVector draw_perturbation(Eigen::Index dim, Rng& rng) {
  RVector d(dim);
  // One random bit per coordinate, taken from successive engine outputs.
  for (Eigen::Index i = 0; i < dim; ++i) d(i) = (rng() >> 63) ? 1.0 : -1.0;
  return d;
}

Estimate estimate_gradient(const Objective& objective, const RVector& x, double c,
                           const Projection& projection, Rng& rng) {
  const RVector delta = draw_perturbation(x.size(), rng);
  const RVector plus = projection(x + c * delta);
  const RVector minus = projection(x - c * delta);
  Estimate e;
  e.f_plus = objective(plus);
  if (!std::isfinite(e.f_plus)) throw NonFiniteObjective("spsa: non-finite objective at x+", plus);
  e.f_minus = objective(minus);
  if (!std::isfinite(e.f_minus))
    throw NonFiniteObjective("spsa: non-finite objective at x-", minus);
  // Rademacher entries are their own inverses.
  e.gradient = ((e.f_plus - e.f_minus) / (2.0 * c)) * delta;
  return e;
}

Step step(const Objective& objective, const RVector& x, std::size_t t, const Gains& gains,
          const Projection& projection, Rng& rng) {
  const auto [a_t, c_t] = gains_at(gains, t);
  const Estimate e = estimate_gradient(objective, x, c_t, projection, rng);
  Step s;
  s.x = projection(x + a_t * e.gradient);
  s.diagnostics = {t, e.f_plus, e.f_minus, e.gradient.norm()};
  return s;
}

void write_trace(std::ostream& os, const std::vector<Diagnostics>& trace) {
  os << "t,f_plus,f_minus,grad_norm\n";
  os.precision(17);
  for (const auto& d : trace)
    os << d.t << ',' << d.f_plus << ',' << d.f_minus << ',' << d.grad_norm << '\n';
}

}  // namespace simrs::spsa
