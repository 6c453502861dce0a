#pragma once

#include <array>
#include <cmath>
#include <utility>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "harqr/errors.hpp"
#include "harqr/fading.hpp"

namespace harqr {
namespace quad {

inline constexpr double kDefaultRelTol = 1e-9;

namespace detail {

// Upper integration limit for integrand h over [0, inf): extend until h
// falls below 1e-15 of the largest value seen. Assumes exponential decay,
// which holds for every weighted-gain integrand used here.
template <class H>
double tail_cutoff(H&& h, double scale) {
  double peak = std::abs(h(0.0));
  for (double z = 0.0625 * scale; z <= 8.0 * scale; z *= 2.0)
    peak = std::max(peak, std::abs(h(z)));
  if (peak == 0.0) return 64.0 * scale;
  double hi = 36.0 * scale;  // exp(-36) ~ 2e-16 of the density peak
  while (std::abs(h(hi)) > 1e-15 * peak && hi < 1e6 * scale) hi *= 1.5;
  return hi;
}

}  // namespace detail

// E{f(z)} over the gain distribution. Finite mixtures evaluate exactly;
// the Rayleigh case integrates f(z) exp(-z/mu)/mu by adaptive
// Gauss-Kronrod over a tail-truncated interval.
template <class F>
double gain_expectation(const FadingModel& model, F&& f,
                        double rel_tol = kDefaultRelTol) {
  switch (model.kind()) {
    case FadingKind::deterministic:
      return f(model.fixed_gain());
    case FadingKind::two_point:
      return model.prob_a() * f(model.gain_a()) +
             (1.0 - model.prob_a()) * f(model.gain_b());
    case FadingKind::rayleigh: {
      const double mu = model.rayleigh_mean();
      auto h = [&](double z) { return f(z) * std::exp(-z / mu) / mu; };
      const double hi = detail::tail_cutoff(h, mu);
      double err = 0.0;
      const double value =
          boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
              h, 0.0, hi, 15, rel_tol, &err);
      const double rel_err = err / std::max(std::abs(value), 1e-300);
      if (rel_err > 50.0 * rel_tol)
        throw IntegrationError("gain_expectation did not converge", rel_err);
      return value;
    }
  }
  return 0.0;
}

// E{f(z)} and E{g(z)} evaluated on one shared node set, so that derived
// differences (variances) do not mix inconsistent discretizations.
// Composite fixed-order Gauss with panel doubling until both stabilize.
template <class F, class G>
std::pair<double, double> gain_expectation_pair(const FadingModel& model, F&& f,
                                                G&& g,
                                                double rel_tol = kDefaultRelTol) {
  if (model.kind() != FadingKind::rayleigh)
    return {gain_expectation(model, f), gain_expectation(model, g)};

  const double mu = model.rayleigh_mean();
  auto wf = [&](double z) { return f(z) * std::exp(-z / mu) / mu; };
  auto wg = [&](double z) { return g(z) * std::exp(-z / mu) / mu; };
  const double hi =
      std::max(detail::tail_cutoff(wf, mu), detail::tail_cutoff(wg, mu));

  using rule = boost::math::quadrature::gauss<double, 30>;
  double prev_f = 0.0, prev_g = 0.0;
  for (int panels = 4; panels <= 16384; panels *= 2) {
    double sf = 0.0, sg = 0.0;
    const double w = hi / panels;
    for (int i = 0; i < panels; ++i) {
      sf += rule::integrate(wf, i * w, (i + 1) * w);
      sg += rule::integrate(wg, i * w, (i + 1) * w);
    }
    if (panels > 4) {
      const double df = std::abs(sf - prev_f) / std::max(std::abs(sf), 1e-300);
      const double dg = std::abs(sg - prev_g) / std::max(std::abs(sg), 1e-300);
      if (df <= rel_tol && dg <= rel_tol) return {sf, sg};
    }
    prev_f = sf;
    prev_g = sg;
  }
  throw IntegrationError("gain_expectation_pair did not converge", rel_tol);
}

}  // namespace quad
}  // namespace harqr
