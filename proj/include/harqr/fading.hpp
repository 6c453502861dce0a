#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/expint.hpp>

#include "harqr/rng.hpp"
#include "harqr/snr.hpp"

namespace harqr {

enum class FadingKind { rayleigh, deterministic, two_point };

// Distribution of the per-block power gain z. Block fading: z is drawn
// i.i.d. per block and held fixed within the block.
//
//   rayleigh(mean)        z ~ Exponential(mean); mean 1 matches a unit-variance
//                         circularly symmetric complex Gaussian coefficient.
//   deterministic(z)      point mass.
//   two_point(za, zb, pa) z = za with probability pa, else zb.
class FadingModel {
 public:
  static FadingModel rayleigh(double mean_gain) {
    if (!(mean_gain > 0.0))
      throw std::invalid_argument("FadingModel: mean_gain must be > 0");
    FadingModel m;
    m.kind_ = FadingKind::rayleigh;
    m.a_ = mean_gain;
    return m;
  }

  static FadingModel deterministic(double z) {
    if (!(z >= 0.0))
      throw std::invalid_argument("FadingModel: gain must be >= 0");
    FadingModel m;
    m.kind_ = FadingKind::deterministic;
    m.a_ = z;
    return m;
  }

  static FadingModel two_point(double z_a, double z_b, double p_a) {
    if (!(z_a >= 0.0) || !(z_b >= 0.0))
      throw std::invalid_argument("FadingModel: gains must be >= 0");
    if (!(p_a >= 0.0 && p_a <= 1.0))
      throw std::invalid_argument("FadingModel: p_a must be in [0, 1]");
    FadingModel m;
    m.kind_ = FadingKind::two_point;
    m.a_ = z_a;
    m.b_ = z_b;
    m.p_ = p_a;
    return m;
  }

  FadingKind kind() const { return kind_; }
  double rayleigh_mean() const { return a_; }
  double fixed_gain() const { return a_; }
  double gain_a() const { return a_; }
  double gain_b() const { return b_; }
  double prob_a() const { return p_; }

  double mean_gain() const {
    switch (kind_) {
      case FadingKind::rayleigh:
      case FadingKind::deterministic:
        return a_;
      case FadingKind::two_point:
        return p_ * a_ + (1.0 - p_) * b_;
    }
    return a_;
  }

  // One i.i.d. draw of z. Rayleigh gains are sampled directly as
  // exponential variates (equal in law to |h|^2, one draw per block).
  double sample(RngStream& rng) const {
    switch (kind_) {
      case FadingKind::rayleigh:
        return rng.next_exponential(a_);
      case FadingKind::deterministic:
        return a_;
      case FadingKind::two_point:
        return rng.next_unit_positive() <= p_ ? a_ : b_;
    }
    return a_;
  }

 private:
  FadingModel() = default;

  FadingKind kind_ = FadingKind::deterministic;
  double a_ = 0.0;
  double b_ = 0.0;
  double p_ = 0.0;
};

inline double sample_gain(const FadingModel& model, RngStream& rng) {
  return model.sample(rng);
}

// Instantaneous capacity of one fading block, log2(1 + snr z) bit/s/Hz.
inline double instantaneous_capacity(double z, const SnrConfig& snr) {
  if (!(z >= 0.0)) throw std::invalid_argument("instantaneous_capacity: z < 0");
  return std::log1p(snr.linear() * z) / std::numbers::ln2;
}

namespace detail {

// exp(x) * E1(x) for x > 0 without overflow. E1 underflows near x ~ 700,
// so switch to the asymptotic continued expansion for large x.
inline double expx_e1(double x) {
  if (x < 500.0) return std::exp(x) * boost::math::expint(1, x);
  // e^x E1(x) = (1/x) sum_k (-1)^k k! / x^k; truncate while terms shrink.
  double sum = 1.0, term = 1.0;
  for (int k = 1; k <= 8; ++k) {
    term *= -static_cast<double>(k) / x;
    sum += term;
  }
  return sum / x;
}

}  // namespace detail

// E{log2(1 + snr z)}. All bundled models admit a closed form; the
// Rayleigh case is exp(1/s) E1(1/s) / ln 2 with s = snr * mean_gain.
inline double ergodic_capacity(const FadingModel& model, const SnrConfig& snr) {
  switch (model.kind()) {
    case FadingKind::deterministic:
      return instantaneous_capacity(model.fixed_gain(), snr);
    case FadingKind::two_point:
      return model.prob_a() * instantaneous_capacity(model.gain_a(), snr) +
             (1.0 - model.prob_a()) * instantaneous_capacity(model.gain_b(), snr);
    case FadingKind::rayleigh: {
      const double s = snr.linear() * model.rayleigh_mean();
      return detail::expx_e1(1.0 / s) / std::numbers::ln2;
    }
  }
  return 0.0;
}

}  // namespace harqr
