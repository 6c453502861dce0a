#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "harqr/errors.hpp"
#include "harqr/fading.hpp"
#include "harqr/rng.hpp"
#include "harqr/snr.hpp"

namespace harqr {

enum class Scheme { harq_ir, plain_arq, harq_ir_deadline };

inline constexpr long kDefaultBlockGuard = 1'000'000;

// One message transmission: what to send, over what channel, with which
// retransmission rule. `deadline` (T_u) caps the rounds per message and is
// meaningful only for harq_ir_deadline; empty means unbounded.
struct ProtocolSpec {
  Scheme scheme;
  double rate;  // fixed transmission rate R, bit/s/Hz
  SnrConfig snr;
  FadingModel model;
  std::optional<long> deadline{};
  long max_blocks_guard = kDefaultBlockGuard;

  void validate() const {
    if (!(rate > 0.0)) throw std::invalid_argument("ProtocolSpec: rate must be > 0");
    if (deadline && *deadline < 1)
      throw std::invalid_argument("ProtocolSpec: deadline must be >= 1 block");
    if (max_blocks_guard < 1)
      throw std::invalid_argument("ProtocolSpec: max_blocks_guard must be >= 1");
  }
};

// Result of transmitting one message. For the deadline scheme,
// duration = within_attempt_duration + failed_attempts * T_u; otherwise
// failed_attempts is 0 and within_attempt_duration equals duration.
struct TransmissionOutcome {
  long duration = 0;
  long failed_attempts = 0;
  long within_attempt_duration = 0;
};

// Samples the random transmission time T of one message.
//
// HARQ-IR decodes at the first block where the accumulated capacity
// strictly exceeds R; a sum exactly equal to R does not decode. Plain ARQ
// treats each block alone: success iff that block's capacity exceeds R.
// The deadline scheme aborts an attempt after T_u blocks, discards the
// message, and starts fresh; it reports the time to the first success.
//
// try_sample() is budget-bounded: it consumes at most `max_blocks` fading
// blocks from the stream and returns nothing if the message is still in
// flight, which keeps horizon-bounded renewal counting at O(horizon) work
// even when E{T} is astronomically large. sample() uses the spec's guard
// as the budget and converts exhaustion into GuardExceededError.
class TransmissionSampler {
 public:
  explicit TransmissionSampler(const ProtocolSpec& spec) : spec_(spec) {
    spec_.validate();
    snr_linear_ = spec_.snr.linear();
    if (spec_.model.kind() == FadingKind::deterministic)
      cap_a_ = instantaneous_capacity(spec_.model.fixed_gain(), spec_.snr);
    if (spec_.model.kind() == FadingKind::two_point) {
      cap_a_ = instantaneous_capacity(spec_.model.gain_a(), spec_.snr);
      cap_b_ = instantaneous_capacity(spec_.model.gain_b(), spec_.snr);
    }
  }

  const ProtocolSpec& spec() const { return spec_; }

  std::optional<TransmissionOutcome> try_sample(RngStream& rng,
                                                long max_blocks) const {
    switch (spec_.scheme) {
      case Scheme::harq_ir:
        return try_harq_ir(rng, max_blocks);
      case Scheme::plain_arq:
        return try_plain_arq(rng, max_blocks);
      case Scheme::harq_ir_deadline:
        return try_deadline(rng, max_blocks);
    }
    return std::nullopt;
  }

  TransmissionOutcome sample(RngStream& rng) const {
    auto out = try_sample(rng, spec_.max_blocks_guard);
    if (!out)
      throw GuardExceededError(
          "transmission exceeded max_blocks_guard=" +
          std::to_string(spec_.max_blocks_guard) +
          " blocks; the channel/rate combination looks degenerate");
    return *out;
  }

  long sample_duration(RngStream& rng) const { return sample(rng).duration; }

 private:
  double next_capacity(RngStream& rng) const {
    switch (spec_.model.kind()) {
      case FadingKind::rayleigh:
        return std::log1p(snr_linear_ * rng.next_exponential(
                                            spec_.model.rayleigh_mean())) /
               std::numbers::ln2;
      case FadingKind::deterministic:
        return cap_a_;
      case FadingKind::two_point:
        return rng.next_unit_positive() <= spec_.model.prob_a() ? cap_a_ : cap_b_;
    }
    return 0.0;
  }

  std::optional<TransmissionOutcome> try_harq_ir(RngStream& rng,
                                                 long max_blocks) const {
    // Kahan-compensated accumulation: the strict comparison at rate
    // boundaries must not drift after hundreds of partial sums.
    double sum = 0.0, comp = 0.0;
    for (long m = 1; m <= max_blocks; ++m) {
      const double y = next_capacity(rng) - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
      if (sum > spec_.rate) return TransmissionOutcome{m, 0, m};
    }
    return std::nullopt;
  }

  std::optional<TransmissionOutcome> try_plain_arq(RngStream& rng,
                                                   long max_blocks) const {
    for (long m = 1; m <= max_blocks; ++m)
      if (next_capacity(rng) > spec_.rate) return TransmissionOutcome{m, 0, m};
    return std::nullopt;
  }

  std::optional<TransmissionOutcome> try_deadline(RngStream& rng,
                                                  long max_blocks) const {
    if (!spec_.deadline) {
      // Unbounded T_u: the constraint is inactive.
      return try_harq_ir(rng, max_blocks);
    }
    const long t_u = *spec_.deadline;
    long used = 0;
    long failures = 0;
    while (used < max_blocks) {
      double sum = 0.0, comp = 0.0;
      const long attempt_cap = std::min(t_u, max_blocks - used);
      for (long n = 1; n <= attempt_cap; ++n) {
        const double y = next_capacity(rng) - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (sum > spec_.rate)
          return TransmissionOutcome{failures * t_u + n, failures, n};
      }
      used += attempt_cap;
      if (attempt_cap < t_u) break;  // budget ended mid-attempt
      ++failures;                    // message outdated, restart from zero
    }
    return std::nullopt;
  }

  ProtocolSpec spec_;
  double snr_linear_ = 0.0;
  double cap_a_ = 0.0;
  double cap_b_ = 0.0;
};

// Exact law of T for the two_point (or deterministic) model, by dynamic
// programming over the count of z_a-blocks: the capacity sum after m
// blocks depends only on that count, so the state space is O(M^2).
struct TDistribution {
  std::vector<double> pmf;  // pmf[m-1] = Pr{T = m}, m = 1..M_max
  double tail = 0.0;        // Pr{T > M_max}
  bool tail_warning = false;

  double prob(long m) const { return pmf.at(static_cast<size_t>(m - 1)); }

  double prob_greater(long m) const {
    double s = tail;
    for (size_t i = pmf.size(); i > static_cast<size_t>(m); --i) s += pmf[i - 1];
    return s;
  }

  // Moments of the truncated law; meaningful only when tail is negligible.
  double mean() const {
    double s = 0.0;
    for (size_t i = 0; i < pmf.size(); ++i) s += static_cast<double>(i + 1) * pmf[i];
    return s;
  }

  double second_moment() const {
    double s = 0.0;
    for (size_t i = 0; i < pmf.size(); ++i) {
      const double m = static_cast<double>(i + 1);
      s += m * m * pmf[i];
    }
    return s;
  }

  double variance() const {
    const double m1 = mean();
    return second_moment() - m1 * m1;
  }
};

inline TDistribution exact_T_distribution_two_point(const ProtocolSpec& spec,
                                                    long m_max) {
  spec.validate();
  if (m_max < 1)
    throw std::invalid_argument("exact_T_distribution_two_point: m_max < 1");

  double cap_a, cap_b, p;
  switch (spec.model.kind()) {
    case FadingKind::deterministic:
      cap_a = cap_b = instantaneous_capacity(spec.model.fixed_gain(), spec.snr);
      p = 1.0;
      break;
    case FadingKind::two_point:
      cap_a = instantaneous_capacity(spec.model.gain_a(), spec.snr);
      cap_b = instantaneous_capacity(spec.model.gain_b(), spec.snr);
      p = spec.model.prob_a();
      break;
    default:
      throw std::invalid_argument(
          "exact_T_distribution_two_point: model must be two_point or "
          "deterministic");
  }

  TDistribution dist;
  dist.pmf.assign(static_cast<size_t>(m_max), 0.0);

  // alive[j] = Pr{m blocks seen, j of them z_a, capacity sum still <= R}.
  // Sums are monotone, so "still <= R" needs no per-prefix bookkeeping.
  std::vector<double> alive{1.0};
  const double rate = spec.rate;
  auto sum_of = [&](long j, long m) {
    return static_cast<double>(j) * cap_a + static_cast<double>(m - j) * cap_b;
  };

  for (long m = 1; m <= m_max; ++m) {
    std::vector<double> next(static_cast<size_t>(m) + 1, 0.0);
    double pm = 0.0;
    for (long j = 0; j < m; ++j) {
      const double mass = alive[static_cast<size_t>(j)];
      if (mass == 0.0) continue;
      const double mass_a = mass * p;
      const double mass_b = mass * (1.0 - p);
      if (sum_of(j + 1, m) > rate)
        pm += mass_a;
      else
        next[static_cast<size_t>(j + 1)] += mass_a;
      if (sum_of(j, m) > rate)
        pm += mass_b;
      else
        next[static_cast<size_t>(j)] += mass_b;
    }
    dist.pmf[static_cast<size_t>(m - 1)] = pm;
    alive = std::move(next);
  }

  double tail = 0.0;
  for (double mass : alive) tail += mass;
  dist.tail = tail;
  dist.tail_warning = tail > 0.5;
  return dist;
}

}  // namespace harqr
