#pragma once

#include <cmath>
#include <stdexcept>

namespace harqr {

// Average transmit SNR. The dB -> linear conversion happens once, here;
// everything downstream consumes the linear value.
class SnrConfig {
 public:
  static SnrConfig from_db(double snr_db) {
    return SnrConfig(snr_db, std::pow(10.0, snr_db / 10.0));
  }

  static SnrConfig from_linear(double snr_linear) {
    if (!(snr_linear > 0.0))
      throw std::invalid_argument("SnrConfig: snr_linear must be > 0");
    return SnrConfig(10.0 * std::log10(snr_linear), snr_linear);
  }

  double db() const { return snr_db_; }
  double linear() const { return snr_linear_; }

 private:
  SnrConfig(double snr_db, double snr_linear)
      : snr_db_(snr_db), snr_linear_(snr_linear) {
    if (!(snr_linear_ > 0.0) || !std::isfinite(snr_linear_))
      throw std::invalid_argument("SnrConfig: snr_linear must be finite and > 0");
  }

  double snr_db_;
  double snr_linear_;
};

}  // namespace harqr
