#pragma once

#include <cmath>

namespace photon_kick {

// Kahan-Babuska (Neumaier) running sum. The compensation term carries the
// low-order bits lost by each addition, so error stays O(eps) independent of
// the number of terms.
class CompensatedSum {
 public:
  constexpr CompensatedSum() = default;
  constexpr explicit CompensatedSum(double initial) : sum_(initial) {}

  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  constexpr double value() const { return sum_ + compensation_; }

  friend constexpr bool operator==(const CompensatedSum&, const CompensatedSum&) = default;

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace photon_kick
