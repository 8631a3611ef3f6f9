#pragma once

#include <cmath>

namespace fracspec {

/*!
  Neumaier's variant of Kahan summation.

  Unlike plain Kahan summation the compensation stays correct when an addend
  is larger in magnitude than the running sum, which happens at the start of
  every per-level series.
*/
template <typename Value>
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(Value initial) : sum_(initial) {}

  CompensatedSum& operator+=(Value value) {
    const Value t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  Value value() const { return sum_ + compensation_; }
  operator Value() const { return value(); }

 private:
  Value sum_{0};
  Value compensation_{0};
};

}  // namespace fracspec
