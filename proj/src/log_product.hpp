#pragma once

#include <cmath>
#include <numbers>

namespace wignerlab::detail {

// Sum of logs of nonnegative factors as the log of a running product with
// power-of-two renormalisation; one log call instead of one per factor.
class LogProductAccumulator {
public:
    void mul(double t) {
        if (t <= 0.0) {
            zero_ = true;
            return;
        }
        if (t < 1e-200 || t > 1e200) {
            slow_ += std::log(t);
            return;
        }
        prod_ *= t;
        if (prod_ > 1e270 || prod_ < 1e-270) {
            int e = 0;
            prod_ = std::frexp(prod_, &e);
            exp2_ += e;
        }
    }
    bool hit_zero() const { return zero_; }
    double log_value() const {
        return std::log(prod_) + static_cast<double>(exp2_) * std::numbers::ln2 + slow_;
    }

private:
    double prod_ = 1.0;
    double slow_ = 0.0;
    long long exp2_ = 0;
    bool zero_ = false;
};

} // namespace wignerlab::detail
