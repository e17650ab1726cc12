#pragma once

#include <cmath>

namespace sqfl {

/// Neumaier compensated accumulator in extended precision.
class CompensatedSum {
public:
    void add(long double v)
    {
        const long double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }

    CompensatedSum& operator+=(long double v)
    {
        add(v);
        return *this;
    }

    long double value() const { return sum_ + comp_; }

private:
    long double sum_ = 0;
    long double comp_ = 0;
};

} // namespace sqfl
