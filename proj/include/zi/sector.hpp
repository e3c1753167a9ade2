#pragma once

#include "zi/gaussian.hpp"

namespace zi {

// Half-open angular interval [theta1, theta2) inside [0, pi/2).
class Sector {
public:
    // Throws PreconditionError unless 0 <= theta1 < theta2 <= pi/2.
    Sector(double theta1, double theta2);

    // Angles given as multiples of pi: from_pi_fractions(0, 0.25) is [0, pi/4).
    static Sector from_pi_fractions(double a1, double a2);
    static Sector full() { return {0.0, kHalfPi}; }

    double theta1() const { return theta1_; }
    double theta2() const { return theta2_; }
    double density() const { return (theta2_ - theta1_) / kHalfPi; }
    bool is_full() const { return theta1_ == 0.0 && theta2_ == kHalfPi; }
    bool contains(double arg) const { return arg >= theta1_ && arg < theta2_; }

private:
    double theta1_;
    double theta2_;
};

} // namespace zi
