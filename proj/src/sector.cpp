#include "zi/sector.hpp"

#include <numbers>
#include <string>

#include "zi/errors.hpp"

namespace zi {

Sector::Sector(double theta1, double theta2) : theta1_(theta1), theta2_(theta2) {
    if (!(theta1 >= 0.0 && theta1 < theta2 && theta2 <= kHalfPi))
        throw PreconditionError("Sector: need 0 <= theta1 < theta2 <= pi/2, got [" + std::to_string(theta1) + ", " +
                                std::to_string(theta2) + ")");
}

Sector Sector::from_pi_fractions(double a1, double a2) {
    // a2 == 1/2 must land on kHalfPi exactly so the full sector is recognized
    auto angle = [](double a) { return a == 0.5 ? kHalfPi : a * std::numbers::pi; };
    return {angle(a1), angle(a2)};
}

} // namespace zi
