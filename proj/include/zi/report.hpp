#pragma once

#include <string>
#include <utility>
#include <vector>

namespace zi {

// One measured quantity set against the shape of a bound, ratio = measured / bound.
struct BoundReport {
    std::string tag;
    std::vector<std::pair<std::string, double>> params;
    double measured = 0.0;
    double bound = 1.0;
    double ratio = 0.0;

    double param(const std::string& name) const;
};

// Throws PreconditionError unless bound > 0 and the ratio is finite.
BoundReport make_report(std::string tag, std::vector<std::pair<std::string, double>> params, double measured,
                        double bound);

} // namespace zi
