#include "zi/report.hpp"

#include <cmath>

#include "zi/errors.hpp"

namespace zi {

double BoundReport::param(const std::string& name) const {
    for (const auto& [k, v] : params)
        if (k == name) return v;
    throw PreconditionError("BoundReport " + tag + ": no parameter " + name);
}

BoundReport make_report(std::string tag, std::vector<std::pair<std::string, double>> params, double measured,
                        double bound) {
    if (!(bound > 0.0)) throw PreconditionError("BoundReport " + tag + ": bound must be positive");
    const double ratio = measured / bound;
    if (!std::isfinite(ratio)) throw PreconditionError("BoundReport " + tag + ": ratio not finite");
    return {std::move(tag), std::move(params), measured, bound, ratio};
}

} // namespace zi
