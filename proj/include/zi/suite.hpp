#pragma once

// The regression lattice behind `calibrate` and `verify-lemmas`, and the
// calibration file holding one frozen constant per report tag.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zi/report.hpp"

namespace zi {

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view text);

// Hash of the canonical description of a tag's bound shape; a calibration
// entry only applies to reports whose shape hash matches.
std::uint64_t shape_hash(const std::string& tag);
// All tags the suite can emit, with their shape descriptions.
const std::map<std::string, std::string>& suite_shapes();

struct CalibrationEntry {
    std::uint64_t param_hash;
    double constant;
};

// Text file: a "# calibration v1" header, then lines `tag param_hash constant`
// with the hash in 16 hex digits.
class Calibration {
public:
    static Calibration load(const std::string& path);
    void save(const std::string& path) const;

    void set(const std::string& tag, double constant);
    std::optional<double> constant(const std::string& tag) const;
    const std::map<std::string, CalibrationEntry>& entries() const { return entries_; }

private:
    std::map<std::string, CalibrationEntry> entries_;
};

struct SuiteOptions {
    double x_max = 1e5;
    std::uint64_t seed = 42;
};

/// Every lattice report up to x_max, in a fixed order.
std::vector<BoundReport> run_suite(const SuiteOptions& options);

/// Safety factor applied to the largest observed ratio per tag.
inline constexpr double kCalibrationSafety = 2.0;
Calibration calibrate(const std::vector<BoundReport>& reports);

struct Verdict {
    BoundReport report;
    double constant;  // NaN when the tag has no calibration entry
    bool pass;
};
std::vector<Verdict> verify(const std::vector<BoundReport>& reports, const Calibration& calibration);

} // namespace zi
