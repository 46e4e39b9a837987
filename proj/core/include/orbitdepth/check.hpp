#pragma once

// Flat result records shared by the check suites, the report writer and the
// acceptance gate.

#include <chrono>
#include <complex>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace orbitdepth {

enum class Metric { Exact, AbsError, RelError };

std::string to_string(Metric m);

struct CheckRecord {
    std::string id;
    std::string claim; // one-line statement of what is being verified
    std::vector<std::pair<std::string, std::string>> params;
    std::string expected;
    std::string computed;
    Metric metric = Metric::AbsError;
    double error = 0;     // for Exact: 0 on match, 1 otherwise
    double tolerance = 0;
    bool pass = false;
    double runtime_ms = 0;

    /// pass = error <= tolerance; NaN fails.
    CheckRecord& settle();
};

CheckRecord exact_record(std::string id, std::string claim, std::string expected, std::string computed);
CheckRecord abs_record(std::string id, std::string claim, std::complex<double> expected,
                       std::complex<double> computed, double tolerance);
/// Relative error |computed - expected| / |expected|; infinite when expected is 0.
CheckRecord rel_record(std::string id, std::string claim, std::complex<double> expected,
                       std::complex<double> computed, double tolerance);

std::string format_double(double v, int digits = 12);
std::string format_complex(std::complex<double> z, int digits = 12);

/// Runs fn, stores its wall time in every returned record.
template <class Fn>
auto timed(Fn&& fn)
{
    const auto t0 = std::chrono::steady_clock::now();
    auto out = fn();
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if constexpr (std::is_same_v<decltype(out), CheckRecord>) {
        out.runtime_ms = ms;
    } else {
        for (auto& r : out)
            r.runtime_ms = ms / static_cast<double>(out.empty() ? 1 : out.size());
    }
    return out;
}

/// Numeric tolerances used by the suites. Defaults are the pinned gate values.
struct Tolerances {
    double pairing_abs = 1e-9;
    double iterated_rel = 1e-6;
    double cauchy_abs = 1e-8;
    double shuffle_abs = 1e-8;
    double determinant_abs = 1e-6;
    double additivity_abs = 1e-10;
    double residual_rel = 1e-13;
    double fit_zero_rel = 1e-7;
    double fit_stability_rel = 5e-3;
    double cross_rel = 5e-3;
    double center_abs = 1e-10;
    double scaling_rel = 1e-2;
    double m2_abs = 1e-7;
};

} // namespace orbitdepth
