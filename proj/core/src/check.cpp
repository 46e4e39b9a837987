#include "orbitdepth/check.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace orbitdepth {

std::string to_string(Metric m)
{
    switch (m) {
    case Metric::Exact:
        return "exact";
    case Metric::AbsError:
        return "abs_error";
    case Metric::RelError:
        return "rel_error";
    }
    return "?";
}

CheckRecord& CheckRecord::settle()
{
    pass = !std::isnan(error) && error <= tolerance;
    return *this;
}

CheckRecord exact_record(std::string id, std::string claim, std::string expected, std::string computed)
{
    CheckRecord r;
    r.id = std::move(id);
    r.claim = std::move(claim);
    r.metric = Metric::Exact;
    r.error = expected == computed ? 0 : 1;
    r.expected = std::move(expected);
    r.computed = std::move(computed);
    return r.settle();
}

CheckRecord abs_record(std::string id, std::string claim, std::complex<double> expected,
                       std::complex<double> computed, double tolerance)
{
    CheckRecord r;
    r.id = std::move(id);
    r.claim = std::move(claim);
    r.metric = Metric::AbsError;
    r.expected = format_complex(expected);
    r.computed = format_complex(computed);
    r.error = std::abs(computed - expected);
    r.tolerance = tolerance;
    return r.settle();
}

CheckRecord rel_record(std::string id, std::string claim, std::complex<double> expected,
                       std::complex<double> computed, double tolerance)
{
    CheckRecord r;
    r.id = std::move(id);
    r.claim = std::move(claim);
    r.metric = Metric::RelError;
    r.expected = format_complex(expected);
    r.computed = format_complex(computed);
    r.error = std::abs(expected) > 0 ? std::abs(computed - expected) / std::abs(expected)
                                     : std::numeric_limits<double>::infinity();
    r.tolerance = tolerance;
    return r.settle();
}

std::string format_double(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::string format_complex(std::complex<double> z, int digits)
{
    if (z.imag() == 0)
        return format_double(z.real(), digits);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.*g%+.*gi", digits, z.real(), digits, z.imag());
    return buf;
}

} // namespace orbitdepth
