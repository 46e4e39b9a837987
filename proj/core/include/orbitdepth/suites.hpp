#pragma once

// Check suites over all modules and the staged end-to-end pipeline.

#include "orbitdepth/error.hpp"
#include "orbitdepth/melnikov.hpp"
#include "orbitdepth/report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace orbitdepth {

class ConfigError : public Error {
public:
    using Error::Error;
};

struct Config {
    Tolerances tolerances;
    int k_max = 4;
    int magnus_degree = 8;
    double t0 = 0.36;
    std::vector<double> eps_grid = default_eps_grid();
    std::uint64_t seed = 20240917;
    std::string output_dir = ".";
    int samples = 100; // random words / exponent lists per property check
};

/// JSON object with optional keys tolerances (object of named values),
/// k_max, magnus_degree, t0, eps_grid, seed, output_dir, samples. Unknown keys
/// and wrong types throw ConfigError.
Config parse_config(std::string_view json_text, Config base = {});
Config load_config(const std::string& path, Config base = {});
/// Throws ConfigError on out-of-range values.
void validate(const Config& c);

enum class Suite { Orbit, Repr, Melnikov, Numeric, All };
Suite parse_suite(std::string_view name);
std::string to_string(Suite s);

/// Each stage appends its records and deviations to the report.
void orbit_stage(const Config& c, Report& r);
void repr_stage(const Config& c, Report& r);
void melnikov_stage(const Config& c, Report& r, const std::optional<Deformation>& flagship = std::nullopt);
void numeric_stage(const Config& c, Report& r, const std::optional<Deformation>& flagship = std::nullopt);

struct PipelineOptions {
    /// Replaces the built flagship; used to demonstrate a detected deviation.
    std::optional<Deformation> flagship;
};

/// Runs one suite. Exceptions inside a stage abort the run and are recorded
/// in the report (aborted + abort_reason) rather than propagated.
Report run_suite(Suite s, const Config& c, const PipelineOptions& opt = {});
/// The full chain: monodromy, variations, Magnus depths, certificates,
/// flagship build and classification, periods, iterated integrals, fits,
/// symbolic cross-checks, centers. Same as run_suite(Suite::All, ...).
Report full_pipeline(const Config& c, const PipelineOptions& opt = {});

RunManifest make_manifest(const Config& c, std::string suite);

} // namespace orbitdepth
