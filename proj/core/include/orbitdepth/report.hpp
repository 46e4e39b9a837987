#pragma once

// Run manifests, reports and their JSON / CSV / SVG renderings.

#include "orbitdepth/check.hpp"
#include "orbitdepth/holonomy.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace orbitdepth {

std::string tool_version();

struct RunManifest {
    std::string tool_version;
    std::string suite;
    std::string timestamp; // UTC, ISO 8601
    std::uint64_t seed = 0;
    int k_max = 0;
    int magnus_degree = 0;
    int samples = 0;
    double t0 = 0;
    std::vector<double> eps_grid;
    Tolerances tolerances;
    std::vector<std::string> modules;
};

/// A literal claim that the implementation does not reproduce, with the
/// reason and what is checked instead.
struct Deviation {
    std::string id;
    std::string note;
};

struct Report {
    RunManifest manifest;
    std::vector<CheckRecord> checks;
    std::vector<Deviation> deviations;
    bool aborted = false;
    std::string abort_reason;

    bool all_pass() const;
    std::size_t passed() const;
    /// Appends, throwing DomainError on a duplicate id.
    void add(CheckRecord r);
    void add(std::vector<CheckRecord> rs);
};

std::string current_timestamp();

/// Named tolerance fields, for config files and manifests.
std::vector<std::pair<std::string, double Tolerances::*>> tolerance_fields();

std::string report_to_json(const Report& r);
std::string report_to_csv(const Report& r);
/// Fixed-width text table: status, id, claim.
std::string summary_table(const Report& r);
/// JSON array of the given records (same shape as the report's "checks").
std::string records_to_json(const std::vector<CheckRecord>& rs);

/// Writes `content` to `path`, creating parent directories.
void write_text_file(const std::string& path, const std::string& content);

/// Log-log plot of |c_j(r) - c_j| per radius for j = 1..3.
std::string fit_residual_svg(const MelnikovFit& fit);
/// CSV with columns radius, eps_re, eps_im, hol_re, hol_im.
std::string fit_samples_csv(const MelnikovFit& fit);

} // namespace orbitdepth
