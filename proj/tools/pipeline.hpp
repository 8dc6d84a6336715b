#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "kicktop/classical.hpp"
#include "kicktop/records.hpp"
#include "kicktop/spin_system.hpp"

namespace kicktop::pipeline {

/// One reproduction manifest: which (j, gamma) cells to run and with what
/// numerical protocol. File format is "key = value" per line, '#' comments;
/// command-line flags override file values.
struct RunConfig {
    std::vector<long> j_list{128, 256, 512, 1024};
    double alpha = 11.0 * M_PI / 19.0;
    std::vector<double> gamma_list{2.3, 2.6, 3.0};
    int n_theta = 200;
    int n_phi = 400;
    int sali_kicks = 300;
    double sali_threshold = 1e-8;
    double krylov_tol = 1e-12;
    std::vector<std::pair<double, double>> windows{{-0.9, 0.5}};
    double delta_m = 0.3;
    int window_centers = 40;
    std::filesystem::path cache_dir = "cache";
    std::filesystem::path out_dir = "out";
    std::uint64_t seed = 20240901;
    int workers = 0;       // 0 = library default
    bool use_cache = true;
    bool allow_large = false;        // j > 2^11 needs an explicit opt-in
    bool allow_coarse_grid = false;  // j > cells/4 needs an explicit opt-in
    // optional (M, ELM) box for Husimi field dumps: m0, m1, elm0, elm1
    std::optional<std::array<double, 4>> dump_box;
    int max_dumps = 8;
    // emit P(ln x) component histograms (Dicke basis, coherent probes on and
    // off the symmetry lines) for the largest j in the scan
    bool component_stats = false;

    void validate() const;
};

RunConfig parse_config_file(const std::filesystem::path& path);

/// Applies `key=value` override strings on top of a config (same keys as the
/// file format).
void apply_override(RunConfig& config, const std::string& key, const std::string& value);

/// Exclusive cache-directory lock; one run at a time per cache dir.
class CacheLock {
public:
    explicit CacheLock(const std::filesystem::path& cache_dir);
    ~CacheLock();
    CacheLock(const CacheLock&) = delete;
    CacheLock& operator=(const CacheLock&) = delete;

private:
    std::filesystem::path path_;
};

/// Refuses cells whose dense eigensolve or Husimi pass would exceed the
/// opt-in limits; prints the projected memory footprint when refusing.
void check_resources(const RunConfig& config, long j);

std::filesystem::path mask_path(const RunConfig& config, double gamma);
std::filesystem::path records_path(const RunConfig& config, long j, double gamma);

/// Mask for one gamma: reuses a compatible file in out_dir, else computes
/// and writes it.
ChaoticMask obtain_mask(const RunConfig& config, double gamma);

/// Process-wide memo of coherent frames keyed by (j, grid, tol); the polar
/// profiles are a few MB per j and independent of alpha and gamma.
const CoherentFrame& shared_frame(long j, int n_theta, int n_phi, double tol);

/// Records for one (j, gamma): reads the records CSV back when present,
/// else runs the spectra + Husimi pipeline and writes it.
std::vector<EigenstateRecord> obtain_records(const RunConfig& config, long j, double gamma);

std::vector<EigenstateRecord> read_records_csv(const std::filesystem::path& path);

// Subcommands; each returns true only if every requested cell succeeded.
bool cmd_classical(const RunConfig& config);
bool cmd_spectral(const RunConfig& config);
bool cmd_husimi(const RunConfig& config);
bool cmd_decay(const RunConfig& config);
bool cmd_audit(const RunConfig& config);

}  // namespace kicktop::pipeline
