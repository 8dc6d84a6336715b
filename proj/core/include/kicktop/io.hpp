#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "kicktop/classical.hpp"
#include "kicktop/floquet.hpp"
#include "kicktop/spin_system.hpp"

namespace kicktop {

/// Shortest decimal form that round-trips a double.
std::string format_double(double v);

// ---------------------------------------------------------------------------
// Chaotic mask grid file: '#'-prefixed header (format tag, grid shape, alpha,
// gamma, kick count, threshold), then one "i_theta,i_phi,sali_log10,chi" line
// per cell in theta-major order.

struct MaskHeader {
    int n_theta = 0;
    int n_phi = 0;
    double alpha = 0.0;
    double gamma = 0.0;
    int n_kicks = 0;
    double threshold = 0.0;
};

void write_mask(const std::filesystem::path& path, const ChaoticMask& mask,
                const MaskHeader& header);

/// Empty on missing file, wrong format tag, or malformed contents.
std::optional<std::pair<ChaoticMask, MaskHeader>> read_mask(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Floquet spectrum cache: little-endian binary, magic+version then
// (j, alpha, gamma, sector, dim), quasienergies, and the eigenvector matrix
// as column-major re/im pairs. Stale or mismatched caches read as empty.

void write_spectrum_cache(const std::filesystem::path& path, const SpinSystem& sys,
                          const FloquetSpectrum& spec);

std::optional<FloquetSpectrum> read_spectrum_cache(const std::filesystem::path& path,
                                                   const SpinSystem& sys, Parity parity);

/// cache_dir/spec_j{j}_a{alpha}_g{gamma}_{sector}.bin
std::filesystem::path spectrum_cache_path(const std::filesystem::path& cache_dir,
                                          const SpinSystem& sys, Parity parity);

/// Cached spectra when present and valid, otherwise build + diagonalize and
/// (when cache_dir is non-empty) store for the next run.
FloquetSpectrum load_or_diagonalize(const SpinSystem& sys, Parity parity,
                                    const std::filesystem::path& cache_dir,
                                    bool use_cache = true);

// ---------------------------------------------------------------------------

/// Minimal CSV emitter; numeric cells go through format_double.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(const std::vector<std::string>& cells);
    void row(const std::vector<double>& cells);

private:
    std::FILE* f_ = nullptr;
    std::size_t n_columns_ = 0;
};

}  // namespace kicktop
