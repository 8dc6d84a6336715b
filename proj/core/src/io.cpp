#include "kicktop/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "kicktop/spin_ops.hpp"

namespace kicktop {

namespace fs = std::filesystem;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ----------------------------------------------------------------- mask file

namespace {
constexpr const char* kMaskFormatTag = "# kicktop-mask v1";
}

void write_mask(const fs::path& path, const ChaoticMask& mask, const MaskHeader& header) {
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    if (!f) throw std::runtime_error("write_mask: cannot open " + path.string());
    std::fprintf(f, "%s\n", kMaskFormatTag);
    std::fprintf(f, "# n_theta=%d n_phi=%d\n", header.n_theta, header.n_phi);
    std::fprintf(f, "# alpha=%s gamma=%s\n", format_double(header.alpha).c_str(),
                 format_double(header.gamma).c_str());
    std::fprintf(f, "# n_kicks=%d threshold=%s\n", header.n_kicks,
                 format_double(header.threshold).c_str());
    std::fprintf(f, "i_theta,i_phi,sali_log10,chi\n");
    for (long c = 0; c < mask.grid.cells(); ++c) {
        std::fprintf(f, "%ld,%ld,%s,%d\n", c / mask.grid.n_phi, c % mask.grid.n_phi,
                     format_double(mask.sali_log10[c]).c_str(), int(mask.chi[c]));
    }
    if (std::fclose(f) != 0) throw std::runtime_error("write_mask: close failed");
}

std::optional<std::pair<ChaoticMask, MaskHeader>> read_mask(const fs::path& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string line;
    if (!std::getline(in, line) || line != kMaskFormatTag) return std::nullopt;

    MaskHeader h;
    auto parse_kv = [&](const std::string& s) {
        std::istringstream ss(s.substr(1));  // drop '#'
        std::string kv;
        while (ss >> kv) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = kv.substr(0, eq);
            const std::string val = kv.substr(eq + 1);
            if (key == "n_theta") h.n_theta = std::stoi(val);
            else if (key == "n_phi") h.n_phi = std::stoi(val);
            else if (key == "alpha") h.alpha = std::stod(val);
            else if (key == "gamma") h.gamma = std::stod(val);
            else if (key == "n_kicks") h.n_kicks = std::stoi(val);
            else if (key == "threshold") h.threshold = std::stod(val);
        }
    };
    for (int i = 0; i < 3; ++i) {
        if (!std::getline(in, line) || line.empty() || line[0] != '#') return std::nullopt;
        parse_kv(line);
    }
    if (!std::getline(in, line)) return std::nullopt;  // column header

    if (h.n_theta < 1 || h.n_phi < 1) return std::nullopt;
    ChaoticMask mask;
    mask.grid = PhaseGrid(h.n_theta, h.n_phi);
    const long cells = mask.grid.cells();
    mask.chi.assign(cells, 0);
    mask.sali_log10.assign(cells, 0.0);
    for (long c = 0; c < cells; ++c) {
        if (!std::getline(in, line)) return std::nullopt;
        long it = 0, ip = 0;
        double lg = 0.0;
        int chi = 0;
        if (std::sscanf(line.c_str(), "%ld,%ld,%lf,%d", &it, &ip, &lg, &chi) != 4)
            return std::nullopt;
        const long cell = it * h.n_phi + ip;
        if (cell < 0 || cell >= cells) return std::nullopt;
        mask.sali_log10[cell] = lg;
        mask.chi[cell] = static_cast<std::uint8_t>(chi != 0);
    }
    return std::make_pair(std::move(mask), h);
}

// ------------------------------------------------------------ spectrum cache

namespace {

constexpr char kSpectrumMagic[8] = {'K', 'T', 'S', 'P', 'E', 'C', '0', '1'};

struct SpectrumFileHeader {
    char magic[8];
    std::int64_t j;
    double alpha;
    double gamma;
    std::int64_t sector;  // 0 odd, 1 even
    std::int64_t dim;
};

}  // namespace

void write_spectrum_cache(const fs::path& path, const SpinSystem& sys,
                          const FloquetSpectrum& spec) {
    std::FILE* f = std::fopen(path.string().c_str(), "wb");
    if (!f) throw std::runtime_error("write_spectrum_cache: cannot open " + path.string());
    SpectrumFileHeader h{};
    std::memcpy(h.magic, kSpectrumMagic, sizeof(h.magic));
    h.j = sys.j;
    h.alpha = sys.alpha;
    h.gamma = sys.gamma;
    h.sector = (spec.parity == Parity::odd) ? 0 : 1;
    h.dim = spec.quasienergies.size();
    bool ok = std::fwrite(&h, sizeof(h), 1, f) == 1;
    ok = ok && std::fwrite(spec.quasienergies.data(), sizeof(double), h.dim, f) ==
                   std::size_t(h.dim);
    ok = ok && std::fwrite(spec.eigenvectors.data(), sizeof(Complex), h.dim * h.dim, f) ==
                   std::size_t(h.dim) * h.dim;
    if (std::fclose(f) != 0 || !ok)
        throw std::runtime_error("write_spectrum_cache: write failed for " + path.string());
}

std::optional<FloquetSpectrum> read_spectrum_cache(const fs::path& path, const SpinSystem& sys,
                                                   Parity parity) {
    std::FILE* f = std::fopen(path.string().c_str(), "rb");
    if (!f) return std::nullopt;
    SpectrumFileHeader h{};
    const bool got = std::fread(&h, sizeof(h), 1, f) == 1;
    const std::int64_t want_dim = (parity == Parity::odd) ? sys.dim_odd() : sys.dim_even();
    if (!got || std::memcmp(h.magic, kSpectrumMagic, sizeof(h.magic)) != 0 || h.j != sys.j ||
        h.alpha != sys.alpha || h.gamma != sys.gamma ||
        h.sector != ((parity == Parity::odd) ? 0 : 1) || h.dim != want_dim) {
        std::fclose(f);
        return std::nullopt;
    }
    FloquetSpectrum spec;
    spec.parity = parity;
    spec.quasienergies.resize(h.dim);
    spec.eigenvectors.resize(h.dim, h.dim);
    bool ok = std::fread(spec.quasienergies.data(), sizeof(double), h.dim, f) ==
              std::size_t(h.dim);
    ok = ok && std::fread(spec.eigenvectors.data(), sizeof(Complex), h.dim * h.dim, f) ==
                   std::size_t(h.dim) * h.dim;
    std::fclose(f);
    if (!ok) return std::nullopt;
    return spec;
}

fs::path spectrum_cache_path(const fs::path& cache_dir, const SpinSystem& sys, Parity parity) {
    char name[160];
    std::snprintf(name, sizeof(name), "spec_j%ld_a%.12g_g%.12g_%s.bin", sys.j, sys.alpha,
                  sys.gamma, parity_name(parity));
    return cache_dir / name;
}

FloquetSpectrum load_or_diagonalize(const SpinSystem& sys, Parity parity,
                                    const fs::path& cache_dir, bool use_cache) {
    const bool caching = use_cache && !cache_dir.empty();
    fs::path path;
    if (caching) {
        path = spectrum_cache_path(cache_dir, sys, parity);
        if (auto spec = read_spectrum_cache(path, sys, parity)) return std::move(*spec);
    }
    FloquetSpectrum spec = diagonalize(build_floquet(sys, parity), parity);
    if (caching) {
        fs::create_directories(cache_dir);
        write_spectrum_cache(path, sys, spec);
    }
    return spec;
}

// -------------------------------------------------------------------- csv

CsvWriter::CsvWriter(const fs::path& path, const std::vector<std::string>& columns)
    : n_columns_(columns.size()) {
    f_ = std::fopen(path.string().c_str(), "w");
    if (!f_) throw std::runtime_error("CsvWriter: cannot open " + path.string());
    for (std::size_t i = 0; i < columns.size(); ++i)
        std::fprintf(f_, "%s%s", columns[i].c_str(), i + 1 < columns.size() ? "," : "\n");
}

CsvWriter::~CsvWriter() {
    if (f_) std::fclose(f_);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != n_columns_) throw std::invalid_argument("CsvWriter: column mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i)
        std::fprintf(f_, "%s%s", cells[i].c_str(), i + 1 < cells.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<double>& cells) {
    std::vector<std::string> s;
    s.reserve(cells.size());
    for (double v : cells) s.push_back(format_double(v));
    row(s);
}

}  // namespace kicktop
