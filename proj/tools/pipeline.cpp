#include "pipeline.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <map>
#include <mutex>
#include <random>
#include <tuple>
#include <sstream>
#include <stdexcept>

#include "kicktop/io.hpp"
#include "kicktop/spectral_stats.hpp"

namespace kicktop::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class StageTimer {
public:
    explicit StageTimer(std::string label)
        : label_(std::move(label)), start_(std::chrono::steady_clock::now()) {}
    ~StageTimer() {
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        std::fprintf(stderr, "[time] %-40s %8.2f s\n", label_.c_str(), secs);
    }

private:
    std::string label_;
    std::chrono::steady_clock::time_point start_;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        const auto b = item.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        const auto e = item.find_last_not_of(" \t");
        out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

std::string gamma_tag(double gamma) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", gamma);
    return buf;
}

void set_workers(const RunConfig& config) {
    if (config.workers > 0) omp_set_num_threads(config.workers);
}

json fit_to_json(const PowerLawFit& fit) {
    json out;
    out["valid"] = fit.valid;
    out["zeta"] = fit.zeta;
    out["intercept"] = fit.intercept;
    out["r_squared"] = fit.r_squared;
    out["window"] = {fit.window_m0, fit.window_m1};
    out["j_values"] = fit.j_values;
    return out;
}

json histogram_to_json(const Histogram& h) {
    json out;
    out["edges"] = h.edges;
    out["density"] = h.density;
    out["counts"] = h.counts;
    out["n_samples"] = h.n_samples;
    return out;
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << j.dump(2) << "\n";
}

}  // namespace

void RunConfig::validate() const {
    for (long j : j_list)
        if (j < 1) throw std::invalid_argument("config: every j must be >= 1");
    if (j_list.empty()) throw std::invalid_argument("config: empty j_list");
    if (gamma_list.empty()) throw std::invalid_argument("config: empty gamma_list");
    if (n_theta < 2 || n_phi < 2 || n_theta % 2 != 0 || n_phi % 2 != 0)
        throw std::invalid_argument("config: grid sizes must be positive and even");
    if (!(sali_threshold > 0.0 && sali_threshold < 1.0))
        throw std::invalid_argument("config: sali_threshold outside (0,1)");
    if (sali_kicks < 1) throw std::invalid_argument("config: sali_kicks must be >= 1");
    if (!(krylov_tol > 0.0)) throw std::invalid_argument("config: krylov_tol must be > 0");
    for (const auto& [m0, m1] : windows)
        if (!(m0 < m1)) throw std::invalid_argument("config: window needs m0 < m1");
    if (!(delta_m > 0.0)) throw std::invalid_argument("config: delta_m must be > 0");
}

void apply_override(RunConfig& c, const std::string& key, const std::string& value) {
    auto parse_j_list = [](const std::string& v) {
        std::vector<long> out;
        for (const auto& tok : split(v, ',')) out.push_back(std::stol(tok));
        return out;
    };
    if (key == "j_list") c.j_list = parse_j_list(value);
    else if (key == "alpha") c.alpha = std::stod(value);
    else if (key == "gamma_list") {
        c.gamma_list.clear();
        for (const auto& tok : split(value, ',')) c.gamma_list.push_back(std::stod(tok));
    } else if (key == "n_theta") c.n_theta = std::stoi(value);
    else if (key == "n_phi") c.n_phi = std::stoi(value);
    else if (key == "sali_kicks") c.sali_kicks = std::stoi(value);
    else if (key == "sali_threshold") c.sali_threshold = std::stod(value);
    else if (key == "krylov_tol") c.krylov_tol = std::stod(value);
    else if (key == "windows") {
        c.windows.clear();
        for (const auto& pair_tok : split(value, ',')) {
            const auto parts = split(pair_tok, ':');
            if (parts.size() != 2) throw std::invalid_argument("config: window must be m0:m1");
            c.windows.emplace_back(std::stod(parts[0]), std::stod(parts[1]));
        }
    } else if (key == "delta_m") c.delta_m = std::stod(value);
    else if (key == "window_centers") c.window_centers = std::stoi(value);
    else if (key == "cache_dir") c.cache_dir = value;
    else if (key == "out_dir") c.out_dir = value;
    else if (key == "seed") c.seed = std::stoull(value);
    else if (key == "workers") c.workers = std::stoi(value);
    else if (key == "use_cache") c.use_cache = std::stoi(value) != 0;
    else if (key == "allow_large") c.allow_large = std::stoi(value) != 0;
    else if (key == "allow_coarse_grid") c.allow_coarse_grid = std::stoi(value) != 0;
    else if (key == "dump_box") {
        const auto parts = split(value, ':');
        if (parts.size() != 4)
            throw std::invalid_argument("config: dump_box must be m0:m1:elm0:elm1");
        c.dump_box = {{std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2]),
                       std::stod(parts[3])}};
    } else if (key == "max_dumps") c.max_dumps = std::stoi(value);
    else if (key == "component_stats") c.component_stats = std::stoi(value) != 0;
    else throw std::invalid_argument("config: unknown key '" + key + "'");
}

RunConfig parse_config_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path.string());
    RunConfig config;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw std::runtime_error("config line " + std::to_string(lineno) +
                                         ": expected key = value");
            continue;
        }
        const auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        apply_override(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return config;
}

CacheLock::CacheLock(const fs::path& cache_dir) {
    fs::create_directories(cache_dir);
    path_ = cache_dir / ".lock";
    std::FILE* f = std::fopen(path_.string().c_str(), "wx");
    if (!f)
        throw std::runtime_error("cache dir " + cache_dir.string() +
                                 " is locked by another run (remove " + path_.string() +
                                 " if stale)");
    std::fclose(f);
}

CacheLock::~CacheLock() {
    std::error_code ec;
    fs::remove(path_, ec);
}

void check_resources(const RunConfig& config, long j) {
    const long cells = long(config.n_theta) * config.n_phi;
    if (j > cells / 4 && !config.allow_coarse_grid)
        throw std::runtime_error(
            "j = " + std::to_string(j) + " exceeds cells/4 = " + std::to_string(cells / 4) +
            " of the " + std::to_string(config.n_theta) + "x" + std::to_string(config.n_phi) +
            " grid; refine the grid or set allow_coarse_grid = 1");
    if (j > (1L << 11) && !config.allow_large) {
        const double n = double(2 * j + 1);
        const double gib = 4.0 * n * n * 16.0 / double(1L << 30);
        const double eig_tflop = 2.0 * 25.0 * n * n * n / 8.0 / 1e12;
        char msg[256];
        std::snprintf(msg, sizeof(msg),
                      "j = %ld is an opt-in large run: projected ~%.1f GiB peak and ~%.1f "
                      "Tflop of dense eigensolves (hours at this scale); set allow_large = 1 "
                      "to proceed",
                      j, gib, eig_tflop);
        throw std::runtime_error(msg);
    }
}

fs::path mask_path(const RunConfig& config, double gamma) {
    return config.out_dir / ("mask_g" + gamma_tag(gamma) + ".csv");
}

fs::path records_path(const RunConfig& config, long j, double gamma) {
    return config.out_dir / ("records_j" + std::to_string(j) + "_g" + gamma_tag(gamma) + ".csv");
}

const CoherentFrame& shared_frame(long j, int n_theta, int n_phi, double tol) {
    static std::map<std::tuple<long, int, int, double>, CoherentFrame> memo;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    const auto key = std::make_tuple(j, n_theta, n_phi, tol);
    auto it = memo.find(key);
    if (it == memo.end()) {
        StageTimer timer("coherent frame j=" + std::to_string(j));
        it = memo.try_emplace(key, SpinSystem(j, 0.0, 0.0), PhaseGrid(n_theta, n_phi), tol)
                 .first;
    }
    return it->second;
}

ChaoticMask obtain_mask(const RunConfig& config, double gamma) {
    const fs::path path = mask_path(config, gamma);
    if (config.use_cache) {
        if (auto loaded = read_mask(path)) {
            const MaskHeader& h = loaded->second;
            if (h.n_theta == config.n_theta && h.n_phi == config.n_phi &&
                h.alpha == config.alpha && h.gamma == gamma &&
                h.n_kicks == config.sali_kicks && h.threshold == config.sali_threshold)
                return std::move(loaded->first);
        }
    }
    StageTimer timer("classical mask gamma=" + gamma_tag(gamma));
    const SpinSystem sys(1, config.alpha, gamma);
    const PhaseGrid grid(config.n_theta, config.n_phi);
    ChaoticMask mask = classify_phase_space(sys, grid, config.sali_kicks, config.sali_threshold);
    fs::create_directories(config.out_dir);
    write_mask(path, mask,
               MaskHeader{config.n_theta, config.n_phi, config.alpha, gamma, config.sali_kicks,
                          config.sali_threshold});
    return mask;
}

namespace {

void write_records_csv(const fs::path& path, const RunConfig& config, long j, double gamma,
                       const std::vector<EigenstateRecord>& records) {
    CsvWriter csv(path,
                  {"j", "alpha", "gamma", "parity", "index", "quasienergy", "S", "elm", "H", "M"});
    for (const auto& r : records) {
        csv.row({std::to_string(j), format_double(config.alpha), format_double(gamma),
                 parity_name(r.parity), std::to_string(r.index), format_double(r.quasienergy),
                 format_double(r.wehrl_entropy), format_double(r.wehrl_elm),
                 format_double(r.shannon_entropy), format_double(r.overlap)});
    }
}

void dump_selected_fields(const RunConfig& config, long j, double gamma,
                          const std::vector<EigenstateRecord>& records,
                          const FloquetSpectrum& odd, const FloquetSpectrum& even,
                          const CoherentFrame& frame) {
    if (!config.dump_box) return;
    const auto [m0, m1, l0, l1] = *config.dump_box;
    const auto ids = select_box(records, m0, m1, l0, l1);
    int dumped = 0;
    for (std::size_t id : ids) {
        if (dumped >= config.max_dumps) break;
        const EigenstateRecord& r = records[id];
        const FloquetSpectrum& spec = (r.parity == Parity::odd) ? odd : even;
        const Eigen::VectorXcd full =
            lift_vector(frame.system(), r.parity, spec.eigenvectors.col(r.index));
        const HusimiField field = husimi(full, frame);
        char name[128];
        std::snprintf(name, sizeof(name), "husimi_j%ld_g%s_%s%ld.csv", j,
                      gamma_tag(gamma).c_str(), parity_name(r.parity), r.index);
        CsvWriter csv(config.out_dir / name, {"i_theta", "i_phi", "Q"});
        for (long c = 0; c < field.grid.cells(); ++c)
            csv.row({std::to_string(c / field.grid.n_phi), std::to_string(c % field.grid.n_phi),
                     format_double(field.values[c])});
        ++dumped;
    }
    std::fprintf(stderr, "[info] dumped %d/%zu Husimi fields in the box\n", dumped, ids.size());
}

}  // namespace

std::vector<EigenstateRecord> read_records_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open records " + path.string());
    std::string line;
    if (!std::getline(in, line) ||
        line != "j,alpha,gamma,parity,index,quasienergy,S,elm,H,M")
        throw std::runtime_error("unrecognized records header in " + path.string());
    std::vector<EigenstateRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != 10) throw std::runtime_error("bad records row in " + path.string());
        EigenstateRecord r;
        r.parity = (cells[3] == "odd") ? Parity::odd : Parity::even;
        r.index = std::stol(cells[4]);
        r.quasienergy = std::stod(cells[5]);
        r.wehrl_entropy = std::stod(cells[6]);
        r.wehrl_elm = std::stod(cells[7]);
        r.shannon_entropy = std::stod(cells[8]);
        r.overlap = std::stod(cells[9]);
        records.push_back(r);
    }
    return records;
}

std::vector<EigenstateRecord> obtain_records(const RunConfig& config, long j, double gamma) {
    const fs::path path = records_path(config, j, gamma);
    if (config.use_cache && fs::exists(path)) return read_records_csv(path);

    check_resources(config, j);
    const SpinSystem sys(j, config.alpha, gamma);
    const ChaoticMask mask = obtain_mask(config, gamma);
    FloquetSpectrum odd, even;
    {
        StageTimer timer("spectra j=" + std::to_string(j) + " gamma=" + gamma_tag(gamma));
        odd = load_or_diagonalize(sys, Parity::odd, config.cache_dir, config.use_cache);
        even = load_or_diagonalize(sys, Parity::even, config.cache_dir, config.use_cache);
    }
    std::vector<EigenstateRecord> records;
    {
        StageTimer timer("husimi records j=" + std::to_string(j) + " gamma=" + gamma_tag(gamma));
        const CoherentFrame& frame =
            shared_frame(j, config.n_theta, config.n_phi, config.krylov_tol);
        records = compute_eigenstate_records(sys, odd, even, frame, &mask);
        dump_selected_fields(config, j, gamma, records, odd, even, frame);
    }
    fs::create_directories(config.out_dir);
    write_records_csv(path, config, j, gamma, records);
    return records;
}

bool cmd_classical(const RunConfig& config) {
    config.validate();
    set_workers(config);
    const CacheLock lock(config.cache_dir);
    fs::create_directories(config.out_dir);
    bool all_ok = true;
    CsvWriter csv(config.out_dir / "mu_c.csv", {"gamma", "mu_c"});
    for (double gamma : config.gamma_list) {
        try {
            const ChaoticMask mask = obtain_mask(config, gamma);
            csv.row(std::vector<double>{gamma, chaotic_fraction(mask)});
        } catch (const std::exception& e) {
            std::fprintf(stderr, "[fail] classical gamma=%s: %s\n", gamma_tag(gamma).c_str(),
                         e.what());
            all_ok = false;
        }
    }
    return all_ok;
}

namespace {

// P(ln x) histograms of eigenvector components in three collections:
// the Dicke basis, coherent probes off the symmetry lines (nu = 2 law)
// and probes on them (nu = 1 law).
void emit_component_stats(const RunConfig& config, const SpinSystem& sys,
                          const FloquetSpectrum& odd, const FloquetSpectrum& even,
                          double gamma) {
    StageTimer timer("component stats j=" + std::to_string(sys.j) +
                     " gamma=" + gamma_tag(gamma));
    Eigen::MatrixXcd pooled(sys.dim(), sys.dim());
    pooled.leftCols(sys.dim_odd()) = lift_to_full(sys, odd);
    pooled.rightCols(sys.dim_even()) = lift_to_full(sys, even);
    const double mean_x = 1.0 / double(sys.dim());

    json out;
    out["j"] = sys.j;
    out["gamma"] = gamma;
    out["mean_x"] = mean_x;

    auto pack = [&](const std::string& name, std::vector<double> comps, int nu) {
        const Histogram h = ln_component_histogram(comps, 60);
        json entry = histogram_to_json(h);
        entry["nu"] = nu;
        json density = json::array();
        for (std::size_t b = 0; b + 1 < h.edges.size(); ++b)
            density.push_back(chi2_ln_density(nu, 0.5 * (h.edges[b] + h.edges[b + 1]), mean_x));
        entry["chi2_density"] = density;
        entry["ks_distance"] = ks_distance(
            std::move(comps), [&](double x) { return chi2_component_cdf(nu, x, mean_x); });
        out[name] = entry;
    };

    std::vector<double> dicke;
    dicke.reserve(std::size_t(sys.dim()) * std::size_t(sys.dim()));
    for (long c = 0; c < pooled.cols(); ++c)
        for (long r = 0; r < pooled.rows(); ++r) dicke.push_back(std::norm(pooled(r, c)));
    pack("dicke_basis", std::move(dicke), 1);

    const PhaseGrid grid(config.n_theta, config.n_phi);
    std::vector<std::pair<double, double>> off_probes;
    for (long c = 0; c < grid.cells() && off_probes.size() < 400; c += 211) {
        const double theta = grid.theta_of(c), phi = grid.phi_of(c);
        if (symmetry_line_distance(sys, theta, phi) > 0.1) off_probes.emplace_back(theta, phi);
    }
    pack("coherent_off_lines", scs_components(sys, off_probes, pooled, config.krylov_tol), 2);

    std::vector<std::pair<double, double>> on_probes;
    for (const auto& p : symmetry_line_points(sys, 150)) on_probes.emplace_back(p.theta, p.phi);
    pack("coherent_on_lines", scs_components(sys, on_probes, pooled, config.krylov_tol), 1);

    write_json(config.out_dir /
                   ("components_j" + std::to_string(sys.j) + "_g" + gamma_tag(gamma) + ".json"),
               out);
}

}  // namespace

bool cmd_spectral(const RunConfig& config) {
    config.validate();
    set_workers(config);
    const CacheLock lock(config.cache_dir);
    fs::create_directories(config.out_dir);
    bool all_ok = true;
    const long j_max = *std::max_element(config.j_list.begin(), config.j_list.end());
    CsvWriter csv(config.out_dir / "spectral.csv",
                  {"j", "gamma", "r_c", "mean_H_jx", "mean_L_jx", "mean_L_pm", "mean_S",
                   "mean_elm"});
    for (long j : config.j_list) {
        for (double gamma : config.gamma_list) {
            try {
                check_resources(config, j);
                const SpinSystem sys(j, config.alpha, gamma);
                FloquetSpectrum odd, even;
                {
                    StageTimer timer("spectra j=" + std::to_string(j) +
                                     " gamma=" + gamma_tag(gamma));
                    odd = load_or_diagonalize(sys, Parity::odd, config.cache_dir,
                                              config.use_cache);
                    even = load_or_diagonalize(sys, Parity::even, config.cache_dir,
                                               config.use_cache);
                }
                std::size_t degenerate = 0, deg_even = 0;
                (void)spacing_ratios(odd, &degenerate);
                (void)spacing_ratios(even, &deg_even);
                degenerate += deg_even;
                if (degenerate > 0)
                    std::fprintf(stderr,
                                 "[warn] j=%ld gamma=%s: %zu degenerate quasienergy spacings "
                                 "(possible symmetry leak)\n",
                                 j, gamma_tag(gamma).c_str(), degenerate);
                const double r_c = normalized_mean_ratio(odd, even);
                const Eigen::VectorXd h_jx =
                    shannon_entropies_in_basis(odd, sys, EigvecBasis::jx_eigenbasis);
                const double mean_h = h_jx.mean();
                const double mean_l_jx = h_jx.array().exp().mean() / double(sys.dim_odd());
                const double mean_l_pm =
                    shannon_elm_in_basis(odd, sys, EigvecBasis::parity_basis);

                StageTimer timer("wehrl means j=" + std::to_string(j) +
                                 " gamma=" + gamma_tag(gamma));
                const CoherentFrame& frame =
                    shared_frame(j, config.n_theta, config.n_phi, config.krylov_tol);
                Eigen::MatrixXcd pooled(sys.dim(), sys.dim());
                pooled.leftCols(sys.dim_odd()) = lift_to_full(sys, odd);
                pooled.rightCols(sys.dim_even()) = lift_to_full(sys, even);
                const HusimiStats stats = husimi_batch_stats(frame, pooled, {});
                csv.row(std::vector<double>{double(j), gamma, r_c, mean_h, mean_l_jx, mean_l_pm,
                                            stats.entropy.mean(), stats.elm.mean()});
                if (config.component_stats && j == j_max)
                    emit_component_stats(config, sys, odd, even, gamma);
            } catch (const std::exception& e) {
                std::fprintf(stderr, "[fail] spectral j=%ld gamma=%s: %s\n", j,
                             gamma_tag(gamma).c_str(), e.what());
                all_ok = false;
            }
        }
    }
    return all_ok;
}

bool cmd_husimi(const RunConfig& config) {
    config.validate();
    set_workers(config);
    const CacheLock lock(config.cache_dir);
    bool all_ok = true;
    for (long j : config.j_list) {
        for (double gamma : config.gamma_list) {
            try {
                (void)obtain_records(config, j, gamma);
            } catch (const std::exception& e) {
                std::fprintf(stderr, "[fail] husimi j=%ld gamma=%s: %s\n", j,
                             gamma_tag(gamma).c_str(), e.what());
                all_ok = false;
            }
        }
    }
    return all_ok;
}

bool cmd_decay(const RunConfig& config) {
    config.validate();
    set_workers(config);
    const CacheLock lock(config.cache_dir);
    fs::create_directories(config.out_dir);
    bool all_ok = true;
    CsvWriter chi_csv(config.out_dir / "chi_m.csv", {"j", "gamma", "m0", "m1", "chi_m"});
    json fits_json = json::array();
    for (double gamma : config.gamma_list) {
        try {
            std::map<long, std::vector<EigenstateRecord>> by_j;
            for (long j : config.j_list) by_j[j] = obtain_records(config, j, gamma);

            for (const auto& [m0, m1] : config.windows) {
                std::vector<std::pair<long, double>> pts;
                for (const auto& [j, recs] : by_j) {
                    const double chi = mixed_fraction(recs, m0, m1);
                    chi_csv.row(std::vector<double>{double(j), gamma, m0, m1, chi});
                    pts.emplace_back(j, chi);
                }
                json entry;
                entry["gamma"] = gamma;
                try {
                    entry["fit"] = fit_to_json(fit_power_law(pts, m0, m1));
                } catch (const std::invalid_argument& e) {
                    PowerLawFit invalid;
                    invalid.window_m0 = m0;
                    invalid.window_m1 = m1;
                    entry["fit"] = fit_to_json(invalid);
                    entry["fit_error"] = e.what();
                }
                fits_json.push_back(entry);
            }

            // sliding-window exponents and P(M) histograms
            const auto sliding = sliding_window_exponents(by_j, config.delta_m,
                                                          config.window_centers);
            json sliding_json = json::array();
            for (const auto& fit : sliding) sliding_json.push_back(fit_to_json(fit));
            write_json(config.out_dir / ("sliding_g" + gamma_tag(gamma) + ".json"),
                       sliding_json);

            for (const auto& [j, recs] : by_j) {
                std::vector<double> overlaps;
                overlaps.reserve(recs.size());
                for (const auto& r : recs) overlaps.push_back(r.overlap);
                const Histogram h = make_histogram(overlaps, 80, -1.0, 1.0 + 1e-12);
                write_json(config.out_dir /
                               ("hist_m_j" + std::to_string(j) + "_g" + gamma_tag(gamma) +
                                ".json"),
                           histogram_to_json(h));
            }
        } catch (const std::exception& e) {
            std::fprintf(stderr, "[fail] decay gamma=%s: %s\n", gamma_tag(gamma).c_str(),
                         e.what());
            all_ok = false;
        }
    }
    write_json(config.out_dir / "fits.json", fits_json);
    return all_ok;
}

bool cmd_audit(const RunConfig& config) {
    config.validate();
    set_workers(config);
    const CacheLock lock(config.cache_dir);
    fs::create_directories(config.out_dir);
    bool all_ok = true;
    json audit_json;

    // oracle equivalence of the Krylov coherent-state path
    {
        StageTimer timer("audit: oracle equivalence");
        std::mt19937_64 gen(config.seed);
        std::uniform_real_distribution<double> uth(0.0, M_PI), uph(-M_PI, M_PI);
        double worst = 0.0;
        for (long j : {8L, 64L, 512L}) {
            const SpinSystem sys(j, config.alpha, 0.0);
            for (int trial = 0; trial < 50; ++trial) {
                const double theta = uth(gen), phi = uph(gen);
                const Eigen::VectorXcd a =
                    align_global_phase(make_coherent_state(sys, theta, phi, config.krylov_tol)
                                           .amplitudes);
                const Eigen::VectorXcd b =
                    align_global_phase(direct_scs_oracle(sys, theta, phi).amplitudes);
                worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
            }
        }
        audit_json["oracle_equivalence"] = {{"max_deviation", worst},
                                            {"tolerance", 1e-9},
                                            {"pass", worst <= 1e-9}};
        std::printf("%s oracle equivalence: max deviation %.3g\n",
                    worst <= 1e-9 ? "[pass]" : "[FAIL]", worst);
        all_ok = all_ok && worst <= 1e-9;
    }

    // grid convergence of the mean Wehrl ELM
    {
        StageTimer timer("audit: grid convergence");
        const long j = std::min<long>(*std::max_element(config.j_list.begin(),
                                                        config.j_list.end()),
                                      1L << 10);
        const SpinSystem sys(j, config.alpha, config.gamma_list.front());
        const GridConvergenceAudit audit = grid_convergence_audit(
            sys, config.gamma_list, {150, 200, 250}, config.krylov_tol);
        json rows = json::array();
        for (const auto& row : audit.rows)
            rows.push_back({{"gamma", row.gamma},
                            {"n_theta", row.n_theta},
                            {"n_phi", row.n_phi},
                            {"mean_elm", row.mean_elm}});
        json flags;
        for (const auto& [gamma, ok] : audit.converged) {
            flags[gamma_tag(gamma)] = ok;
            std::printf("%s grid convergence at gamma=%s\n", ok ? "[pass]" : "[FAIL]",
                        gamma_tag(gamma).c_str());
            all_ok = all_ok && ok;
        }
        audit_json["grid_convergence"] = {{"rows", rows}, {"converged", flags}};
    }

    write_json(config.out_dir / "audit.json", audit_json);
    return all_ok;
}

}  // namespace kicktop::pipeline
