#include "kicktop/husimi.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kicktop/math_util.hpp"

namespace kicktop {

namespace {

constexpr double kLnFloor = 1e-300;  // Q below this contributes 0 to Q ln Q

struct FftwPlanDeleter {
    void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
using FftwPlan = std::unique_ptr<fftw_plan_s, FftwPlanDeleter>;

struct FftwBuffer {
    fftw_complex* data = nullptr;
    explicit FftwBuffer(std::size_t n) : data(fftw_alloc_complex(n)) {
        if (!data) throw std::bad_alloc();
    }
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
};

std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

CoherentFrame::CoherentFrame(const SpinSystem& sys, const PhaseGrid& grid, double tol)
    : sys_(sys), grid_(grid) {
    const long n = sys.dim();
    cols_.resize(n, grid.n_theta);
    twiddle_.resize(n);
    for (long p = 0; p < n; ++p)
        twiddle_[p] = std::polar(1.0, double(p) * M_PI * (1.0 - 1.0 / grid.n_phi));

    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < grid.n_theta; ++i) {
        try {
            cols_.col(i) = wigner_d_column(sys_, grid.thetas[i], tol);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    const double defect = max_norm_defect();
    if (defect > 1e-9)
        throw std::runtime_error("CoherentFrame: profile norm defect " + std::to_string(defect));
}

Eigen::VectorXcd CoherentFrame::state_at(long cell) const {
    const long i = cell / grid_.n_phi;
    const double phi = grid_.phi_of(cell);
    const long n = sys_.dim();
    Eigen::VectorXcd v(n);
    for (long p = 0; p < n; ++p) v[p] = cols_(p, i) * std::polar(1.0, double(p) * phi);
    return v;
}

Eigen::MatrixXcd CoherentFrame::dense_states(std::size_t max_bytes) const {
    const std::size_t need =
        sizeof(Complex) * std::size_t(sys_.dim()) * std::size_t(grid_.cells());
    if (need > max_bytes)
        throw std::runtime_error("CoherentFrame::dense_states: frame too large; stream instead");
    Eigen::MatrixXcd m(sys_.dim(), grid_.cells());
    for (long c = 0; c < grid_.cells(); ++c) m.col(c) = state_at(c);
    return m;
}

double CoherentFrame::max_norm_defect() const {
    return (cols_.colwise().norm().array() - 1.0).abs().maxCoeff();
}

void husimi_row_amplitudes(const CoherentFrame& frame, int i_theta,
                           const Eigen::MatrixXcd& states_t, Eigen::MatrixXcd& out) {
    const long n_states = states_t.rows();
    const long n = states_t.cols();
    const int n_phi = frame.grid().n_phi;
    out.resize(n_states, n_phi);
    out.setZero();
    // fold p = j - m modulo n_phi; the half-cell grid offset sits in the twiddle
    for (long p = 0; p < n; ++p) {
        const Complex coef = frame.theta_columns()(p, i_theta) * frame.fold_twiddle()[p];
        out.col(p % n_phi) += coef * states_t.col(p);
    }
    FftwBuffer buf(std::size_t(n_states) * n_phi);
    auto* b = reinterpret_cast<Complex*>(buf.data);
    Eigen::Map<Eigen::MatrixXcd>(b, n_states, n_phi) = out;
    FftwPlan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        plan.reset(fftw_plan_many_dft(1, &n_phi, int(n_states), buf.data, nullptr,
                                      int(n_states), 1, buf.data, nullptr, int(n_states), 1,
                                      FFTW_FORWARD, FFTW_ESTIMATE));
    }
    fftw_execute(plan.get());
    out = Eigen::Map<Eigen::MatrixXcd>(b, n_states, n_phi);
}

HusimiStats husimi_batch_stats(const CoherentFrame& frame, const Eigen::MatrixXcd& states,
                               const HusimiStatsOptions& opts) {
    const SpinSystem& sys = frame.system();
    const PhaseGrid& grid = frame.grid();
    const long n = sys.dim();
    if (states.rows() != n)
        throw std::invalid_argument("husimi_batch_stats: states must be in the full Dicke basis");
    const long n_states = states.cols();
    if (n_states == 0) throw std::invalid_argument("husimi_batch_stats: no states");
    if (opts.mask && !opts.mask->grid.same_shape(grid))
        throw std::invalid_argument("husimi_batch_stats: mask grid does not match frame grid");

    // transposed copy: column p holds all states at Dicke row p, contiguous
    const Eigen::MatrixXcd states_t = states.transpose();
    const int n_phi = grid.n_phi;

    // per-thread partials merged in thread order: the reduction is bitwise
    // deterministic for a fixed thread count (rows have equal cost, so the
    // static schedule also balances)
    const int n_threads =
#ifdef _OPENMP
        omp_get_max_threads();
#else
        1;
#endif
    std::vector<Eigen::VectorXd> part_wq(n_threads, Eigen::VectorXd::Zero(n_states));
    std::vector<Eigen::VectorXd> part_wql(n_threads, Eigen::VectorXd::Zero(n_states));
    std::vector<Eigen::VectorXd> part_wqf(n_threads, Eigen::VectorXd::Zero(n_states));

#pragma omp parallel
    {
        FftwBuffer buf(std::size_t(n_states) * n_phi);
        auto* g = reinterpret_cast<Complex*>(buf.data);
        Eigen::Map<Eigen::MatrixXcd> gt(g, n_states, n_phi);
        FftwPlan plan;
        {
            std::lock_guard<std::mutex> lock(fftw_planner_mutex());
            plan.reset(fftw_plan_many_dft(1, &n_phi, int(n_states), buf.data, nullptr,
                                          int(n_states), 1, buf.data, nullptr, int(n_states),
                                          1, FFTW_FORWARD, FFTW_ESTIMATE));
        }
        const int tid =
#ifdef _OPENMP
            omp_get_thread_num();
#else
            0;
#endif
        Eigen::VectorXd& t_wq = part_wq[tid];
        Eigen::VectorXd& t_wql = part_wql[tid];
        Eigen::VectorXd& t_wqf = part_wqf[tid];

#pragma omp for schedule(static)
        for (int i = 0; i < grid.n_theta; ++i) {
            gt.setZero();
            for (long p = 0; p < n; ++p) {
                const Complex coef = frame.theta_columns()(p, i) * frame.fold_twiddle()[p];
                gt.col(p % n_phi) += coef * states_t.col(p);
            }
            fftw_execute_dft(plan.get(), buf.data, buf.data);

            const double w = grid.row_weight[i];
            for (int k = 0; k < n_phi; ++k) {
                double wf = 0.0;
                if (opts.mask)
                    wf = opts.mask->chi[grid.cell_index(i, k)] ? w : -w;
                const Complex* col = g + std::size_t(k) * n_states;
                for (long s = 0; s < n_states; ++s) {
                    const double q = std::norm(col[s]);
                    t_wq[s] += w * q;
                    if (opts.want_entropy && q > kLnFloor) t_wql[s] += w * q * std::log(q);
                    if (opts.mask) t_wqf[s] += wf * q;
                }
            }
        }
    }

    Eigen::VectorXd wq = Eigen::VectorXd::Zero(n_states);
    Eigen::VectorXd wql = Eigen::VectorXd::Zero(n_states);
    Eigen::VectorXd wqf = Eigen::VectorXd::Zero(n_states);
    for (int t = 0; t < n_threads; ++t) {
        wq += part_wq[t];
        wql += part_wql[t];
        wqf += part_wqf[t];
    }

    const double kq = double(sys.dim()) / (4.0 * M_PI);
    HusimiStats stats;
    stats.norm_defect.resize(n_states);
    if (opts.want_entropy) {
        stats.entropy.resize(n_states);
        stats.elm.resize(n_states);
    }
    if (opts.mask) stats.overlap.resize(n_states);
    for (long s = 0; s < n_states; ++s) {
        if (!(wq[s] > 0.0))
            throw std::invalid_argument("husimi_batch_stats: zero state in batch");
        stats.norm_defect[s] = std::abs(kq * wq[s] - 1.0);
        if (opts.want_entropy) {
            // S of the field renormalized to unit discretized integral
            stats.entropy[s] = std::log(kq * wq[s]) - wql[s] / wq[s];
            stats.elm[s] = std::exp(stats.entropy[s]) / double(sys.dim());
        }
        if (opts.mask) stats.overlap[s] = std::clamp(wqf[s] / wq[s], -1.0, 1.0);
    }
    return stats;
}

HusimiField husimi(const Eigen::VectorXcd& state, const CoherentFrame& frame) {
    if (state.size() != frame.system().dim())
        throw std::invalid_argument("husimi: state must be in the full Dicke basis");
    if (state.norm() == 0.0) throw std::invalid_argument("husimi: zero state");
    const PhaseGrid& grid = frame.grid();
    HusimiField field;
    field.grid = grid;
    field.values.resize(grid.cells());

    const Eigen::MatrixXcd state_t = state.transpose();
    Eigen::MatrixXcd row;
    double total = 0.0;
    for (int i = 0; i < grid.n_theta; ++i) {
        husimi_row_amplitudes(frame, i, state_t, row);
        for (int k = 0; k < grid.n_phi; ++k) {
            const double q = std::norm(row(0, k));
            field.values[grid.cell_index(i, k)] = q;
            total += grid.row_weight[i] * q;
        }
    }
    const double kq = double(frame.system().dim()) / (4.0 * M_PI);
    field.values /= kq * total;
    return field;
}

double wehrl_entropy(const HusimiField& field, const SpinSystem& sys) {
    const double kq = double(sys.dim()) / (4.0 * M_PI);
    double total = 0.0, s = 0.0;
    for (long c = 0; c < field.grid.cells(); ++c) {
        const double q = field.values[c];
        if (q < -1e-14) throw std::invalid_argument("wehrl_entropy: negative Husimi value");
        const double w = field.grid.weight(c);
        total += w * q;
        if (q > kLnFloor) s -= w * q * std::log(q);
    }
    if (std::abs(kq * total - 1.0) > 1e-6)
        throw std::invalid_argument("wehrl_entropy: field is not normalized");
    return kq * s;
}

double overlap_index(const HusimiField& field, const ChaoticMask& mask, const SpinSystem& sys) {
    if (!field.grid.same_shape(mask.grid))
        throw std::invalid_argument("overlap_index: field/mask grid mismatch");
    const double kq = double(sys.dim()) / (4.0 * M_PI);
    double m = 0.0;
    for (long c = 0; c < field.grid.cells(); ++c) {
        const double f = mask.chi[c] ? 1.0 : -1.0;
        m += f * field.grid.weight(c) * field.values[c];
    }
    return std::clamp(kq * m, -1.0, 1.0);
}

double dicke_wehrl_entropy(long j, long m) {
    if (std::abs(m) > j) throw std::invalid_argument("dicke_wehrl_entropy: |m| > j");
    const double tj = double(2 * j);
    double s = tj / (tj + 1.0) - log_binomial(tj, double(j - m)) + tj * digamma(tj + 1.0);
    s -= double(j + m) * digamma(double(j + m) + 1.0);
    s -= double(j - m) * digamma(double(j - m) + 1.0);
    return s;
}

std::vector<double> scs_components(const SpinSystem& sys,
                                   const std::vector<std::pair<double, double>>& probes,
                                   const Eigen::MatrixXcd& states, double tol) {
    if (states.rows() != sys.dim())
        throw std::invalid_argument("scs_components: states must be in the full Dicke basis");
    std::vector<double> comps(probes.size() * std::size_t(states.cols()));
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t p = 0; p < probes.size(); ++p) {
        try {
            const CoherentState scs =
                make_coherent_state(sys, probes[p].first, probes[p].second, tol);
            const Eigen::VectorXcd overlaps = states.adjoint() * scs.amplitudes;
            for (long n = 0; n < states.cols(); ++n)
                comps[p * std::size_t(states.cols()) + std::size_t(n)] = std::norm(overlaps[n]);
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return comps;
}

}  // namespace kicktop
