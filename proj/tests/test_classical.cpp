#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kicktop/classical.hpp"
#include "kicktop/math_util.hpp"

using namespace kicktop;

namespace {

ClassicalState random_state(std::mt19937_64& gen) {
    std::normal_distribution<double> g(0.0, 1.0);
    return ClassicalState(g(gen), g(gen), g(gen)).normalized();
}

const double kAlphaPaperLike = 11.0 * M_PI / 19.0;

}  // namespace

TEST_CASE("gamma = 0 reduces to the x-rotation") {
    const SpinSystem sys(1, 0.8, 0.0);
    const ClassicalState out = classical_map({0.0, 0.0, 1.0}, sys);
    CHECK(out.x() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(out.y() == doctest::Approx(-std::sin(0.8)).epsilon(1e-14));
    CHECK(out.z() == doctest::Approx(std::cos(0.8)).epsilon(1e-14));
}

TEST_CASE("alpha = 0: the equatorial point (1,0,0) is a fixed point") {
    const SpinSystem sys(1, 0.0, 2.0);
    const ClassicalState out = classical_map({1.0, 0.0, 0.0}, sys);
    CHECK((out - ClassicalState(1.0, 0.0, 0.0)).norm() < 1e-14);
}

TEST_CASE("involutions square to the identity and reverse the map") {
    const SpinSystem sys(1, kAlphaPaperLike, 2.6);
    auto gen = std::mt19937_64(5);
    for (int trial = 0; trial < 1000; ++trial) {
        const ClassicalState s = random_state(gen);
        for (Involution t : {Involution::T1, Involution::T2}) {
            CHECK((involution(involution(s, t, sys), t, sys) - s).norm() < 1e-12);
            // T F T F = id
            const ClassicalState back = involution(
                classical_map(involution(classical_map(s, sys), t, sys), sys), t, sys);
            CHECK((back - s).norm() < 1e-10);
        }
    }
}

TEST_CASE("forward-then-inverse via T1 returns the example state") {
    const SpinSystem sys(1, 11.0 * M_PI / 19.0, 2.6);
    const ClassicalState s = ClassicalState(0.3, -0.4, std::sqrt(1.0 - 0.09 - 0.16));
    const ClassicalState fwd = classical_map(s, sys);
    const ClassicalState back =
        involution(classical_map(involution(fwd, Involution::T1, sys), sys), Involution::T1, sys);
    CHECK((back - s).norm() < 1e-12);
}

TEST_CASE("the two time reversals agree on the inverse map") {
    const SpinSystem sys(1, kAlphaPaperLike, 4.0);
    auto gen = std::mt19937_64(17);
    for (int trial = 0; trial < 1000; ++trial) {
        const ClassicalState s = random_state(gen);
        const ClassicalState inv1 = involution(
            classical_map(involution(s, Involution::T1, sys), sys), Involution::T1, sys);
        const ClassicalState inv2 = involution(
            classical_map(involution(s, Involution::T2, sys), sys), Involution::T2, sys);
        CHECK((inv1 - inv2).norm() < 1e-10);
    }
}

TEST_CASE("T2 fixed set satisfies y sin(alpha) + z cos(alpha) = -z") {
    const SpinSystem sys(1, kAlphaPaperLike, 3.0);
    auto gen = std::mt19937_64(23);
    for (int trial = 0; trial < 100; ++trial) {
        ClassicalState s = random_state(gen);
        // project onto the fixed plane of T2 and renormalize
        s = (0.5 * (s + involution(s, Involution::T2, sys))).eval();
        if (s.norm() < 1e-3) continue;
        s.normalize();
        CHECK(std::abs(s.y() * std::sin(sys.alpha) + s.z() * std::cos(sys.alpha) + s.z()) <
              1e-12);
    }
}

TEST_CASE("jacobian: gamma = 0 gives R_alpha, det = 1 across kick strengths") {
    const SpinSystem rot(1, 1.1, 0.0);
    const Eigen::Matrix3d jac0 = jacobian({0.2, -0.3, 0.933}, rot);
    Eigen::Matrix3d r;
    r << 1, 0, 0, 0, std::cos(1.1), -std::sin(1.1), 0, std::sin(1.1), std::cos(1.1);
    CHECK((jac0 - r).cwiseAbs().maxCoeff() < 1e-14);

    auto gen = std::mt19937_64(31);
    for (double g : {2.0, 4.0, 6.0}) {
        const SpinSystem sys(1, kAlphaPaperLike, g);
        for (int trial = 0; trial < 1000; ++trial) {
            const ClassicalState s = random_state(gen);
            CHECK(std::abs(jacobian(s, sys).determinant() - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("jacobian matches central differences of the map") {
    const SpinSystem sys(1, kAlphaPaperLike, 3.0);
    auto gen = std::mt19937_64(37);
    const double delta = 1e-7;
    for (int trial = 0; trial < 50; ++trial) {
        const ClassicalState s = random_state(gen);
        const auto [d1, d2] = initial_tangent_pair(s);
        for (const Eigen::Vector3d& d : {d1, d2}) {
            const ClassicalState plus = classical_map((s + delta * d).normalized(), sys);
            const ClassicalState minus = classical_map((s - delta * d).normalized(), sys);
            const Eigen::Vector3d fd = (plus - minus) / (2.0 * delta);
            const Eigen::Vector3d an = jacobian(s, sys) * d;
            CHECK((fd - an).norm() / an.norm() < 1e-6);
        }
    }
}

TEST_CASE("SALI of the integrable rotation stays order one") {
    const SpinSystem sys(1, 1.3, 0.0);
    const auto sali = sali_trajectory(sphere_point(1.0, 0.5), sys, 500);
    for (double v : sali) {
        CHECK(v > 0.05);
        CHECK(v <= 2.0);
    }
}

TEST_CASE("SALI discriminates regular from chaotic orbits") {
    // interior of the main island at gamma = 4, versus a generic chaotic
    // start at gamma = 6
    const SpinSystem island_sys(1, kAlphaPaperLike, 4.0);
    const auto regular = sali_trajectory(sphere_point(0.969, 1.178), island_sys, 300);
    CHECK(regular.back() > 1e-4);

    const SpinSystem chaos_sys(1, kAlphaPaperLike, 6.0);
    const auto chaotic = sali_trajectory(sphere_point(1.0, 0.5), chaos_sys, 300);
    CHECK(chaotic.back() <= 1e-8);
}

TEST_CASE("chaotic SALI decays exponentially before hitting the floor") {
    const SpinSystem sys(1, kAlphaPaperLike, 6.0);
    const auto sali = sali_trajectory(sphere_point(1.0, 0.5), sys, 300);
    // fit log SALI vs t over the exponential stretch above the 1e-16 clamp
    std::vector<double> ts, ls;
    for (int t = 5; t < 300; ++t) {
        if (sali[t] <= 2e-16) break;
        ts.push_back(double(t));
        ls.push_back(std::log(sali[t]));
    }
    REQUIRE(ts.size() >= 10);
    const LinearFit fit = fit_line(ts, ls);
    CHECK(fit.slope < 0.0);
    CHECK(fit.r_squared >= 0.9);
}

TEST_CASE("tangent vectors stay on the tangent plane") {
    const SpinSystem sys(1, kAlphaPaperLike, 4.0);
    ClassicalState s = sphere_point(1.2, 0.3);
    auto [w1, w2] = initial_tangent_pair(s);
    for (int t = 0; t < 400; ++t) {
        const Eigen::Matrix3d jac = jacobian(s, sys);
        s = classical_map(s, sys);
        for (Eigen::Vector3d* w : {&w1, &w2}) {
            *w = jac * (*w);
            *w -= w->dot(s) * s;
            w->normalize();
            CHECK(std::abs(w->dot(s)) <= 1e-9);
        }
    }
}

TEST_CASE("classify_phase_space extremes and chaotic_fraction") {
    const PhaseGrid grid(40, 80);
    const SpinSystem nearly_regular(1, kAlphaPaperLike, 1.0);
    const ChaoticMask low = classify_phase_space(nearly_regular, grid);
    CHECK(chaotic_fraction(low) <= 0.02);

    const SpinSystem chaotic(1, kAlphaPaperLike, 6.0);
    const ChaoticMask high = classify_phase_space(chaotic, grid);
    CHECK(chaotic_fraction(high) >= 0.99);

    ChaoticMask all_zero = low;
    std::fill(all_zero.chi.begin(), all_zero.chi.end(), 0);
    CHECK(chaotic_fraction(all_zero) == 0.0);
    ChaoticMask all_one = low;
    std::fill(all_one.chi.begin(), all_one.chi.end(), 1);
    CHECK(std::abs(chaotic_fraction(all_one) - 1.0) < 1e-6);
}

TEST_CASE("gamma = 0 phase space is entirely regular") {
    const PhaseGrid grid(20, 40);
    const SpinSystem sys(1, kAlphaPaperLike, 0.0);
    CHECK(chaotic_fraction(classify_phase_space(sys, grid)) == 0.0);
}

TEST_CASE("gamma = 3 sits strictly between the integrable and ergodic extremes") {
    const PhaseGrid grid(60, 120);
    const SpinSystem sys(1, kAlphaPaperLike, 3.0);
    const double mu = chaotic_fraction(classify_phase_space(sys, grid));
    CHECK(mu > 0.5);
    CHECK(mu < 1.0);
}

TEST_CASE("gamma = 4 leaves an island inside the chaotic sea") {
    const PhaseGrid grid(60, 120);
    const SpinSystem sys(1, kAlphaPaperLike, 4.0);
    const ChaoticMask mask = classify_phase_space(sys, grid);
    const double mu = chaotic_fraction(mask);
    CHECK(mu > 0.5);
    CHECK(mu < 0.99);
    // the island region probed in the SALI test stays regular
    const long cell = grid.cell_index(int(0.969 / M_PI * grid.n_theta),
                                      int((1.178 + M_PI) / (2 * M_PI) * grid.n_phi));
    CHECK(mask.chi[cell] == 0);
}
