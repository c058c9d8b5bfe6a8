#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lvfront/error.hpp"
#include "lvfront/kinetics.hpp"

using namespace lvfront;

namespace {

const Kinetics sym{KineticsParams::symmetric()};

KineticsParams asymmetric() {
    KineticsParams p;
    p.a2 = 1.5;
    return p;
}

/// Independent oracle: forward Euler with a tiny step on the raw formulas.
PhasePoint fine_euler(const KineticsParams& p, PhasePoint s, double t_end, double dt) {
    const long steps = std::lround(t_end / dt);
    for (long i = 0; i < steps; ++i) {
        const double f = (p.R1 - p.a1 * s.u - p.b1 * s.v) * s.u;
        const double g = (p.R2 - p.a2 * s.u - p.b2 * s.v) * s.v;
        s = {s.u + dt * f, s.v + dt * g};
    }
    return s;
}

}  // namespace

TEST(Kinetics, ReactionTermsAtEquilibriaAndArithmetic) {
    auto [f1, g1] = sym.reaction({1.0, 0.0});
    EXPECT_EQ(f1, 0.0);
    EXPECT_EQ(g1, 0.0);
    auto [f2, g2] = sym.reaction({1.0 / 3.0, 1.0 / 3.0});
    EXPECT_NEAR(f2, 0.0, 1e-15);
    EXPECT_NEAR(g2, 0.0, 1e-15);
    auto [f3, g3] = sym.reaction({0.5, 0.5});
    EXPECT_DOUBLE_EQ(f3, -0.25);
    EXPECT_DOUBLE_EQ(g3, -0.25);
}

TEST(Kinetics, EquilibriaMatchClosedForms) {
    for (const auto& p : {KineticsParams::symmetric(), asymmetric()}) {
        const Kinetics k(p);
        const auto& eq = k.equilibria();
        const double det = p.a1 * p.b2 - p.a2 * p.b1;
        EXPECT_NEAR(eq.saddle.u, (p.b2 * p.R1 - p.b1 * p.R2) / det, 1e-15);
        EXPECT_NEAR(eq.saddle.v, (p.a1 * p.R2 - p.a2 * p.R1) / det, 1e-15);
        EXPECT_GT(eq.saddle.u, 0.0);
        EXPECT_GT(eq.saddle.v, 0.0);
        for (PhasePoint q : {eq.p_plus, eq.p_minus, eq.saddle, eq.origin}) {
            auto [f, g] = k.reaction(q);
            EXPECT_NEAR(f, 0.0, 1e-12);
            EXPECT_NEAR(g, 0.0, 1e-12);
        }
    }
    EXPECT_DOUBLE_EQ(sym.equilibria().p_plus.u, 1.0);
    EXPECT_DOUBLE_EQ(sym.equilibria().p_minus.v, 1.0);
}

TEST(Kinetics, RejectsNonBistableOrNonPositive) {
    KineticsParams p;
    p.b1 = 0.5;  // R1/R2 = 1 > b1/b2
    EXPECT_THROW(Kinetics{p}, Error);
    KineticsParams q;
    q.D2 = 0.0;
    try {
        Kinetics k(q);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidParams);
    }
}

TEST(Kinetics, JacobianExamples) {
    const Mat2 J = sym.jacobian({1.0, 0.0});
    EXPECT_DOUBLE_EQ(J.a11, -1.0);
    EXPECT_DOUBLE_EQ(J.a12, -2.0);
    EXPECT_DOUBLE_EQ(J.a21, 0.0);
    EXPECT_DOUBLE_EQ(J.a22, -1.0);
    for (auto ev : J.eigenvalues()) EXPECT_NEAR(ev.real(), -1.0, 1e-12);

    const auto es = sym.jacobian({1.0 / 3.0, 1.0 / 3.0}).eigenvalues();
    EXPECT_LT(es[0].real() * es[1].real(), 0.0);

    const Mat2 J0 = sym.jacobian({0.0, 0.0});
    EXPECT_EQ(J0.a11, 1.0);
    EXPECT_EQ(J0.a12, 0.0);
    EXPECT_EQ(J0.a21, 0.0);
    EXPECT_EQ(J0.a22, 1.0);
}

TEST(Kinetics, StableNodesHaveNegativeEigenvalues) {
    const Kinetics k(asymmetric());
    for (PhasePoint p : {k.equilibria().p_plus, k.equilibria().p_minus}) {
        for (auto ev : k.jacobian(p).eigenvalues()) EXPECT_LT(ev.real(), 0.0);
    }
}

TEST(Kinetics, JacobianMatchesFiniteDifferences) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(0.0, 1.2);
    const Kinetics k(asymmetric());
    const double h = 1e-6;
    for (int i = 0; i < 100; ++i) {
        const PhasePoint s{U(rng), U(rng)};
        const Mat2 J = k.jacobian(s);
        EXPECT_NEAR(J.a11, (k.f(s.u + h, s.v) - k.f(s.u - h, s.v)) / (2 * h), 1e-6);
        EXPECT_NEAR(J.a12, (k.f(s.u, s.v + h) - k.f(s.u, s.v - h)) / (2 * h), 1e-6);
        EXPECT_NEAR(J.a21, (k.g(s.u + h, s.v) - k.g(s.u - h, s.v)) / (2 * h), 1e-6);
        EXPECT_NEAR(J.a22, (k.g(s.u, s.v + h) - k.g(s.u, s.v - h)) / (2 * h), 1e-6);
    }
}

TEST(Kinetics, OffDiagonalsNegativeInOpenBox) {
    const Kinetics k(asymmetric());
    const PhasePoint box = k.invariant_box();
    for (int i = 1; i < 50; ++i) {
        for (int j = 1; j < 50; ++j) {
            const Mat2 J = k.jacobian({box.u * i / 50.0, box.v * j / 50.0});
            EXPECT_LT(J.a12, 0.0);
            EXPECT_LT(J.a21, 0.0);
        }
    }
}

TEST(Kinetics, JacobianBoundDominatesBox) {
    const Kinetics k(asymmetric());
    const PhasePoint box = k.invariant_box();
    for (int i = 0; i <= 40; ++i) {
        for (int j = 0; j <= 40; ++j) {
            EXPECT_LE(k.jacobian({box.u * i / 40.0, box.v * j / 40.0}).norm_inf(), k.jacobian_bound() + 1e-12);
        }
    }
}

TEST(Kinetics, NoFifthEquilibriumOnScan) {
    // Cells where both f and g change sign (or vanish) must sit at one of the four equilibria.
    const Kinetics k(asymmetric());
    const auto& eq = k.equilibria();
    const int n = 200;
    const double hu = 1.2 * k.invariant_box().u / n, hv = 1.2 * k.invariant_box().v / n;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double fmin = 1e300, fmax = -1e300, gmin = 1e300, gmax = -1e300;
            for (int di = 0; di <= 1; ++di) {
                for (int dj = 0; dj <= 1; ++dj) {
                    const double u = (i + di) * hu, v = (j + dj) * hv;
                    fmin = std::min(fmin, k.f(u, v));
                    fmax = std::max(fmax, k.f(u, v));
                    gmin = std::min(gmin, k.g(u, v));
                    gmax = std::max(gmax, k.g(u, v));
                }
            }
            if (fmin <= 0 && fmax >= 0 && gmin <= 0 && gmax >= 0) {
                bool known = false;
                for (PhasePoint q : {eq.p_plus, eq.p_minus, eq.saddle, eq.origin}) {
                    // Cells touching an equilibrium's neighbourhood see the same sign change.
                    if (q.u >= (i - 2) * hu && q.u <= (i + 3) * hu && q.v >= (j - 2) * hv && q.v <= (j + 3) * hv) {
                        known = true;
                    }
                }
                EXPECT_TRUE(known) << "cell " << i << "," << j;
            }
        }
    }
}

TEST(Kinetics, OdeFlowFixedPointAndConvergence) {
    const PhasePoint p = sym.ode_flow({1.0, 0.0}, 37.0, 0.01);
    EXPECT_EQ(p.u, 1.0);
    EXPECT_EQ(p.v, 0.0);
    const PhasePoint a = sym.ode_flow({0.9, 0.05}, 50.0, 1e-3);
    EXPECT_LT(distance(a, {1.0, 0.0}), 1e-6);
    const PhasePoint b = sym.ode_flow({0.05, 0.9}, 50.0, 1e-3);
    EXPECT_LT(distance(b, {0.0, 1.0}), 1e-6);
}

TEST(Kinetics, OdeFlowAgreesWithFineEuler) {
    const PhasePoint a = sym.ode_flow({0.3, 0.25}, 5.0, 1e-2);
    const PhasePoint b = fine_euler(KineticsParams::symmetric(), {0.3, 0.25}, 5.0, 1e-6);
    EXPECT_LT(distance(a, b), 1e-4);
}

TEST(Kinetics, OdeFlowRejectsOversizedSteps) {
    EXPECT_THROW(sym.ode_flow({0.9, 0.9}, 10.0, 5.0), Error);
}

TEST(Kinetics, ClassifyBasinExamples) {
    EXPECT_EQ(sym.classify_basin({0.9, 0.05}), Basin::Delta1);
    EXPECT_EQ(sym.classify_basin({1.0 / 3.0, 1.0 / 3.0}), Basin::S);
    EXPECT_EQ(sym.classify_basin({0.2, 0.8}), Basin::Delta2);
    EXPECT_EQ(sym.classify_basin({0.0, 0.0}), Basin::Undecided);
    BasinOptions short_run;
    short_run.horizon = 0.5;
    EXPECT_EQ(sym.classify_basin({0.45, 0.4}, short_run), Basin::Undecided);
}

TEST(Kinetics, SymmetricFlowIsConjugateUnderSwap) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const PhasePoint s{U(rng), U(rng)};
        const PhasePoint a = sym.ode_flow(s, 3.0, 1e-2);
        const PhasePoint b = sym.ode_flow({s.v, s.u}, 3.0, 1e-2);
        EXPECT_NEAR(a.u, b.v, 1e-13);
        EXPECT_NEAR(a.v, b.u, 1e-13);
    }
}
