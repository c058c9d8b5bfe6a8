#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lvfront/error.hpp"
#include "lvfront/interface.hpp"

using namespace lvfront;

namespace {

struct Setup {
    Kinetics kin{KineticsParams::symmetric()};
    HFunction h{compute_separatrix(kin, 1e-3, 2.0)};
    WaveProfile wave = solve_standing_wave(kin, h);
};

const Setup& sym() {
    static const Setup s;
    return s;
}

Coefficients unit_coeff() { return Coefficients::uniform(GridSpec::line(0.0, 1.0, 0.5)); }

double mean_radius(const PolylineInterface& g, Point2 c = {}) {
    double s = 0.0;
    for (const auto& p : g.vertices) s += distance(p, c);
    return s / static_cast<double>(g.vertices.size());
}

PolylineInterface random_blob(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-0.1, 0.1);
    const double a1 = U(rng), a2 = U(rng), p1 = 10 * U(rng), cx = U(rng), cy = U(rng);
    PolylineInterface g;
    for (int i = 0; i < 128; ++i) {
        const double th = 2.0 * std::numbers::pi * i / 128;
        const double r = 0.5 + a1 * std::cos(2 * th + p1) + a2 * std::sin(3 * th);
        g.vertices.push_back({cx + r * std::cos(th), cy + r * std::sin(th)});
    }
    return g;
}

}  // namespace

TEST(Interface, RadialClosedForm) {
    const Coefficients c = unit_coeff();
    const RadialInterface r2 = evolve_radial(0.5, c, {}, 2, 0.08, 1e-5);
    EXPECT_NEAR(r2.radius_at(0.08), 0.3, 0.3e-4);
    EXPECT_EQ(r2.radius_at(0.0), 0.5);
    const RadialInterface r3 = evolve_radial(0.5, c, {}, 3, 0.05, 1e-5);
    for (double t : {0.01, 0.03, 0.05}) {
        const double exact = std::sqrt(0.25 - 4.0 * t);
        EXPECT_NEAR(r3.radius_at(t), exact, 1e-4 * exact);
    }
    const RadialInterface r1 = evolve_radial(0.5, c, {}, 1, 1.0, 1e-3);
    EXPECT_EQ(r1.radius_at(1.0), 0.5);
}

TEST(Interface, RadialHeterogeneousClosedForm) {
    // k = 1 + r^2, h = 1: the gradient terms combine to dR/dt = -(1 + R^2)/R,
    // so R(t)^2 = (1 + R0^2) e^{-2t} - 1.
    const GridSpec g = GridSpec::radial(2, 1.0, 0.01);
    const Coefficients c = Coefficients::from_functions(
        g, [](Point2 x) { return 1.0 + x.x * x.x + x.y * x.y; }, [](Point2) { return 1.0; });
    const RadialInterface r = evolve_radial(0.6, c, {0.0}, 2, 0.05, 1e-5);
    for (double t : {0.02, 0.05}) {
        const double exact = std::sqrt(1.36 * std::exp(-2.0 * t) - 1.0);
        EXPECT_NEAR(r.radius_at(t), exact, 1e-6);
    }
}

TEST(Interface, RadialExtinction) {
    try {
        evolve_radial(0.1, unit_coeff(), {}, 2, 1.0, 1e-4);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Extinction);
    }
}

TEST(Interface, NormalVelocityHomogeneous) {
    const Coefficients c = Coefficients::uniform(GridSpec::line(0.0, 1.0, 0.5), 2.0, 5.0);
    EXPECT_DOUBLE_EQ(normal_velocity(c, {3.0}, 2, 4.0, {0.1, 0.2}, {1.0, 0.0}), -8.0);
    EXPECT_DOUBLE_EQ(normal_velocity(c, {3.0}, 3, 4.0, {0.1, 0.2}, {1.0, 0.0}), -16.0);
}

TEST(Interface, CurvatureAndRedistribution) {
    const PolylineInterface circle = circle_polyline({0.2, -0.1}, 0.4, 200);
    const auto& v = circle.vertices;
    EXPECT_NEAR(three_point_curvature(v[0], v[1], v[2]), 1.0 / 0.4, 1e-9);
    EXPECT_NEAR(three_point_curvature(v[2], v[1], v[0]), -1.0 / 0.4, 1e-9);
    const PolylineInterface e = ellipse_polyline({0.0, 0.0}, 0.6, 0.2, 300);
    const PolylineInterface r = redistribute(e, 300);
    double lo = 1e9, hi = 0.0;
    for (std::size_t i = 0; i < r.vertices.size(); ++i) {
        const double s = distance(r.vertices[i], r.vertices[(i + 1) % r.vertices.size()]);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    EXPECT_LT(hi / lo, 1.01);
    EXPECT_NEAR(r.signed_area(), e.signed_area(), 1e-4);
}

TEST(Interface, SimplicityCheck) {
    EXPECT_TRUE(is_simple(circle_polyline({0.0, 0.0}, 1.0, 64)));
    PolylineInterface eight;
    for (int i = 0; i < 128; ++i) {
        const double th = 2.0 * std::numbers::pi * i / 128;
        eight.vertices.push_back({std::sin(th), std::sin(th) * std::cos(th)});
    }
    EXPECT_FALSE(is_simple(eight));
    EXPECT_THROW(evolve_polyline(eight, unit_coeff(), {}, 0.01, 1e-4), Error);
}

TEST(Interface, PolylineTracksRadial) {
    const Coefficients c = unit_coeff();
    const PolylineInterface g = evolve_polyline(circle_polyline({0.1, 0.0}, 0.5, 256), c, {}, 0.05, 1e-3);
    const double R = evolve_radial(0.5, c, {}, 2, 0.05, 1e-5).radius_at(0.05);
    EXPECT_NEAR(mean_radius(g, {0.1, 0.0}), R, 1e-3);
    for (const auto& p : g.vertices) EXPECT_NEAR(distance(p, {0.1, 0.0}), R, 1e-3);
}

TEST(Interface, ZeroTimeIsIdentity) {
    const PolylineInterface g0 = ellipse_polyline({0.0, 0.0}, 0.5, 0.3, 128);
    const PolylineInterface g = evolve_polyline(g0, unit_coeff(), {}, 0.0, 1e-3);
    ASSERT_EQ(g.vertices.size(), g0.vertices.size());
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        EXPECT_EQ(g.vertices[i].x, g0.vertices[i].x);
        EXPECT_EQ(g.vertices[i].y, g0.vertices[i].y);
    }
}

TEST(Interface, EllipseRoundsOut) {
    const std::vector<double> probes{0.0, 0.005, 0.01, 0.02};
    const auto snaps = evolve_polyline(ellipse_polyline({0.0, 0.0}, 0.5, 0.3, 256), unit_coeff(), {}, probes, 1e-3);
    for (std::size_t k = 1; k < snaps.size(); ++k) {
        EXPECT_LT(isoperimetric_deficit(snaps[k]), isoperimetric_deficit(snaps[k - 1]));
    }
}

TEST(Interface, ExtractFrontFromWellPreparedData) {
    const double eps = 0.1, dx = eps / 8.0;
    const Front circle = CircleFront{{0.0, 0.0}, 0.5};
    const GridSpec radial = GridSpec::radial(2, 1.0, dx), rect = GridSpec::rect(-1.0, 1.0, -1.0, 1.0, dx);
    for (const GridSpec& g : {radial, rect}) {
        const Coefficients c = Coefficients::uniform(g);
        const InitialData d =
            build_initial_data(InitialKind::WellPrepared, g, circle, c, sym().kin, sym().wave, sym().h, eps);
        const Front f = extract_front(d.field, g, sym().h);
        EXPECT_LT(hausdorff_distance(f, circle), 2.0 * dx);
        if (g.geometry == Geometry::Radial) EXPECT_NEAR(std::get<CircleFront>(f).R, 0.5, 2.0 * dx);
    }
    const GridSpec line = GridSpec::line(-1.0, 1.0, dx);
    const InitialData d = build_initial_data(InitialKind::WellPrepared, line, PointSetFront{{0.137}, true},
                                             Coefficients::uniform(line), sym().kin, sym().wave, sym().h, eps);
    const auto pts = std::get<PointSetFront>(extract_front(d.field, line, sym().h));
    ASSERT_EQ(pts.points.size(), 1u);
    EXPECT_NEAR(pts.points[0], 0.137, dx);
    EXPECT_TRUE(pts.left_inside);
}

TEST(Interface, ExtractFrontWithoutSignChange) {
    const GridSpec g = GridSpec::rect(-1.0, 1.0, -1.0, 1.0, 0.1);
    const Field f{std::vector<double>(g.size(), 0.9), std::vector<double>(g.size(), 0.05), 0.0, 0.1};
    try {
        extract_front(f, g, sym().h);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NoFront);
    }
}

TEST(Interface, SignedDistanceExamples) {
    const GridSpec g = GridSpec::rect(-1.0, 1.0, -1.0, 1.0, 0.05);
    const Front circle = CircleFront{{0.1, 0.0}, 0.5};
    const Front poly = circle_polyline({0.1, 0.0}, 0.5, 512);
    const SignedDistanceField dc = signed_distance(circle, g), dp = signed_distance(poly, g, 3);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double exact = distance(g.point(i), {0.1, 0.0}) - 0.5;
        EXPECT_NEAR(dc.d[i], exact, 1e-12);
        EXPECT_NEAR(dp.d[i], exact, 1e-5);
    }
    EXPECT_LT(signed_distance(circle, Point2{0.1, 0.0}), 0.0);
    for (const auto& v : std::get<PolylineInterface>(poly).vertices) EXPECT_NEAR(signed_distance(poly, v), 0.0, 1e-15);
}

TEST(Interface, SignedDistanceHasUnitGradient) {
    const GridSpec g = GridSpec::rect(-1.0, 1.0, -1.0, 1.0, 0.02);
    const Front e = ellipse_polyline({0.0, 0.0}, 0.6, 0.35, 512);
    const SignedDistanceField d = signed_distance(e, g);
    const std::size_t n = g.nx;
    int checked = 0;
    for (std::size_t j = 1; j + 1 < g.ny; ++j) {
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double here = d.d[j * n + i];
            // Stay clear of the medial axis (the major axis segment inside, nothing outside).
            if (here < -0.02 && std::abs(g.point(j * n + i).y) < 0.1) continue;
            if (here < -0.25) continue;
            const double gx = (d.d[j * n + i + 1] - d.d[j * n + i - 1]) / (2 * g.dx);
            const double gy = (d.d[(j + 1) * n + i] - d.d[(j - 1) * n + i]) / (2 * g.dy);
            EXPECT_NEAR(std::hypot(gx, gy), 1.0, 0.05) << g.point(j * n + i).x << "," << g.point(j * n + i).y;
            ++checked;
        }
    }
    EXPECT_GT(checked, 1000);
}

TEST(Interface, HausdorffExamples) {
    const PolylineInterface a = ellipse_polyline({0.0, 0.0}, 0.5, 0.3, 256);
    EXPECT_NEAR(hausdorff_distance(a, a), 0.0, 1e-14);
    EXPECT_NEAR(hausdorff_distance(CircleFront{{0, 0}, 0.3}, CircleFront{{0, 0}, 0.5}), 0.2, 1e-15);
    EXPECT_NEAR(hausdorff_distance(circle_polyline({0, 0}, 0.3, 512), circle_polyline({0, 0}, 0.5, 512)), 0.2, 1e-6);
    const Point2 w{0.03, -0.04};
    PolylineInterface b = a, c = circle_polyline({0, 0}, 0.4, 512), cw = c;
    for (auto& p : b.vertices) p = p + w;
    for (auto& p : cw.vertices) p = p + w;
    EXPECT_LE(hausdorff_distance(a, b), norm(w) + 1e-12);
    EXPECT_NEAR(hausdorff_distance(c, cw), norm(w), 1e-4);
    EXPECT_NEAR(hausdorff_distance(PointSetFront{{0.1, 0.5}, true}, PointSetFront{{0.12, 0.4}, true}), 0.1, 1e-15);
}

TEST(Interface, HausdorffIsSymmetricAndSatisfiesTriangleInequality) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const PolylineInterface a = random_blob(rng), b = random_blob(rng), c = random_blob(rng);
        const double ab = hausdorff_distance(a, b), ba = hausdorff_distance(b, a);
        EXPECT_NEAR(ab, ba, 1e-12);
        EXPECT_LE(hausdorff_distance(a, c), ab + hausdorff_distance(b, c) + 1e-3);
    }
}
