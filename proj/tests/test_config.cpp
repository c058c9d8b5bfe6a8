#include <gtest/gtest.h>

#include <string>

#include "lvfront/config.hpp"
#include "lvfront/error.hpp"

using namespace lvfront;

namespace {

ErrorKind kind_of(const std::string& text) {
    try {
        ExperimentConfig::parse_string(text);
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "config was accepted:\n" << text;
    return ErrorKind::InvalidParams;
}

std::string message_of(const std::string& text) {
    try {
        ExperimentConfig::parse_string(text);
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST(Config, EmptyInputGivesDefaults) {
    const ExperimentConfig c = ExperimentConfig::parse_string("");
    EXPECT_EQ(c.grid.geometry, Geometry::Radial);
    EXPECT_EQ(c.metrics.eps_list, (std::vector<double>{0.1, 0.05, 0.025}));
    EXPECT_EQ(c.liouville.seeds, 50);
    EXPECT_FALSE(c.interface.C.has_value());
    EXPECT_FALSE(c.heterogeneous());
}

TEST(Config, ParsesSectionsListsAndEnums) {
    const ExperimentConfig c = ExperimentConfig::parse_string(
        "; comment\n"
        "[kinetics]\na2 = 2.5\n"
        "[grid]\ngeometry = rect\nextent = -1, 1, -0.5, 0.5\ndx = 0.01\n"
        "[solver]\nscheme = imex\nface_mean = harmonic\n"
        "[interface]\nshape = ellipse\ncenter = 0.1, 0\nsemi_x = 0.4\nsemi_y = 0.2\n"
        "[initial]\nkind = well_prepared\n"
        "[metrics]\neps_list = 0.2, 0.1\n"
        "[run]\nseed = 18446744073709551615\n");
    EXPECT_DOUBLE_EQ(c.kinetics.a2, 2.5);
    EXPECT_EQ(c.grid.geometry, Geometry::Rect2D);
    EXPECT_EQ(c.grid.extent, (std::vector<double>{-1.0, 1.0, -0.5, 0.5}));
    EXPECT_EQ(c.solver.scheme, Scheme::IMEX);
    EXPECT_EQ(c.solver.face_mean, FaceMean::Harmonic);
    EXPECT_EQ(c.interface.shape, FrontShape::Ellipse);
    EXPECT_DOUBLE_EQ(c.interface.center.x, 0.1);
    EXPECT_EQ(c.initial.kind, InitialKind::WellPrepared);
    EXPECT_EQ(c.metrics.eps_list.size(), 2u);
    EXPECT_EQ(c.seed, 18446744073709551615ull);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
    EXPECT_EQ(kind_of("[grid]\nspacing = 0.1\n"), ErrorKind::Config);
    EXPECT_EQ(kind_of("[nonsense]\nx = 1\n"), ErrorKind::Config);
    EXPECT_EQ(kind_of("[grid]\ndx = fast\n"), ErrorKind::Config);
    EXPECT_EQ(kind_of("[grid]\ndx = 0.1x\n"), ErrorKind::Config);
    EXPECT_EQ(kind_of("[grid]\ngeometry = sphere\n"), ErrorKind::Config);
    EXPECT_EQ(kind_of("[grid]\ndim = 2.5\n"), ErrorKind::Config);
    EXPECT_EQ(kind_of("[metrics]\neps_list = 0.05, 0.1\n"), ErrorKind::Config);
    EXPECT_EQ(kind_of("[wave]\nn = 401\n"), ErrorKind::Config);
    EXPECT_EQ(kind_of("[interface]\nradius = 2\n"), ErrorKind::Config);
    EXPECT_EQ(kind_of("[run]\nseed = -1\n"), ErrorKind::Config);
    EXPECT_EQ(kind_of("[grid\n"), ErrorKind::Config);
    EXPECT_THROW(ExperimentConfig::load("/nonexistent/config.ini"), Error);
}

TEST(Config, NonBistableKineticsRejected) {
    // a1/a2 < R1/R2 < b1/b2 fails for b1 = 0.5.
    EXPECT_EQ(kind_of("[kinetics]\nb1 = 0.5\n"), ErrorKind::Config);
    EXPECT_EQ(kind_of("[kinetics]\nD1 = -1\n"), ErrorKind::Config);
}

TEST(Config, HeterogeneousCoefficientsNeedDrivingConstant) {
    const std::string het = "[coeff]\nk_expr = 1 + x*x\n";
    EXPECT_EQ(kind_of(het), ErrorKind::Config);
    EXPECT_NE(message_of(het).find("Driving constant C"), std::string::npos);
    const ExperimentConfig c = ExperimentConfig::parse_string(het + "[interface]\nC = 0.5\n");
    EXPECT_TRUE(c.heterogeneous());
    EXPECT_DOUBLE_EQ(*c.interface.C, 0.5);
}

TEST(Config, ManifestRoundTrips) {
    const ExperimentConfig a = ExperimentConfig::parse_string(
        "[kinetics]\na2 = 2.1\n[grid]\ngeometry = line\nextent = -2, 2\n"
        "[interface]\nshape = point\npoints = -0.5, 0.25\nC = 0.125\n"
        "[coeff]\nh_expr = 1 + 0.1*x\n[metrics]\neps_list = 0.1\n[run]\nseed = 42\n");
    const std::string m = a.manifest();
    const ExperimentConfig b = ExperimentConfig::parse_string(m);
    EXPECT_EQ(b.manifest(), m);
    EXPECT_DOUBLE_EQ(b.kinetics.a2, 2.1);
    EXPECT_EQ(b.interface.points, (std::vector<double>{-0.5, 0.25}));
    EXPECT_EQ(b.coeff.h_expr, "1 + 0.1*x");
    EXPECT_EQ(b.seed, 42u);
    // Unset C survives as a comment.
    const std::string d = ExperimentConfig::parse_string("").manifest();
    EXPECT_NE(d.find("; interface.C = unset"), std::string::npos);
    EXPECT_FALSE(ExperimentConfig::parse_string(d).interface.C.has_value());
}

TEST(Config, ManifestPrintsShortestRoundTripNumbers) {
    const ExperimentConfig c = ExperimentConfig::parse_string("[solver]\nt_end = 0.1\n");
    EXPECT_NE(c.manifest().find("t_end = 0.1\n"), std::string::npos);
}
