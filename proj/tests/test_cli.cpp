#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path& scratch() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("lvfront_cli_test_" + std::to_string(::getpid()));
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args) {
    const std::string cmd = std::string(LVFRONT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path write_config(const std::string& name, const std::string& text) {
    const fs::path p = scratch() / name;
    std::ofstream(p) << text;
    return p;
}

const char* small_wave = "[wave]\nL = 30\nn = 600\nspeed_horizon = 5\n";

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

}  // namespace

TEST(Cli, WaveOutputIsDeterministic) {
    const fs::path cfg = write_config("wave.ini", small_wave);
    const fs::path a = scratch() / "wave_a", b = scratch() / "wave_b";
    ASSERT_EQ(run("wave --config " + cfg.string() + " --out " + a.string()), 0);
    ASSERT_EQ(run("wave --config " + cfg.string() + " --out " + b.string()), 0);
    for (const char* f : {"wave.csv", "speed.json", "manifest.ini"}) {
        ASSERT_TRUE(fs::exists(a / f)) << f;
        EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
    }
    const std::string csv = slurp(a / "wave.csv");
    EXPECT_EQ(csv.rfind("z,phi,psi\n", 0), 0u);
    EXPECT_EQ(count_lines(csv), 602u);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("--help"), 0);
    EXPECT_EQ(run("no_such_command"), 2);
    EXPECT_EQ(run("wave --workers 0"), 2);
    const fs::path bad = write_config("bad.ini", "[grid]\nspacing = 1\n");
    EXPECT_EQ(run("wave --config " + bad.string() + " --out " + (scratch() / "bad").string()), 2);
    const fs::path het = write_config("het.ini", "[coeff]\nk_expr = 1 + x\n");
    EXPECT_EQ(run("converge --config " + het.string() + " --out " + (scratch() / "het").string()), 2);
    EXPECT_EQ(run("wave --config /nonexistent.ini"), 2);
}

TEST(Cli, SeparatrixWritesMonotoneCurve) {
    const fs::path out = scratch() / "sep";
    ASSERT_EQ(run("separatrix --out " + out.string()), 0);
    std::istringstream in(slurp(out / "separatrix.csv"));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "u,zeta");
    double pu = -1.0, pz = -1.0;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        double u = 0.0, z = 0.0;
        ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf", &u, &z), 2);
        EXPECT_GT(u, pu);
        EXPECT_GT(z, pz);
        pu = u;
        pz = z;
        ++rows;
    }
    EXPECT_GT(rows, 10u);
}

TEST(Cli, ConvergeSingleEpsilonGivesOneRow) {
    const fs::path cfg = write_config("one.ini", std::string(small_wave) +
                                                     "[metrics]\neps_list = 0.1\nt0_factor = 1\nprobes = 3\n"
                                                     "[solver]\nt_end = 0.03\n");
    const fs::path out = scratch() / "one";
    ASSERT_EQ(run("converge --config " + cfg.string() + " --out " + out.string()), 0);
    const std::string csv = slurp(out / "report.csv");
    EXPECT_EQ(count_lines(csv), 2u);
    EXPECT_NE(slurp(out / "rates.json").find("hausdorff_fit"), std::string::npos);
}

TEST(Cli, ConvergeIsIndependentOfWorkerCount) {
    const fs::path cfg = write_config("two.ini", std::string(small_wave) +
                                                     "[metrics]\neps_list = 0.1, 0.07\nt0_factor = 1\nprobes = 3\n"
                                                     "[solver]\nt_end = 0.03\n");
    const fs::path a = scratch() / "w1", b = scratch() / "w2";
    ASSERT_EQ(run("converge --config " + cfg.string() + " --out " + a.string() + " --workers 1"), 0);
    ASSERT_EQ(run("converge --config " + cfg.string() + " --out " + b.string() + " --workers 2"), 0);
    EXPECT_EQ(slurp(a / "report.csv"), slurp(b / "report.csv"));
    EXPECT_EQ(slurp(a / "rates.json"), slurp(b / "rates.json"));
}

TEST(Cli, EmptyWindowIsReportedAsNumericalFailure) {
    const fs::path cfg = write_config("empty.ini", std::string(small_wave) + "[metrics]\neps_list = 0.1\n[solver]\nt_end = 0.04\n");
    const fs::path out = scratch() / "empty";
    EXPECT_EQ(run("converge --config " + cfg.string() + " --out " + out.string()), 3);
    EXPECT_NE(slurp(out / "rates.json").find("EmptyWindow"), std::string::npos);
}

TEST(Cli, LiouvilleWithoutSeeds) {
    const fs::path cfg = write_config("liou.ini", std::string(small_wave) + "[liouville]\nseeds = 0\ncomparison_pairs = 2\n");
    const fs::path out = scratch() / "liou";
    EXPECT_EQ(run("liouville --config " + cfg.string() + " --out " + out.string()), 0);
    EXPECT_TRUE(fs::exists(out / "summary.json"));
    EXPECT_TRUE(fs::exists(out / "manifest.ini"));
}

TEST(Cli, SeedOverrideLandsInManifest) {
    const fs::path out = scratch() / "seeded";
    const fs::path cfg = write_config("seed.ini", std::string(small_wave) + "[liouville]\nseeds = 1\ncomparison_pairs = 0\n");
    ASSERT_EQ(run("liouville --config " + cfg.string() + " --seed 1234 --out " + out.string()), 0);
    EXPECT_NE(slurp(out / "manifest.ini").find("seed = 1234"), std::string::npos);
    EXPECT_TRUE(fs::exists(out / "residual_000.csv"));
}

TEST(Cli, NonzeroSpeedReportedWithoutStandingWave) {
    const fs::path cfg = write_config("asym.ini", "[wave]\nspeed_horizon = 10\n[kinetics]\na2 = 1.5\n");
    const fs::path out = scratch() / "asym";
    EXPECT_EQ(run("wave --config " + cfg.string() + " --out " + out.string()), 3);
    const std::string j = slurp(out / "speed.json");
    EXPECT_NE(j.find("NewtonStall"), std::string::npos);
    double speed = 0.0;
    const auto at = j.find("\"speed\": ");
    ASSERT_NE(at, std::string::npos);
    speed = std::stod(j.substr(at + 9));
    EXPECT_GT(std::abs(speed), 1e-3);
    EXPECT_FALSE(fs::exists(out / "wave.csv"));
}
