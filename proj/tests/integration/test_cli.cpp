#include "cosinor/io.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;
using namespace cosinor;

namespace {

const fs::path kData = COSINOR_TEST_DATA_DIR;
const fs::path kRepoData = COSINOR_REPO_DATA_DIR;

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / ("cosinor_cli_" + std::to_string(::getpid()) + "_" + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    // Runs the tool with stdout/stderr captured to files; returns exit status.
    int run(const std::string& args, const std::string& env = {}) {
        const std::string cmd = env + (env.empty() ? "" : " ") + "'" + std::string(COSINOR_CLI_PATH) + "' " + args +
                                " > '" + (dir_ / "stdout.txt").string() + "' 2> '" + (dir_ / "stderr.txt").string() +
                                "'";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    static std::string slurp(const fs::path& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    std::string err() const { return slurp(dir_ / "stderr.txt"); }
    std::string out() const { return slurp(dir_ / "stdout.txt"); }

    fs::path dir_;
};

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

}  // namespace

TEST_F(CliTest, HelpAndUsageErrors) {
    EXPECT_EQ(run("--help"), 0);
    EXPECT_EQ(run(""), 1);
    EXPECT_EQ(run("fit"), 1);
    EXPECT_EQ(run("simulate --scenario 9"), 1);
    EXPECT_EQ(run("simulate --no-such-flag"), 1);
}

TEST_F(CliTest, DataErrorsExitTwoWithOneLine) {
    EXPECT_EQ(run("--out-dir " + q(dir_) + " fit " + q(kData / "ragged.csv")), 2);
    const auto e = err();
    EXPECT_NE(e.find("ragged.csv:5:"), std::string::npos) << e;
    EXPECT_EQ(std::count(e.begin(), e.end(), '\n'), 1);
    EXPECT_EQ(run("--out-dir " + q(dir_) + " kappa " + q(kData / "dlmo_header_only.csv")), 2);
}

TEST_F(CliTest, SimulateIsDeterministic) {
    const auto a = dir_ / "a", b = dir_ / "b";
    ASSERT_EQ(run("--out-dir " + q(a) + " simulate --scenario 1 --n 100 --trials 10 --seed 7"), 0);
    ASSERT_EQ(run("--out-dir " + q(b) + " --threads 3 simulate --scenario 1 --n 100 --trials 10 --seed 7"), 0);
    for (const char* name : {"simulate_s1_n100_trials.csv", "simulate_s1_n100_summary.csv"}) {
        const auto x = slurp(a / name);
        EXPECT_FALSE(x.empty());
        EXPECT_EQ(x, slurp(b / name)) << name;
    }
    // one header plus two framework rows per trial
    const auto trials = slurp(a / "simulate_s1_n100_trials.csv");
    EXPECT_EQ(std::count(trials.begin(), trials.end(), '\n'), 21);
}

TEST_F(CliTest, SimulateSweepAndConfig) {
    ASSERT_EQ(run("--out-dir " + q(dir_) + " simulate --scenario 2 --n 100 --trials 5 --sweep 0..3"), 0);
    const auto sweep = slurp(dir_ / "simulate_s2_n100_sweep.csv");
    EXPECT_EQ(std::count(sweep.begin(), sweep.end(), '\n'), 1 + 4 * 5);
    EXPECT_TRUE(fs::exists(dir_ / "simulate_s2_n100_sweep_summary.csv"));

    std::ofstream(dir_ / "scenario.ini") << "[scenario]\npreset = 5\nn = 60\ntrials = 3\nseed = 4\n";
    ASSERT_EQ(run("--out-dir " + q(dir_) + " simulate --scenario-config " + q(dir_ / "scenario.ini")), 0) << err();
    EXPECT_TRUE(fs::exists(dir_ / "simulate_s5_n60_summary.csv"));
}

TEST_F(CliTest, ConfigFileAndEnvironment) {
    std::ofstream(dir_ / "run.ini") << "[simulate]\nscenario = 3\nn = 50\ntrials = 2\nseed = 11\n";
    ASSERT_EQ(run("--config " + q(dir_ / "run.ini") + " simulate", "COSINOR_OUTPUT_DIR=" + q(dir_ / "env")), 0)
        << err();
    EXPECT_TRUE(fs::exists(dir_ / "env" / "simulate_s3_n50_trials.csv"));
}

TEST_F(CliTest, KappaFromDlmoFileRoundTrips) {
    ASSERT_EQ(run("--out-dir " + q(dir_) + " kappa " + q(kData / "dlmo_valid.csv") + " --max-order 6"), 0) << err();
    const auto rows = io::load_kappa_table(dir_ / "kappa.csv");
    ASSERT_EQ(rows.size(), 1u);
    const auto expected = kappa_from_dlmo_hours(io::load_dlmo_csv(kData / "dlmo_valid.csv"), 6, false);
    EXPECT_EQ(rows[0].source_label, "dlmo_valid");
    EXPECT_EQ(rows[0].sample_size, 4u);
    EXPECT_EQ(rows[0].values, expected.values);
}

TEST_F(CliTest, KappaConservativeMinimumOverPublishedTable) {
    ASSERT_EQ(run("--out-dir " + q(dir_) + " kappa " + q(kRepoData / "published_kappa.csv") + " --conservative-min"),
              0)
        << err();
    const auto rows = io::load_kappa_table(dir_ / "kappa.csv");
    ASSERT_EQ(rows.size(), 15u);
    const auto& best = rows.back();
    EXPECT_EQ(best[1], 1.841e-1);
    EXPECT_EQ(best[2], -2.335e-2);
    EXPECT_EQ(best[8], 1.434e-6);
    EXPECT_NE(out().find("1.841e-01"), std::string::npos);
}

TEST_F(CliTest, FitWithZeroKappaEqualsNaive) {
    std::ofstream(dir_ / "zero.csv") << "study,n,kappa_1,kappa_2,kappa_3\nzero,0,0,0,0\n";
    const auto expr = q(kData / "toy_expression_no_ict.csv");
    ASSERT_EQ(run("--out-dir " + q(dir_) + " fit " + expr + " -o naive.csv"), 0) << err();
    ASSERT_EQ(run("--out-dir " + q(dir_) + " fit " + expr + " --kappa " + q(dir_ / "zero.csv") + " -o zero_fit.csv"),
              0)
        << err();
    const auto a = io::load_fit_table(dir_ / "naive.csv");
    const auto b = io::load_fit_table(dir_ / "zero_fit.csv");
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        ASSERT_TRUE(a[i].ok && b[i].ok);
        EXPECT_EQ(b[i].framework, Framework::corrected);
        EXPECT_NEAR(a[i].params.theta0, b[i].params.theta0, 1e-14);
        EXPECT_NEAR(a[i].params.theta1, b[i].params.theta1, 1e-14);
        EXPECT_NEAR(a[i].params.theta2, b[i].params.theta2, 1e-14);
    }
}

TEST_F(CliTest, FitFailuresAreStatusRows) {
    // every sample at the same clock time: the design is singular for each gene
    std::ofstream(dir_ / "expr.csv") << "gene_id,S1,S2,S3,S4\nzt_hours,6,6,6,6\nict_hours,,,,\nG1,1,2,3,4\nG2,1,1,1,1\n";
    ASSERT_EQ(run("--out-dir " + q(dir_) + " fit " + q(dir_ / "expr.csv")), 0) << err();
    const auto rows = io::load_fit_table(dir_ / "fit_zt_naive.csv");
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_FALSE(rows[0].ok);
    EXPECT_EQ(rows[0].message, "degenerate design");
}

TEST_F(CliTest, TestCommandAndIctFilter) {
    ASSERT_EQ(run("--out-dir " + q(dir_) + " test " + q(kData / "toy_expression_no_ict.csv") + " --time ict"), 0)
        << err();
    const auto text = slurp(dir_ / "test_ict_naive.csv");
    EXPECT_NE(text.find("GeneA,ok,naive,3,0,"), std::string::npos) << text;
}

TEST_F(CliTest, AssessSelfIsExact) {
    const auto expr = q(kData / "toy_expression.csv");
    ASSERT_EQ(run("--out-dir " + q(dir_) + " fit " + expr + " --time ict -o ict.csv"), 0) << err();
    ASSERT_EQ(run("--out-dir " + q(dir_) + " assess " + q(dir_ / "ict.csv") + " " + q(dir_ / "ict.csv")), 0) << err();
    const auto text = slurp(dir_ / "assess.csv");
    EXPECT_NE(text.find("naive,theta0,1,1,3,0"), std::string::npos) << text;

    ASSERT_EQ(run("--out-dir " + q(dir_) + " assess " + q(dir_ / "ict.csv") + " " + q(dir_ / "ict.csv") +
                  " --genes " + q(kData / "genes.txt") + " -o subset.csv"),
              0)
        << err();
    EXPECT_NE(slurp(dir_ / "subset.csv").find(",2,0\n"), std::string::npos);
}

TEST_F(CliTest, AssessMisalignedGenesIsDataError) {
    std::ofstream(dir_ / "expr2.csv") << "gene_id,S1,S2,S3,S4\nzt_hours,0,6,12,18\nict_hours,1,7,13,19\n"
                                         "GeneB,1.5,1.0,0.5,1.0\nGeneA,5.0,6.0,5.0,4.0\nGeneC,10,11,10,10\n";
    ASSERT_EQ(run("--out-dir " + q(dir_) + " fit " + q(kData / "toy_expression.csv") + " -o a.csv"), 0);
    ASSERT_EQ(run("--out-dir " + q(dir_) + " fit " + q(dir_ / "expr2.csv") + " --time ict -o b.csv"), 0);
    EXPECT_EQ(run("--out-dir " + q(dir_) + " assess " + q(dir_ / "a.csv") + " " + q(dir_ / "b.csv")), 2);
}
