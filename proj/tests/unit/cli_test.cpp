#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "../support/paths.hpp"
#include "sfair/cli.hpp"

using sfair::testing::TempDir;
using sfair::testing::slurp;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult sfair_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "sfair");
    std::ostringstream out, err;
    const int code = sfair::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
    TempDir dir;
    std::string snapshot = (dir / "snap.bin").string();

    void SetUp() override {
        const auto r = sfair_cli({"ingest", "--data-dir", sfair::testing::golden_dir().string(), "--out",
                                  snapshot, "--corpus-size", "5"});
        ASSERT_EQ(r.code, 0) << r.err;
    }
    CliResult rank(std::vector<std::string> extra) {
        std::vector<std::string> a{"rank", "--snapshot", snapshot, "--origin", "munich", "--month", "7"};
        a.insert(a.end(), extra.begin(), extra.end());
        return sfair_cli(a);
    }
};

}  // namespace

TEST_F(Cli, GoldenCsvByteForByte) {
    const auto r = rank({"--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, slurp(sfair::testing::golden_expected()));
}

TEST_F(Cli, ReingestGivesSameDigest) {
    const auto second = (dir / "again.bin").string();
    const auto a = sfair_cli({"ingest", "--data-dir", sfair::testing::golden_dir().string(), "--out", second,
                              "--corpus-size", "5"});
    ASSERT_EQ(a.code, 0);
    const auto h1 = sfair_cli({"rank", "--snapshot", snapshot, "--origin", "munich", "--month", "7",
                               "--format", "json"});
    const auto h2 = sfair_cli({"rank", "--snapshot", second, "--origin", "munich", "--month", "7",
                               "--format", "json"});
    EXPECT_EQ(nlohmann::json::parse(h1.out)["snapshot"], nlohmann::json::parse(h2.out)["snapshot"]);
    EXPECT_EQ(h1.out, h2.out);
}

TEST_F(Cli, RankOptions) {
    auto r = rank({"--top", "1", "--format", "csv"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 2);
    r = rank({});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("Zurich"), std::string::npos);
    r = rank({"--sort", "sigma", "--format", "csv"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(r.out.find('\n') + 1, 8), "1,zurich");
}

TEST_F(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(sfair_cli({"rank", "--snapshot", snapshot, "--origin", "munich", "--month", "0"}).code, 2);
    EXPECT_EQ(sfair_cli({"rank", "--snapshot", snapshot, "--origin", "munich", "--month", "13"}).code, 2);
    EXPECT_EQ(rank({"--frobnicate"}).code, 2);
    EXPECT_EQ(rank({"--format", "xml"}).code, 2);
    EXPECT_EQ(sfair_cli({"launch"}).code, 2);
    EXPECT_EQ(sfair_cli({}).code, 2);
}

TEST_F(Cli, HelpEverywhere) {
    for (const char* sub : {"ingest", "rank", "indices", "weights", "serve"}) {
        const auto r = sfair_cli({sub, "--help"});
        EXPECT_EQ(r.code, 0) << sub;
        EXPECT_NE(r.out.find("Usage"), std::string::npos) << sub;
    }
    EXPECT_EQ(sfair_cli({"--help"}).code, 0);
}

TEST_F(Cli, ValidationFailuresExitOne) {
    TempDir broken;
    broken.with_golden();
    std::filesystem::remove(broken / "avc.csv");
    const auto r = sfair_cli({"ingest", "--data-dir", broken.path().string(), "--out", (dir / "x.bin").string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("avc.csv"), std::string::npos);
    EXPECT_FALSE(std::filesystem::exists(dir / "x.bin"));

    EXPECT_EQ(sfair_cli({"indices", "--snapshot", snapshot, "--city", "atlantis"}).code, 1);
    EXPECT_EQ(sfair_cli({"rank", "--snapshot", snapshot, "--origin", "atlantis", "--month", "3"}).code, 1);
    EXPECT_EQ(sfair_cli({"rank", "--snapshot", (dir / "none.bin").string(), "--origin", "munich", "--month", "3"}).code, 1);
}

TEST_F(Cli, DataDirFromEnvironment) {
    ::setenv("SFAIR_DATA_DIR", sfair::testing::golden_dir().c_str(), 1);
    const auto r = sfair_cli({"ingest", "--out", (dir / "env.bin").string(), "--corpus-size", "5"});
    ::unsetenv("SFAIR_DATA_DIR");
    EXPECT_EQ(r.code, 0) << r.err;
}

TEST_F(Cli, WeightsOverrideFile) {
    {
        std::ofstream f(dir / "w.json");
        f << R"({"composite":{"tradeoff":1,"popularity":0,"seasonality":0}})";
    }
    auto r = rank({"--weights", (dir / "w.json").string(), "--format", "csv"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.substr(r.out.find('\n') + 1, 8), "1,prague");
    {
        std::ofstream f(dir / "bad.json");
        f << R"({"composite":{"tradeoff":0.5,"popularity":0.5,"seasonality":0.5}})";
    }
    EXPECT_EQ(rank({"--weights", (dir / "bad.json").string()}).code, 1);
}

TEST_F(Cli, Indices) {
    auto r = sfair_cli({"indices", "--snapshot", snapshot, "--city", "munich", "--month", "9"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NEAR(nlohmann::json::parse(r.out)["seasonality"].get<double>(), 0.16015, 1e-5);
    r = sfair_cli({"indices", "--snapshot", snapshot, "--city", "munich"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out)["months"].size(), 12u);
}

TEST_F(Cli, WeightsFromSurvey) {
    {
        std::ofstream f(dir / "survey.csv");
        f << "respondent_id,tradeoff_travel_time,tradeoff_emissions,tradeoff_cost\n"
             "1,3,1,1\n2,1,1,1\n3,2,1,1\n";
    }
    const auto r = sfair_cli({"weights", "--survey", (dir / "survey.csv").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto w = nlohmann::json::parse(r.out);
    EXPECT_DOUBLE_EQ(w["tradeoff"]["travel_time"].get<double>(), 0.5);
    EXPECT_DOUBLE_EQ(w["tradeoff"]["emissions"].get<double>(), 0.25);
    EXPECT_NE(r.err.find("popularity"), std::string::npos);
    {
        std::ofstream f(dir / "bad.csv");
        f << "tradeoff_travel_time,tradeoff_emissions,tradeoff_cost\n9,1,1\n";
    }
    EXPECT_EQ(sfair_cli({"weights", "--survey", (dir / "bad.csv").string()}).code, 1);
}
