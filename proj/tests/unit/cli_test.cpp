#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "compkern/datio.hpp"
#include "compkern/simgen.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace compkern;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("compkern_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name, std::ios::binary) << text;
  }

  // Noiseless log-contrast responses on i.i.d. lognormal compositions.
  std::string log_contrast_data(std::size_t n, std::uint64_t seed) const {
    const auto xs = gen_lognormal_iid(n, seed, 3);
    Eigen::Vector3d beta(2.0, -1.0, -1.0);
    SimData sim;
    sim.x = xs;
    sim.y.resize(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) sim.y[static_cast<Eigen::Index>(i)] = oracle::log_contrast(beta, xs[i]);
    const std::string p = path("lc.csv");
    save_dataset_csv(p, to_dataset(sim));
    return p;
  }

  // Reads a two-column CSV with a header into (key, value) rows.
  static std::vector<std::pair<std::string, double>> read_pairs(const std::string& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    std::vector<std::pair<std::string, double>> rows;
    while (std::getline(in, line)) {
      const auto comma = line.rfind(',');
      rows.emplace_back(line.substr(0, comma), std::stod(line.substr(comma + 1)));
    }
    return rows;
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

}  // namespace

TEST_F(CliTest, SimulateIsReproducible) {
  ASSERT_EQ(run({"simulate", "--n", "100", "--seed", "7", "--out", path("a")}), 0) << err_.str();
  ASSERT_EQ(run({"simulate", "--n", "100", "--seed", "7", "--out", path("b")}), 0) << err_.str();
  const std::string a = slurp(path("a/simulated.csv"));
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, slurp(path("b/simulated.csv")));
  ASSERT_EQ(run({"simulate", "--n", "100", "--seed", "8", "--out", path("c")}), 0);
  EXPECT_NE(a, slurp(path("c/simulated.csv")));
}

TEST_F(CliTest, SimulateRequiresSeed) {
  EXPECT_EQ(run({"simulate", "--n", "10", "--out", path("x")}), cli::kExitUsage);
}

TEST_F(CliTest, SelectIsDeterministicAndPrefersAitchison) {
  const std::string data = log_contrast_data(60, 3);
  const std::vector<std::string> base = {"select", "--data", data, "--label", "y", "--seed", "5",
                                         "--families", "linear", "aitchison"};
  auto args = base;
  args.insert(args.end(), {"--out", path("r1")});
  ASSERT_EQ(run(args), 0) << err_.str();
  args = base;
  args.insert(args.end(), {"--out", path("r2"), "--threads", "1"});
  ASSERT_EQ(run(args), 0) << err_.str();
  const std::string report = slurp(path("r1/selection_report.csv"));
  EXPECT_EQ(report, slurp(path("r2/selection_report.csv")));
  EXPECT_EQ(slurp(path("r1/model.json")), slurp(path("r2/model.json")));
  const auto last = report.substr(report.rfind('\n', report.size() - 2) + 1);
  EXPECT_NE(last.find("aitchison"), std::string::npos) << last;
  EXPECT_NE(last.find(",final,"), std::string::npos) << last;
}

TEST_F(CliTest, MissingLabelColumnIsUsageError) {
  const std::string data = log_contrast_data(20, 1);
  EXPECT_EQ(run({"select", "--data", data, "--label", "nope", "--seed", "1", "--out", path("o")}),
            cli::kExitUsage);
  EXPECT_NE(err_.str().find("nope"), std::string::npos);
}

TEST_F(CliTest, UnknownOptionIsUsageError) {
  EXPECT_EQ(run({"simulate", "--bogus", "1"}), cli::kExitUsage);
  EXPECT_EQ(run({}), cli::kExitUsage);
}

TEST_F(CliTest, InterpretRecoversLogContrast) {
  const std::string data = log_contrast_data(100, 4);
  ASSERT_EQ(run({"fit", "--data", data, "--label", "y", "--kernel", "aitchison", "--c", "1e-12",
                 "--lambda", "1e-4", "--out", path("m")}),
            0)
      << err_.str();
  ASSERT_EQ(run({"interpret", "--model", path("m/model.json"), "--data", data, "--label", "y",
                 "--out", path("i")}),
            0)
      << err_.str();
  const auto rows = read_pairs(path("i/cfi.csv"));
  ASSERT_EQ(rows.size(), 4u);
  // The intercept is fixed at mean(y), which the clr span cannot absorb, so
  // the fit is close to but not exactly the log-contrast.
  EXPECT_NEAR(rows[0].second, 2.0, 0.1);
  EXPECT_NEAR(rows[1].second, -1.0, 0.1);
  EXPECT_NEAR(rows[2].second, -1.0, 0.1);
  EXPECT_EQ(rows[3].first, "sum");
  EXPECT_LT(std::abs(rows[3].second), 1e-6);
  EXPECT_TRUE(fs::exists(path("i/cfi.svg")));
  EXPECT_TRUE(fs::exists(path("i/cpd.csv")));
}

TEST_F(CliTest, ConstantResponseGivesZeroInfluence) {
  std::string csv = "sample_id,a,b,c,y\n";
  for (int i = 0; i < 12; ++i) {
    csv += "s" + std::to_string(i) + "," + std::to_string(1 + i) + "," + std::to_string(3 + i % 4) +
           "," + std::to_string(2 + i % 3) + ",5\n";
  }
  write("const.csv", csv);
  ASSERT_EQ(run({"fit", "--data", path("const.csv"), "--label", "y", "--kernel", "rbf", "--lambda",
                 "0.1", "--out", path("m")}),
            0)
      << err_.str();
  ASSERT_EQ(run({"cfi", "--model", path("m/model.json"), "--data", path("const.csv"), "--label",
                 "y", "--out", path("c")}),
            0)
      << err_.str();
  for (const auto& [name, v] : read_pairs(path("c/cfi.csv"))) EXPECT_EQ(v, 0.0) << name;
}

TEST_F(CliTest, PredictWritesOneRowPerSample) {
  const std::string data = log_contrast_data(30, 2);
  ASSERT_EQ(run({"fit", "--data", data, "--label", "y", "--kernel", "linear", "--lambda", "0.01",
                 "--out", path("m")}),
            0);
  ASSERT_EQ(run({"predict", "--model", path("m/model.json"), "--data", data, "--label", "y",
                 "--out", path("p")}),
            0)
      << err_.str();
  const auto rows = read_pairs(path("p/predictions.csv"));
  EXPECT_EQ(rows.size(), 30u);
}

TEST_F(CliTest, LinearSummaryIsShiftedGiniSimpson) {
  write("d.csv", "sample_id,a,b,c\ns1,1,1,2\ns2,3,0,1\ns3,1,0,0\n");
  ASSERT_EQ(run({"summary", "--data", path("d.csv"), "--kernel", "linear", "--out", path("s")}), 0)
      << err_.str();
  const auto rows = read_pairs(path("s/summary.csv"));
  ASSERT_EQ(rows.size(), 3u);
  const std::vector<std::vector<double>> xs = {{.25, .25, .5}, {.75, 0, .25}, {1, 0, 0}};
  for (std::size_t i = 0; i < 3; ++i) {
    double sq = 0.0;
    for (double v : xs[i]) sq += v * v;
    EXPECT_NEAR(rows[i].second, (1.0 - sq) - 2.0 / 3.0, 1e-12) << rows[i].first;
  }
}

TEST_F(CliTest, MedoidAndKpcaRun) {
  const std::string labelled = log_contrast_data(25, 6);
  EXPECT_EQ(run({"medoid", "--data", labelled, "--label", "y", "--kernel", "aitchison", "--out",
                 path("m")}),
            cli::kExitData)
      << "continuous labels are not classes";
  ASSERT_EQ(run({"simulate", "--design", "lognormal", "--n", "25", "--seed", "6", "--out", path("d")}), 0);
  const std::string data = path("d/simulated.csv");
  ASSERT_EQ(run({"medoid", "--data", data, "--kernel", "aitchison", "--out", path("m")}), 0)
      << err_.str();
  EXPECT_NE(slurp(path("m/medoid.csv")).find("group,sample_id,index"), std::string::npos);
  ASSERT_EQ(run({"kpca", "--data", data, "--kernel", "rbf", "--components", "3", "--out",
                 path("k")}),
            0)
      << err_.str();
  const std::string emb = slurp(path("k/embedding.csv"));
  EXPECT_EQ(std::count(emb.begin(), emb.end(), '\n'), 26);
  EXPECT_TRUE(fs::exists(path("k/kpca.svg")));
}

TEST_F(CliTest, UnifracWeightsHaveUnitDiagonal) {
  write("t.nwk", "((A:1,B:1):1,C:2);");
  ASSERT_EQ(run({"unifrac-weights", "--tree", path("t.nwk"), "--out", path("w")}), 0) << err_.str();
  const auto w = WeightMatrix::read_csv(path("w/weights.csv"));
  ASSERT_EQ(w.size(), 3u);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(w(j, j), 1.0, 1e-12);
  EXPECT_EQ(slurp(path("w/leaves.csv")), "index,leaf\n0,A\n1,B\n2,C\n");
}

TEST_F(CliTest, ConfigFillsMissingFlagsOnly) {
  write("cfg.json", R"({"command": "simulate", "n": 15, "seed": 3, "design": "lognormal"})");
  ASSERT_EQ(run({"--config", path("cfg.json"), "--out", path("a")}), 0) << err_.str();
  ASSERT_EQ(run({"simulate", "--config", path("cfg.json"), "--n", "20", "--out", path("b")}), 0)
      << err_.str();
  ASSERT_EQ(run({"simulate", "--design", "lognormal", "--n", "15", "--seed", "3", "--out",
                 path("c")}),
            0);
  const std::string a = slurp(path("a/simulated.csv"));
  const std::string b = slurp(path("b/simulated.csv"));
  EXPECT_EQ(a, slurp(path("c/simulated.csv")));
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 16);
  EXPECT_EQ(std::count(b.begin(), b.end(), '\n'), 21);
}

TEST_F(CliTest, UnknownConfigKeyIsUsageError) {
  write("cfg.json", R"({"command": "simulate", "seed": 1, "colour": "red"})");
  EXPECT_EQ(run({"--config", path("cfg.json"), "--out", path("a")}), cli::kExitUsage);
  EXPECT_NE(err_.str().find("colour"), std::string::npos);
}

TEST_F(CliTest, DataAndNumericalExitCodes) {
  write("zero.csv", "sample_id,a,b\ns1,0,0\ns2,1,2\n");
  EXPECT_EQ(run({"summary", "--data", path("zero.csv"), "--kernel", "linear", "--out", path("o")}),
            cli::kExitData);
  write("same.csv", "sample_id,a,b\ns1,1,2\ns2,1,2\ns3,2,4\n");
  EXPECT_EQ(run({"summary", "--data", path("same.csv"), "--kernel", "rbf", "--out", path("o")}),
            cli::kExitNumerical);
}
