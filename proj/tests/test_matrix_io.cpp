#include <gtest/gtest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <randsor/generators.hpp>
#include <randsor/matrix_io.hpp>
#include <randsor/rng.hpp>

using namespace randsor;
namespace fs = std::filesystem;

namespace {

class MatrixIoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("randsor_io_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

Eigen::MatrixXd random_matrix(Eigen::Index m, Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd a(m, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < m; ++i) a(i, j) = standard_normal(rng);
  return a;
}

}  // namespace

TEST_F(MatrixIoTest, CsvRoundTripIsExact) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    Eigen::MatrixXd a = random_matrix(5, 3, seed);
    write_matrix_csv(path("a.csv"), a);
    Eigen::MatrixXd back = read_matrix_csv(path("a.csv"));
    EXPECT_EQ((a - back).cwiseAbs().maxCoeff(), 0.0) << "seed " << seed;
  }
}

TEST_F(MatrixIoTest, MatrixMarketRoundTripIsExact) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    Eigen::MatrixXd a = random_matrix(4, 6, seed);
    write_matrix_market(path("a.mtx"), a);
    Eigen::MatrixXd back = read_matrix_market(path("a.mtx"));
    EXPECT_EQ((a - back).cwiseAbs().maxCoeff(), 0.0) << "seed " << seed;
  }
}

TEST_F(MatrixIoTest, SniffsFormat) {
  Eigen::MatrixXd a = make_hilbert(3).a;
  write_matrix_market(path("h.mtx"), a);
  write_matrix_csv(path("h.csv"), a);
  EXPECT_EQ((read_matrix(path("h.mtx")) - a).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ((read_matrix(path("h.csv")) - a).cwiseAbs().maxCoeff(), 0.0);
}

TEST_F(MatrixIoTest, CsvSkipsComments) {
  std::ofstream out(path("c.csv"));
  out << "# generator=example\n1,2\n3,4\n";
  out.close();
  Eigen::MatrixXd a = read_matrix_csv(path("c.csv"));
  EXPECT_EQ(a(0, 1), 2.0);
  EXPECT_EQ(a(1, 0), 3.0);
}

TEST_F(MatrixIoTest, RejectsRaggedCsv) {
  std::ofstream out(path("r.csv"));
  out << "1,2\n3\n";
  out.close();
  EXPECT_THROW(read_matrix_csv(path("r.csv")), std::invalid_argument);
}

TEST_F(MatrixIoTest, RejectsCoordinateMatrixMarket) {
  std::ofstream out(path("coo.mtx"));
  out << "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n2 2 1.0\n";
  out.close();
  EXPECT_THROW(read_matrix_market(path("coo.mtx")), std::invalid_argument);
}

TEST_F(MatrixIoTest, RejectsTruncatedMatrixMarket) {
  std::ofstream out(path("t.mtx"));
  out << "%%MatrixMarket matrix array real general\n2 2\n1.0\n2.0\n3.0\n";
  out.close();
  EXPECT_THROW(read_matrix_market(path("t.mtx")), std::invalid_argument);
}

TEST_F(MatrixIoTest, MissingFile) {
  EXPECT_THROW(read_matrix(path("nope.csv")), std::invalid_argument);
}
