#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <randsor/bounds.hpp>
#include <randsor/linear_system.hpp>
#include <randsor/projections.hpp>
#include <randsor/solver.hpp>

namespace randsor::cli {

/// Where a problem comes from: a named generator or a matrix file. The
/// method defaults from the generator (hilbert -> gauss-seidel, parter and
/// random -> kaczmarz) and is required for file ingestion.
struct SystemOptions {
  std::string gen;
  std::string matrix_path;
  std::string method;
  int n = 0;
  int m = 0;
  double kappa = 0.0;
  std::uint64_t seed = 0;
  int block_size = 0;  // 0: rank-1 row projectors
};

LinearSystem build_system(const SystemOptions& opt);
ProjectorEnsemble build_ensemble(const NormalizedSystem& ns, int block_size);

/// Key=value metadata emitted as '#'-prefixed lines before the CSV header;
/// kept free of timestamps so reruns are byte identical.
using Metadata = std::vector<std::pair<std::string, std::string>>;

std::string format_double(double v);

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const Metadata& meta,
            const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  void raw_row(const std::string& line);

 private:
  std::ofstream out_;
  std::size_t columns_;
  std::string path_;
};

void ensure_directory(const std::string& dir);

/// rho(omega) over a grid from prebuilt superoperators, fanned out over
/// threads (each point is an independent eigensolve).
std::vector<double> rho_curve(const ProjectorEnsemble& ens,
                              const std::vector<double>& grid, int threads);

/// Parses "a:b:count" into an inclusive omega grid.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace randsor::cli
