#include "experiments.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <randsor/generators.hpp>
#include <randsor/matrix_io.hpp>
#include <randsor/rng.hpp>
#include <randsor/superop.hpp>

namespace randsor::cli {

namespace fs = std::filesystem;

LinearSystem build_system(const SystemOptions& opt) {
  if (!opt.matrix_path.empty()) {
    if (opt.method.empty())
      throw std::invalid_argument("--method is required with --matrix");
    const Method method = method_from_string(opt.method);
    Eigen::MatrixXd a = read_matrix(opt.matrix_path);
    std::mt19937_64 rng(opt.seed);
    Eigen::VectorXd xs(a.cols());
    for (Eigen::Index i = 0; i < xs.size(); ++i) xs(i) = standard_normal(rng);
    return LinearSystem::from_solution(std::move(a), std::move(xs), method);
  }

  if (opt.gen == "hilbert") {
    if (opt.n < 2) throw std::invalid_argument("--gen hilbert needs --n >= 2");
    LinearSystem sys = make_hilbert(opt.n, opt.seed);
    if (!opt.method.empty() &&
        method_from_string(opt.method) == Method::kaczmarz) {
      return LinearSystem::from_solution(sys.a, *sys.x_star, Method::kaczmarz);
    }
    return sys;
  }
  if (opt.gen == "parter") {
    if (opt.n < 2) throw std::invalid_argument("--gen parter needs --n >= 2");
    if (!opt.method.empty() &&
        method_from_string(opt.method) == Method::gauss_seidel)
      throw std::invalid_argument("the Parter matrix is not symmetric; use kaczmarz");
    return make_parter(opt.n, opt.seed);
  }
  if (opt.gen == "random") {
    if (opt.n < 1) throw std::invalid_argument("--gen random needs --n");
    if (opt.kappa < 1.0) throw std::invalid_argument("--gen random needs --kappa >= 1");
    if (!opt.method.empty() &&
        method_from_string(opt.method) == Method::gauss_seidel) {
      if (opt.m && opt.m != opt.n)
        throw std::invalid_argument("gauss-seidel random systems are square");
      return make_random_spd(opt.n, opt.kappa, opt.seed);
    }
    const int m = opt.m > 0 ? opt.m : opt.n;
    return make_random(m, opt.n, opt.kappa, opt.seed);
  }
  if (opt.gen.empty())
    throw std::invalid_argument("either --gen or --matrix is required");
  throw std::invalid_argument("unknown generator '" + opt.gen +
                              "' (expected hilbert, parter or random)");
}

ProjectorEnsemble build_ensemble(const NormalizedSystem& ns, int block_size) {
  if (block_size <= 1) return ensemble_from_system(ns);
  std::vector<std::vector<Eigen::Index>> blocks;
  for (Eigen::Index start = 0; start < ns.rows(); start += block_size) {
    std::vector<Eigen::Index> block;
    for (Eigen::Index i = start; i < std::min<Eigen::Index>(start + block_size, ns.rows());
         ++i)
      block.push_back(i);
    blocks.push_back(std::move(block));
  }
  return ensemble_blocks(ns, blocks);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const Metadata& meta,
                     const std::vector<std::string>& header)
    : out_(path), columns_(header.size()), path_(path) {
  if (!out_) throw std::invalid_argument("cannot open '" + path + "' for writing");
  for (const auto& [key, value] : meta) out_ << "# " << key << "=" << value << '\n';
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out_ << ',';
    out_ << header[i];
  }
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_)
    throw std::logic_error("column count mismatch writing " + path_);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ',';
    out_ << format_double(values[i]);
  }
  out_ << '\n';
}

void CsvWriter::raw_row(const std::string& line) { out_ << line << '\n'; }

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw std::invalid_argument("cannot create output directory '" + dir +
                                "': " + ec.message());
}

std::vector<double> rho_curve(const ProjectorEnsemble& ens,
                              const std::vector<double>& grid, int threads) {
  const SuperOp b_op = build_b(ens);
  const SuperOp c_op = build_c(ens);
  std::vector<double> out(grid.size());
  const int workers = std::max(1, threads);
  if (workers == 1 || grid.size() < 2) {
    for (std::size_t i = 0; i < grid.size(); ++i)
      out[i] = rho_value(b_op, c_op, grid[i]);
    return out;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = static_cast<std::size_t>(w); i < grid.size();
           i += static_cast<std::size_t>(workers))
        out[i] = rho_value(b_op, c_op, grid[i]);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

std::vector<double> parse_grid(const std::string& spec) {
  const auto first = spec.find(':');
  const auto second = spec.find(':', first + 1);
  if (first == std::string::npos || second == std::string::npos)
    throw std::invalid_argument("grid spec must be start:stop:count, got '" + spec + "'");
  double start = 0.0, stop = 0.0;
  int count = 0;
  try {
    start = std::stod(spec.substr(0, first));
    stop = std::stod(spec.substr(first + 1, second - first - 1));
    count = std::stoi(spec.substr(second + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse grid spec '" + spec + "'");
  }
  return omega_grid(start, stop, count);
}

}  // namespace randsor::cli
