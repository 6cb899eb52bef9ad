#include "randsor/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace randsor {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ifstream open_for_read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  std::ifstream in = open_for_read(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      std::size_t pos = 0;
      double v;
      try {
        v = std::stod(cell, &pos);
      } catch (const std::exception&) {
        throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                    ": cannot parse '" + cell + "'");
      }
      row.push_back(v);
    }
    if (row.empty())
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": empty row");
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": ragged row (expected " +
                                  std::to_string(rows.front().size()) + " columns)");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument(path + ": no data rows");
  Eigen::MatrixXd a(rows.size(), rows.front().size());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      a(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return a;
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& a) {
  std::ofstream out = open_for_write(path);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (j) out << ',';
      out << format_double(a(i, j));
    }
    out << '\n';
  }
}

Eigen::MatrixXd read_matrix_market(const std::string& path) {
  std::ifstream in = open_for_read(path);
  std::string banner;
  if (!std::getline(in, banner) || banner.rfind("%%MatrixMarket", 0) != 0)
    throw std::invalid_argument(path + ": missing %%MatrixMarket banner");
  {
    std::stringstream ss(banner);
    std::string tag, object, fmt, field, symmetry;
    ss >> tag >> object >> fmt >> field >> symmetry;
    if (object != "matrix" || fmt != "array")
      throw std::invalid_argument(path + ": only dense 'matrix array' files are supported");
    if (field != "real")
      throw std::invalid_argument(path + ": only real-valued files are supported");
    if (symmetry != "general")
      throw std::invalid_argument(path + ": only 'general' symmetry is supported");
  }
  std::string line;
  Eigen::Index m = 0, n = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '%') continue;
    std::stringstream ss(line);
    if (!(ss >> m >> n) || m <= 0 || n <= 0)
      throw std::invalid_argument(path + ": bad size line '" + line + "'");
    break;
  }
  if (m == 0) throw std::invalid_argument(path + ": missing size line");
  Eigen::MatrixXd a(m, n);
  Eigen::Index count = 0;
  double v;
  while (in >> v) {
    if (count >= m * n) throw std::invalid_argument(path + ": too many values");
    a(count % m, count / m) = v;  // column-major per the format
    ++count;
  }
  if (count != m * n)
    throw std::invalid_argument(path + ": expected " + std::to_string(m * n) +
                                " values, got " + std::to_string(count));
  return a;
}

void write_matrix_market(const std::string& path, const Eigen::MatrixXd& a) {
  std::ofstream out = open_for_write(path);
  out << "%%MatrixMarket matrix array real general\n";
  out << a.rows() << ' ' << a.cols() << '\n';
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      out << format_double(a(i, j)) << '\n';
}

Eigen::MatrixXd read_matrix(const std::string& path) {
  {
    std::ifstream in = open_for_read(path);
    std::string first;
    std::getline(in, first);
    if (first.rfind("%%MatrixMarket", 0) == 0) return read_matrix_market(path);
  }
  return read_matrix_csv(path);
}

}  // namespace randsor
