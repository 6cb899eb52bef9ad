#pragma once

#include <Eigen/Dense>
#include <string>

namespace randsor {

/// Dense CSV: one matrix row per line, comma separated. Lines starting
/// with '#' are skipped.
Eigen::MatrixXd read_matrix_csv(const std::string& path);
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& a);

/// MatrixMarket dense "array" format (real, general, column-major values).
Eigen::MatrixXd read_matrix_market(const std::string& path);
void write_matrix_market(const std::string& path, const Eigen::MatrixXd& a);

/// Reads either format, sniffing the MatrixMarket banner on the first line.
Eigen::MatrixXd read_matrix(const std::string& path);

}  // namespace randsor
