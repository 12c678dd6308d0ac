#ifndef BSOC_CSV_HPP
#define BSOC_CSV_HPP

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <vector>

// Minimal CSV plumbing for the plain-text artifacts.  Numbers are written with
// 17 significant digits so a write/read cycle is exact.
namespace bsoc::csv {

std::string format(double v);
double parse_double(const std::string& s);

/// Splits comma-separated lines; skips blank lines and lines starting with '#'.
std::vector<std::vector<std::string>> read_rows(std::istream& is);

/// `# key=value` provenance line.
void write_comment(std::ostream& os, const std::string& text);

/// Matrix without header, one row per line.
void write_matrix(std::ostream& os, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix(std::istream& is);

void write_matrix_file(const std::string& path, const Eigen::MatrixXd& m,
                       const std::string& comment = {});
Eigen::MatrixXd read_matrix_file(const std::string& path);

}  // namespace bsoc::csv

#endif  // BSOC_CSV_HPP
