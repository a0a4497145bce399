#include "polytree/matrix_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <cerrno>
#include <vector>

#include "polytree/errors.hpp"

namespace polytree {
namespace {

void append_double(std::string& out, double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

double parse_field(std::string_view field, std::size_t line) {
  const auto first = field.find_first_not_of(" \t\r");
  const auto last = field.find_last_not_of(" \t\r");
  if (first == std::string_view::npos) throw ParseError("line " + std::to_string(line) + ": empty field");
  // strtod handles the full range of textual float forms.
  const std::string s(field.substr(first, last - first + 1));
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE)
    throw ParseError("line " + std::to_string(line) + ": not a number: '" + s + "'");
  return v;
}

}  // namespace

DataMatrix parse_data_csv(std::string_view text) {
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      values.push_back(parse_field(line.substr(start, comma - start), line_no));
      ++count;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (rows == 0)
      cols = count;
    else if (count != cols)
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(cols) + " fields");
    ++rows;
  }
  if (rows == 0) throw ParseError("data file has no rows");

  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = values[r * cols + c];
  return DataMatrix(std::move(m));
}

std::string format_data_csv(const DataMatrix& data) {
  std::string out;
  const Eigen::MatrixXd& m = data.values();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out += ',';
      append_double(out, m(r, c));
    }
    out += '\n';
  }
  return out;
}

std::string format_precision(const PrecisionMatrix& theta, PrecisionLayout layout) {
  std::string out;
  const Eigen::MatrixXd& m = theta.values();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (layout == PrecisionLayout::dense) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (j > 0) out += ',';
        append_double(out, m(i, j));
      }
      out += '\n';
      continue;
    }
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) == 0.0) continue;
      out += std::to_string(i) + ',' + std::to_string(j) + ',';
      append_double(out, m(i, j));
      out += '\n';
    }
  }
  return out;
}

}  // namespace polytree
