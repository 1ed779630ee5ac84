#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "absnorm/matrix.hpp"

namespace absnorm {

/// Named matrices of a common order, stored as JSON:
///
///   {
///     "n": 2,
///     "t": 0.41421356237309509,          (optional)
///     "matrices": {
///       "A": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]],
///       "B": ...
///     }
///   }
///
/// Each entry is an [re, im] pair of finite numbers. Doubles are written in
/// shortest round-trip form, so write → parse reproduces every bit.
struct MatrixFile {
  std::size_t n = 0;
  std::optional<double> t;
  std::map<std::string, ComplexMatrix> matrices;

  const ComplexMatrix& at(const std::string& name) const;
};

class MatrixFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

MatrixFile parse_matrix_file(const std::string& text);
MatrixFile load_matrix_file(const std::string& path);
std::string to_text(const MatrixFile& file);
void save_matrix_file(const MatrixFile& file, const std::string& path);

}  // namespace absnorm
