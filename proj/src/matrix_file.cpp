#include "absnorm/matrix_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace absnorm {

using nlohmann::json;

const ComplexMatrix& MatrixFile::at(const std::string& name) const {
  const auto it = matrices.find(name);
  if (it == matrices.end()) throw MatrixFileError("matrix file has no matrix named '" + name + "'");
  return it->second;
}

namespace {

double finite_number(const json& v, const std::string& where) {
  if (!v.is_number()) throw MatrixFileError(where + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw MatrixFileError(where + ": entry is not finite");
  return d;
}

ComplexMatrix parse_matrix(const json& rows, std::size_t n, const std::string& name) {
  if (!rows.is_array() || rows.size() != n) {
    throw MatrixFileError("matrix '" + name + "': expected " + std::to_string(n) + " rows");
  }
  std::vector<Complex> entries;
  entries.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.size() != n) {
      throw MatrixFileError("matrix '" + name + "': row " + std::to_string(i) + " must have " +
                            std::to_string(n) + " entries (matrices are square)");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const std::string where =
          "matrix '" + name + "' entry (" + std::to_string(i) + ", " + std::to_string(j) + ")";
      const json& z = row[j];
      if (!z.is_array() || z.size() != 2) throw MatrixFileError(where + ": expected an [re, im] pair");
      entries.emplace_back(finite_number(z[0], where), finite_number(z[1], where));
    }
  }
  return ComplexMatrix(n, std::move(entries));
}

}  // namespace

MatrixFile parse_matrix_file(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MatrixFileError(std::string("malformed matrix file: ") + e.what());
  }
  if (!doc.is_object()) throw MatrixFileError("matrix file must be a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) {
    throw MatrixFileError("matrix file needs a positive integer 'n'");
  }
  MatrixFile file;
  file.n = doc["n"].get<std::size_t>();
  if (doc.contains("t")) {
    const double t = finite_number(doc["t"], "'t'");
    if (!(t > 0.0)) throw MatrixFileError("'t' must be positive");
    file.t = t;
  }
  if (!doc.contains("matrices") || !doc["matrices"].is_object() || doc["matrices"].empty()) {
    throw MatrixFileError("matrix file needs a non-empty 'matrices' object");
  }
  for (const auto& [name, rows] : doc["matrices"].items()) {
    file.matrices.emplace(name, parse_matrix(rows, file.n, name));
  }
  return file;
}

MatrixFile load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MatrixFileError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_matrix_file(buffer.str());
}

std::string to_text(const MatrixFile& file) {
  json doc;
  doc["n"] = file.n;
  if (file.t) doc["t"] = *file.t;
  json matrices = json::object();
  for (const auto& [name, m] : file.matrices) {
    if (m.order() != file.n) throw MatrixFileError("matrix '" + name + "' does not have order n");
    json rows = json::array();
    for (std::size_t i = 0; i < m.order(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < m.order(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
      rows.push_back(std::move(row));
    }
    matrices[name] = std::move(rows);
  }
  doc["matrices"] = std::move(matrices);
  return doc.dump(2) + "\n";
}

void save_matrix_file(const MatrixFile& file, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw MatrixFileError("cannot write '" + path + "'");
  out << to_text(file);
  if (!out) throw MatrixFileError("failed writing '" + path + "'");
}

}  // namespace absnorm
