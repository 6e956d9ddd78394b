#include "pinear/cli/matrix_file.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pinear::cli {

namespace {

Scalar entryFromJson(const Json& pair, const std::string& field) {
  if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
    throw FormatError(field + ": expected a [re, im] pair of numbers");
  }
  const double re = pair[0].get<double>();
  const double im = pair[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw FormatError(field + ": entry is not finite");
  }
  return {re, im};
}

Json entryToJson(const Scalar& z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

Json matrixToJson(const ComplexMatrix& m) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(entryToJson(m(i, j)));
    data.push_back(std::move(row));
  }
  return {{"n", m.rows()}, {"data", std::move(data)}};
}

ComplexMatrix matrixFromJson(const Json& j, const std::string& field) {
  if (!j.is_object()) throw FormatError(field + ": expected an object with fields n and data");
  if (!j.contains("n")) throw FormatError(field + ".n: missing");
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) {
    throw FormatError(field + ".n: expected a positive integer");
  }
  if (!j.contains("data")) throw FormatError(field + ".data: missing");
  const Json& data = j["data"];
  if (!data.is_array()) throw FormatError(field + ".data: expected an array");

  const auto n = static_cast<Eigen::Index>(j["n"].get<long long>());
  ComplexMatrix m(n, n);
  const auto size = static_cast<Eigen::Index>(data.size());
  const bool flat = size == n * n && data[0].is_array() && data[0].size() == 2 &&
                    data[0][0].is_number();
  if (flat) {
    for (Eigen::Index k = 0; k < n * n; ++k) {
      m(k / n, k % n) =
          entryFromJson(data[static_cast<std::size_t>(k)], field + ".data[" + std::to_string(k) + "]");
    }
    return m;
  }
  if (size != n) {
    throw FormatError(field + ".data: expected " + std::to_string(n) + " rows, got " +
                      std::to_string(size));
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const Json& row = data[static_cast<std::size_t>(i)];
    const std::string rowField = field + ".data[" + std::to_string(i) + "]";
    if (!row.is_array()) throw FormatError(rowField + ": expected an array of [re, im] pairs");
    if (static_cast<Eigen::Index>(row.size()) != n) {
      throw FormatError(rowField + ": matrix is not square (row has " + std::to_string(row.size()) +
                        " entries, n = " + std::to_string(n) + ")");
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      m(i, k) = entryFromJson(row[static_cast<std::size_t>(k)],
                              rowField + "[" + std::to_string(k) + "]");
    }
  }
  return m;
}

Json vectorToJson(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(entryToJson(v(i)));
  return out;
}

ComplexVector vectorFromJson(const Json& j, const std::string& field) {
  if (!j.is_array()) throw FormatError(field + ": expected an array of [re, im] pairs");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = entryFromJson(j[i], field + "[" + std::to_string(i) + "]");
  }
  return v;
}

ComplexMatrix parseMatrixText(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string("matrix file: malformed JSON (") + e.what() + ")");
  }
  return matrixFromJson(j, "matrix file");
}

ComplexMatrix readMatrixFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read matrix file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parseMatrixText(buffer.str());
}

void writeMatrixFile(const std::filesystem::path& path, const ComplexMatrix& m) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write matrix file '" + path.string() + "'");
  out << matrixToJson(m).dump(2) << '\n';
}

std::string matrixDigest(const ComplexMatrix& m) {
  const std::string canonical = matrixToJson(m).dump();
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (const unsigned char c : canonical) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace pinear::cli
