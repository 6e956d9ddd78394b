#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "pinear/types.hpp"

namespace pinear::cli {

using Json = nlohmann::json;

/// Schema or syntax problem in a matrix or report document. The message
/// names the offending field.
class FormatError : public InputError {
 public:
  using InputError::InputError;
};

/// Matrix file layout:
///
///   { "n": 2, "data": [ [[1.0, 0.0], [0.0, 0.0]],
///                       [[0.0, 0.0], [0.5, 0.0]] ] }
///
/// `data` holds n rows of n [re, im] pairs. A flat row-major list of n*n
/// pairs is accepted on input as well.
Json matrixToJson(const ComplexMatrix& m);
ComplexMatrix matrixFromJson(const Json& j, const std::string& field = "matrix");

Json vectorToJson(const ComplexVector& v);
ComplexVector vectorFromJson(const Json& j, const std::string& field = "vector");

ComplexMatrix parseMatrixText(const std::string& text);
ComplexMatrix readMatrixFile(const std::filesystem::path& path);
void writeMatrixFile(const std::filesystem::path& path, const ComplexMatrix& m);

/// FNV-1a 64-bit digest of the canonical matrix document, as "fnv1a64:<hex>".
std::string matrixDigest(const ComplexMatrix& m);

}  // namespace pinear::cli
