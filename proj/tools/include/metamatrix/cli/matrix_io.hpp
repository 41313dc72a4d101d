#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "metamatrix/engine.hpp"
#include "metamatrix/exact.hpp"
#include "metamatrix/positivity.hpp"

namespace metamatrix::cli {

enum class OutputFormat { Json, Csv, Pretty };

OutputFormat parse_format(std::string_view text);

/// Identifies the group a matrix belongs to in emitted documents.
struct MatrixHeader {
  std::string family;
  int rank = 0;
  std::optional<int> m;
  std::string pipeline;
};

/// Input that could not be read as a matrix. Line and column are 1-based.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string &what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  /// The message without the position prefix.
  const std::string &message() const { return message_; }

private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

/// Top-level object with one key per line; arrays of rows print one row
/// per line, everything else compactly.
std::string dump_document(const nlohmann::ordered_json &doc);

nlohmann::ordered_json matrix_document(const MatrixHeader &header, const ExactMatrix &m);

/// Renders a matrix in the requested format, terminated by a newline.
std::string render_matrix(const MatrixHeader &header, const ExactMatrix &m, OutputFormat format);

/// Accepts a JSON document (the object emitted by render_matrix, or a bare
/// array of rows, entries as decimal strings or integers) or a whitespace
/// separated grid of decimals / fractions a/b, one row per line.
ExactMatrix parse_matrix(std::string_view text);

nlohmann::ordered_json certificate_document(const TPCertificate &cert, std::size_t size);

} // namespace metamatrix::cli
