#include "metamatrix/cli/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

namespace metamatrix::cli {
namespace {

using nlohmann::ordered_json;

struct Position {
  std::size_t line = 1;
  std::size_t column = 1;
};

Position position_of(std::string_view text, std::size_t offset) {
  Position p;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

[[noreturn]] void fail_at(std::string_view text, std::size_t offset, const std::string &what) {
  const Position p = position_of(text, offset);
  throw ParseError(p.line, p.column, what);
}

std::size_t skip_string(std::string_view text, std::size_t i) {
  // text[i] == '"'
  for (++i; i < text.size(); ++i) {
    if (text[i] == '\\')
      ++i;
    else if (text[i] == '"')
      return i + 1;
  }
  return i;
}

// Offsets of the rows and their scalar entries in an already validated JSON
// array of arrays that starts at `begin`.
struct Layout {
  std::vector<std::size_t> row_offsets;
  std::vector<std::vector<std::size_t>> entry_offsets;
};

Layout locate_rows(std::string_view text, std::size_t begin) {
  Layout layout;
  int depth = 0;
  for (std::size_t i = begin; i < text.size();) {
    const char c = text[i];
    if (c == '[') {
      ++depth;
      if (depth == 2) {
        layout.row_offsets.push_back(i);
        layout.entry_offsets.emplace_back();
      }
      ++i;
    } else if (c == ']') {
      if (--depth == 0)
        break;
      ++i;
    } else if (c == '"') {
      if (depth == 2)
        layout.entry_offsets.back().push_back(i);
      i = skip_string(text, i);
    } else if (depth == 2 && (std::isdigit(static_cast<unsigned char>(c)) || c == '-' ||
                              c == 't' || c == 'f' || c == 'n' || c == '{')) {
      layout.entry_offsets.back().push_back(i);
      while (i < text.size() && text[i] != ',' && text[i] != ']')
        ++i;
    } else {
      ++i;
    }
  }
  return layout;
}

// Offset of the value of the top-level "matrix" key, if any.
std::size_t find_matrix_value(std::string_view text) {
  int depth = 0;
  for (std::size_t i = 0; i < text.size();) {
    const char c = text[i];
    if (c == '{' || c == '[') {
      ++depth;
      ++i;
    } else if (c == '}' || c == ']') {
      --depth;
      ++i;
    } else if (c == '"') {
      const std::size_t end = skip_string(text, i);
      if (depth == 1 && text.substr(i, end - i) == "\"matrix\"") {
        std::size_t j = end;
        while (j < text.size() && (std::isspace(static_cast<unsigned char>(text[j])) || text[j] == ':'))
          ++j;
        return j;
      }
      i = end;
    } else {
      ++i;
    }
  }
  return 0;
}

ExactRational parse_entry(std::string_view text, std::size_t offset, const std::string &token) {
  try {
    return parse_rational(token);
  } catch (const std::invalid_argument &e) {
    fail_at(text, offset, e.what());
  }
}

void require_square(std::string_view text, std::size_t offset, std::size_t rows,
                    std::size_t cols) {
  if (rows == 0)
    fail_at(text, offset, "matrix is empty");
  if (rows != cols)
    fail_at(text, offset,
            "matrix is not square (" + std::to_string(rows) + " rows, " + std::to_string(cols) +
                " columns)");
}

ExactMatrix parse_json(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error &e) {
    const std::size_t byte = e.byte == 0 ? 0 : e.byte - 1;
    std::string what = e.what();
    if (const auto pos = what.find(": "); pos != std::string::npos)
      what = what.substr(pos + 2);
    fail_at(text, byte, what);
  }

  std::size_t start = 0;
  const ordered_json *rows = &doc;
  if (doc.is_object()) {
    if (!doc.contains("matrix"))
      fail_at(text, 0, "JSON object has no \"matrix\" field");
    rows = &doc["matrix"];
    start = find_matrix_value(text);
  } else {
    while (start < text.size() && std::isspace(static_cast<unsigned char>(text[start])))
      ++start;
  }
  if (!rows->is_array())
    fail_at(text, start, "\"matrix\" must be an array of rows");

  const Layout layout = locate_rows(text, start);
  const std::size_t n = rows->size();
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t row_at = r < layout.row_offsets.size() ? layout.row_offsets[r] : start;
    if (!(*rows)[r].is_array())
      fail_at(text, row_at, "row " + std::to_string(r + 1) + " is not an array");
    require_square(text, row_at, n, (*rows)[r].size());
  }
  require_square(text, start, n, n);

  ExactMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const auto &v = (*rows)[r][c];
      const std::size_t at = c < layout.entry_offsets[r].size() ? layout.entry_offsets[r][c]
                                                                : layout.row_offsets[r];
      if (v.is_string())
        m(r, c) = parse_entry(text, at, v.get<std::string>());
      else if (v.is_number_integer())
        m(r, c) = parse_entry(text, at, v.dump());
      else
        fail_at(text, at, "entry must be a decimal string or an integer");
    }
  return m;
}

ExactMatrix parse_grid(std::string_view text) {
  std::vector<std::vector<ExactRational>> rows;
  std::vector<std::size_t> row_offsets;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos)
      line_end = text.size();
    const std::string_view line = text.substr(line_start, line_end - line_start);

    std::vector<ExactRational> row;
    std::size_t i = 0;
    while (i < line.size()) {
      const char c = line[i];
      if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
        ++i;
        continue;
      }
      if (c == '#')
        break;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != ',')
        ++j;
      row.push_back(parse_entry(text, line_start + i, std::string(line.substr(i, j - i))));
      i = j;
    }
    if (!row.empty()) {
      if (!rows.empty() && row.size() != rows.front().size())
        fail_at(text, line_start,
                "row has " + std::to_string(row.size()) + " entries, expected " +
                    std::to_string(rows.front().size()));
      rows.push_back(std::move(row));
      row_offsets.push_back(line_start);
    }
    line_start = line_end + 1;
  }
  if (rows.empty())
    fail_at(text, 0, "matrix is empty");
  require_square(text, row_offsets.back(), rows.size(), rows.front().size());

  const std::size_t n = rows.size();
  ExactMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      m(r, c) = rows[r][c];
  return m;
}

} // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string &what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + what),
      line_(line), column_(column), message_(what) {}

OutputFormat parse_format(std::string_view text) {
  if (text == "json")
    return OutputFormat::Json;
  if (text == "csv")
    return OutputFormat::Csv;
  if (text == "pretty")
    return OutputFormat::Pretty;
  throw std::invalid_argument("unknown format '" + std::string(text) + "'");
}

std::string dump_document(const ordered_json &doc) {
  std::ostringstream os;
  os << "{\n";
  bool first = true;
  for (const auto &[key, value] : doc.items()) {
    os << (first ? "" : ",\n") << "  " << ordered_json(key).dump() << ": ";
    first = false;
    const bool grid = value.is_array() && !value.empty() &&
                      std::all_of(value.begin(), value.end(),
                                  [](const ordered_json &v) { return v.is_array(); });
    if (!grid) {
      os << value.dump();
      continue;
    }
    os << "[\n";
    for (std::size_t r = 0; r < value.size(); ++r)
      os << "    " << value[r].dump() << (r + 1 < value.size() ? ",\n" : "\n");
    os << "  ]";
  }
  os << "\n}\n";
  return os.str();
}

ordered_json matrix_document(const MatrixHeader &header, const ExactMatrix &m) {
  ordered_json doc;
  doc["family"] = header.family;
  doc["rank"] = header.rank;
  if (header.m)
    doc["m"] = *header.m;
  doc["pipeline"] = header.pipeline;
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (std::size_t c = 0; c < m.cols(); ++c)
      row.push_back(to_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  doc["matrix"] = std::move(rows);
  return doc;
}

std::string render_matrix(const MatrixHeader &header, const ExactMatrix &m, OutputFormat format) {
  std::ostringstream os;
  switch (format) {
  case OutputFormat::Json:
    os << dump_document(matrix_document(header, m));
    break;
  case OutputFormat::Csv:
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c)
        os << (c ? "," : "") << to_string(m(r, c));
      os << '\n';
    }
    break;
  case OutputFormat::Pretty: {
    os << header.family;
    if (header.family != "I2")
      os << header.rank;
    else if (header.m)
      os << '(' << *header.m << ')';
    os << "  [" << header.pipeline << "]\n";
    std::size_t width = 0;
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c)
        width = std::max(width, to_string(m(r, c)).size());
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        const std::string s = to_string(m(r, c));
        os << (c ? "  " : "") << std::string(width - s.size(), ' ') << s;
      }
      os << '\n';
    }
    break;
  }
  }
  return os.str();
}

ExactMatrix parse_matrix(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
    ++i;
  if (i < text.size() && (text[i] == '{' || text[i] == '['))
    return parse_json(text);
  return parse_grid(text);
}

ordered_json certificate_document(const TPCertificate &cert, std::size_t size) {
  ordered_json doc;
  doc["verdict"] = cert.totally_positive ? "totally-positive" : "not";
  doc["method"] = std::string(tp_method_name(cert.method));
  doc["size"] = size;
  doc["minors_checked"] = cert.minors_checked;
  if (cert.witness) {
    ordered_json w;
    w["rows"] = cert.witness->rows;
    w["cols"] = cert.witness->cols;
    w["minor"] = to_string(cert.witness->value);
    doc["witness"] = std::move(w);
  }
  return doc;
}

} // namespace metamatrix::cli
