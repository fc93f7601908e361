#include "distlink/core/io.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "distlink/core/error.h"

namespace distlink::core {
namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  return out;
}

bool is_blank(const std::vector<std::string>& row) {
  return std::all_of(row.begin(), row.end(),
                     [](const std::string& f) { return trim(f).empty(); });
}

}  // namespace

std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    if (!is_blank(row)) rows.push_back(std::move(row));
    row.clear();
  };

  char c;
  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started && !trim(field).empty()) {
          throw InputError("csv line " + std::to_string(line) +
                           ": stray quote inside unquoted field");
        }
        field.clear();
        quoted = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        end_row();
        ++line;
        break;
      default:
        field.push_back(c);
        field_started = true;
    }
  }
  if (quoted) {
    throw InputError("csv: unterminated quoted field at line " +
                     std::to_string(line));
  }
  if (field_started || !row.empty()) end_row();
  return rows;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n\r") != std::string::npos) {
      out << '"';
      for (char c : f) {
        if (c == '"') out << '"';
        out << c;
      }
      out << '"';
    } else {
      out << f;
    }
  }
  out << '\n';
}

std::string format_number(double value) {
  if (value == 0.0) return "0";  // also folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view text) {
  const std::string t = trim(text);
  double value = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (!t.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, value);
  if (t.empty() || res.ec != std::errc() || res.ptr != last) {
    throw InputError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

MicrodataTable read_table(std::istream& in, const TableFormat& format) {
  auto rows = parse_csv(in);
  if (rows.empty()) throw InputError("table csv: missing header row");
  std::vector<std::string> header;
  for (const auto& h : rows.front()) header.push_back(trim(h));

  const auto find = [&](const std::string& name) -> std::optional<std::size_t> {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto lon_col = find(format.lon_column);
  const auto lat_col = find(format.lat_column);
  const bool has_coords = lon_col && lat_col;

  std::vector<std::string> schema;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (has_coords && (c == *lon_col || c == *lat_col)) continue;
    schema.push_back(header[c]);
  }

  std::vector<MicrodataRecord> records;
  std::vector<GeoPoint> coords;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size()) {
      throw InputError("table csv: row " + std::to_string(r) + " has " +
                       std::to_string(row.size()) + " fields, header has " +
                       std::to_string(header.size()));
    }
    MicrodataRecord rec;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (has_coords && (c == *lon_col || c == *lat_col)) continue;
      rec.values.push_back(row[c]);
    }
    records.push_back(std::move(rec));
    if (has_coords) {
      coords.push_back({parse_number(row[*lon_col]), parse_number(row[*lat_col])});
    }
  }
  std::optional<std::vector<GeoPoint>> coordinates;
  if (has_coords) coordinates = std::move(coords);
  return MicrodataTable(std::move(schema), std::move(records),
                        format.qi_attributes, format.id_attribute,
                        std::move(coordinates));
}

MicrodataTable load_table(const std::filesystem::path& path,
                          const TableFormat& format) {
  auto in = open_input(path);
  try {
    return read_table(in, format);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_table(std::ostream& out, const MicrodataTable& table) {
  std::vector<std::string> header = table.schema();
  const bool has_coords = table.coordinates().has_value();
  if (has_coords) {
    header.push_back("lon");
    header.push_back("lat");
  }
  write_csv_row(out, header);
  for (std::size_t r = 0; r < table.size(); ++r) {
    std::vector<std::string> fields = table.records()[r].values;
    if (has_coords) {
      const GeoPoint& p = (*table.coordinates())[r];
      fields.push_back(format_number(p.lon));
      fields.push_back(format_number(p.lat));
    }
    write_csv_row(out, fields);
  }
}

void save_table(const std::filesystem::path& path, const MicrodataTable& table) {
  auto out = open_output(path);
  write_table(out, table);
}

DistanceMatrix read_matrix(std::istream& in) {
  const auto rows = parse_csv(in);
  std::vector<std::vector<double>> values;
  values.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<double> v;
    v.reserve(row.size());
    for (const auto& f : row) v.push_back(parse_number(f));
    values.push_back(std::move(v));
  }
  if (values.empty()) throw InputError("matrix csv: empty");
  return DistanceMatrix::from_rows(values);
}

DistanceMatrix load_matrix(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return read_matrix(in);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_matrix(std::ostream& out, const DistanceMatrix& matrix) {
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    for (std::size_t j = 0; j < matrix.size(); ++j) {
      if (j) out << ',';
      out << format_number(matrix.at(i, j));
    }
    out << '\n';
  }
}

void save_matrix(const std::filesystem::path& path, const DistanceMatrix& matrix) {
  auto out = open_output(path);
  write_matrix(out, matrix);
}

std::vector<GeoPoint> load_points(const std::filesystem::path& path,
                                  const TableFormat& format) {
  TableFormat f = format;
  f.qi_attributes.clear();
  f.id_attribute.reset();
  const MicrodataTable table = load_table(path, f);
  if (!table.coordinates()) {
    throw InputError(path.string() + ": no '" + f.lon_column + "'/'" +
                     f.lat_column + "' columns");
  }
  return *table.coordinates();
}

}  // namespace distlink::core
