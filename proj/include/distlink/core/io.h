#ifndef DISTLINK_CORE_IO_H_
#define DISTLINK_CORE_IO_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "distlink/core/distance_matrix.h"
#include "distlink/core/microdata.h"

namespace distlink::core {

// Minimal RFC 4180 reader: comma separated, double-quoted fields may contain
// commas, quotes ("") and newlines. Blank lines are skipped.
std::vector<std::vector<std::string>> parse_csv(std::istream& in);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);
// Strict decimal parse ('.' separator, surrounding whitespace allowed).
double parse_number(std::string_view text);

struct TableFormat {
  std::vector<std::string> qi_attributes;
  std::optional<std::string> id_attribute;
  // When both columns are present they are read as coordinates and removed
  // from the attribute schema.
  std::string lon_column = "lon";
  std::string lat_column = "lat";
};

MicrodataTable read_table(std::istream& in, const TableFormat& format = {});
MicrodataTable load_table(const std::filesystem::path& path,
                          const TableFormat& format = {});
void write_table(std::ostream& out, const MicrodataTable& table);
void save_table(const std::filesystem::path& path, const MicrodataTable& table);

// Headerless n x n CSV.
DistanceMatrix read_matrix(std::istream& in);
DistanceMatrix load_matrix(const std::filesystem::path& path);
void write_matrix(std::ostream& out, const DistanceMatrix& matrix);
void save_matrix(const std::filesystem::path& path, const DistanceMatrix& matrix);

// Coordinates of a points CSV (lon/lat columns); throws if they are missing.
std::vector<GeoPoint> load_points(const std::filesystem::path& path,
                                  const TableFormat& format = {});

}  // namespace distlink::core

#endif  // DISTLINK_CORE_IO_H_
