#ifndef DISTLINK_CORE_MICRODATA_H_
#define DISTLINK_CORE_MICRODATA_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "distlink/core/geo.h"

namespace distlink::core {

// One row of a microdata table. Values are positionally aligned with the
// owning table's schema and stored as trimmed strings; integer attributes are
// kept in their textual form so that label comparison is exact.
struct MicrodataRecord {
  std::vector<std::string> values;

  friend bool operator==(const MicrodataRecord&,
                         const MicrodataRecord&) = default;
};

// The table T of a microdata-in-a-metric-space pair (T, D). Rows are
// identified by position. Coordinates, when present, are kept beside the
// attribute values rather than as attributes.
class MicrodataTable {
 public:
  MicrodataTable() = default;

  // Throws InputError when a record's arity differs from the schema, the table
  // is empty, a quasi-identifier is not in the schema, or the id attribute is
  // missing from the schema or designated as a quasi-identifier.
  MicrodataTable(std::vector<std::string> schema,
                 std::vector<MicrodataRecord> records,
                 std::vector<std::string> qi_attributes = {},
                 std::optional<std::string> id_attribute = std::nullopt,
                 std::optional<std::vector<GeoPoint>> coordinates = std::nullopt);

  std::size_t size() const { return records_.size(); }
  const std::vector<std::string>& schema() const { return schema_; }
  const std::vector<MicrodataRecord>& records() const { return records_; }
  const std::vector<std::string>& qi_attributes() const { return qi_attributes_; }
  const std::optional<std::string>& id_attribute() const { return id_attribute_; }
  const std::optional<std::vector<GeoPoint>>& coordinates() const {
    return coordinates_;
  }

  // Position of `attribute` in the schema; throws InputError if absent.
  std::size_t column(std::string_view attribute) const;
  const std::string& value(std::size_t row, std::string_view attribute) const;

  // Quasi-identifier values of `row`, in qi_attributes order.
  std::vector<std::string> qi_values(std::size_t row) const;

  // Same rows, different quasi-identifier designation.
  MicrodataTable with_qi(std::vector<std::string> qi_attributes,
                         std::optional<std::string> id_attribute) const;

  // Indices of rows whose full attribute tuple repeats an earlier row.
  std::vector<std::size_t> duplicate_rows() const;

  friend bool operator==(const MicrodataTable&, const MicrodataTable&) = default;

 private:
  std::vector<std::string> schema_;
  std::vector<MicrodataRecord> records_;
  std::vector<std::string> qi_attributes_;
  std::optional<std::string> id_attribute_;
  std::optional<std::vector<GeoPoint>> coordinates_;
};

std::string trim(std::string_view s);

}  // namespace distlink::core

#endif  // DISTLINK_CORE_MICRODATA_H_
