#include "distlink/core/microdata.h"

#include <algorithm>
#include <set>

#include "distlink/core/error.h"

namespace distlink::core {

std::string trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n";
  const auto first = s.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(kSpace);
  return std::string(s.substr(first, last - first + 1));
}

MicrodataTable::MicrodataTable(std::vector<std::string> schema,
                               std::vector<MicrodataRecord> records,
                               std::vector<std::string> qi_attributes,
                               std::optional<std::string> id_attribute,
                               std::optional<std::vector<GeoPoint>> coordinates)
    : schema_(std::move(schema)),
      records_(std::move(records)),
      qi_attributes_(std::move(qi_attributes)),
      id_attribute_(std::move(id_attribute)),
      coordinates_(std::move(coordinates)) {
  if (records_.empty()) {
    throw InputError("microdata table has no records");
  }
  for (auto& name : schema_) name = trim(name);
  if (std::set<std::string>(schema_.begin(), schema_.end()).size() !=
      schema_.size()) {
    throw InputError("microdata table: duplicate attribute name in schema");
  }
  for (std::size_t r = 0; r < records_.size(); ++r) {
    auto& values = records_[r].values;
    if (values.size() != schema_.size()) {
      throw InputError("microdata table: row " + std::to_string(r + 1) +
                       " has " + std::to_string(values.size()) +
                       " values, schema has " + std::to_string(schema_.size()));
    }
    for (auto& v : values) v = trim(v);
  }
  for (const auto& qi : qi_attributes_) column(qi);
  if (id_attribute_) {
    column(*id_attribute_);
    if (std::find(qi_attributes_.begin(), qi_attributes_.end(),
                  *id_attribute_) != qi_attributes_.end()) {
      throw InputError("microdata table: id attribute '" + *id_attribute_ +
                       "' is also a quasi-identifier");
    }
  }
  if (coordinates_) {
    if (coordinates_->size() != records_.size()) {
      throw InputError("microdata table: coordinate count differs from rows");
    }
    for (std::size_t r = 0; r < coordinates_->size(); ++r) {
      if (!is_valid((*coordinates_)[r])) {
        throw InputError("microdata table: invalid coordinates in row " +
                         std::to_string(r + 1));
      }
    }
  }
}

std::size_t MicrodataTable::column(std::string_view attribute) const {
  const auto it = std::find(schema_.begin(), schema_.end(), attribute);
  if (it == schema_.end()) {
    throw InputError("attribute '" + std::string(attribute) +
                     "' not in table schema");
  }
  return static_cast<std::size_t>(it - schema_.begin());
}

const std::string& MicrodataTable::value(std::size_t row,
                                         std::string_view attribute) const {
  return records_.at(row).values[column(attribute)];
}

std::vector<std::string> MicrodataTable::qi_values(std::size_t row) const {
  std::vector<std::string> out;
  out.reserve(qi_attributes_.size());
  for (const auto& qi : qi_attributes_) out.push_back(value(row, qi));
  return out;
}

MicrodataTable MicrodataTable::with_qi(
    std::vector<std::string> qi_attributes,
    std::optional<std::string> id_attribute) const {
  return MicrodataTable(schema_, records_, std::move(qi_attributes),
                        std::move(id_attribute), coordinates_);
}

std::vector<std::size_t> MicrodataTable::duplicate_rows() const {
  std::set<std::vector<std::string>> seen;
  std::vector<std::size_t> dups;
  for (std::size_t r = 0; r < records_.size(); ++r) {
    if (!seen.insert(records_[r].values).second) dups.push_back(r);
  }
  return dups;
}

}  // namespace distlink::core
