#include "distlink/attack/match_list.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>

#include "distlink/core/error.h"
#include "distlink/core/io.h"
#include "distlink/core/microdata.h"

namespace distlink::attack {

MatchList::MatchList(std::vector<Match> matches) : matches_(std::move(matches)) {
  std::sort(matches_.begin(), matches_.end());
  std::set<std::size_t> targets;
  std::set<std::size_t> idents;
  for (const auto& m : matches_) {
    if (!targets.insert(m.target_row).second) {
      throw InputError("match list: target row " +
                       std::to_string(m.target_row + 1) + " matched twice");
    }
    if (!idents.insert(m.ident_row).second) {
      throw InputError("match list: identification row " +
                       std::to_string(m.ident_row + 1) + " matched twice");
    }
  }
}

bool MatchList::contains(const Match& m) const {
  return std::binary_search(matches_.begin(), matches_.end(), m);
}

void write_matches(std::ostream& out, const std::vector<Match>& matches) {
  out << "target_row,ident_row\n";
  for (const auto& m : matches) {
    out << m.target_row + 1 << ',' << m.ident_row + 1 << '\n';
  }
}

void save_matches(const std::filesystem::path& path,
                  const std::vector<Match>& matches) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  write_matches(out, matches);
}

std::vector<Match> read_matches(std::istream& in) {
  const auto rows = core::parse_csv(in);
  if (rows.empty() || rows.front().size() != 2 ||
      core::trim(rows.front()[0]) != "target_row" ||
      core::trim(rows.front()[1]) != "ident_row") {
    throw InputError("match csv: expected header 'target_row,ident_row'");
  }
  std::vector<Match> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != 2) {
      throw InputError("match csv: row " + std::to_string(r) + " needs 2 fields");
    }
    const double t = core::parse_number(rows[r][0]);
    const double i = core::parse_number(rows[r][1]);
    if (t < 1 || i < 1 || t != static_cast<double>(static_cast<std::size_t>(t)) ||
        i != static_cast<double>(static_cast<std::size_t>(i))) {
      throw InputError("match csv: rows must be positive integers (line " +
                       std::to_string(r + 1) + ")");
    }
    out.push_back({static_cast<std::size_t>(t) - 1, static_cast<std::size_t>(i) - 1});
  }
  return out;
}

std::vector<Match> load_matches(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return read_matches(in);
}

}  // namespace distlink::attack
