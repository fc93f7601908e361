#ifndef DISTLINK_ATTACK_MATCH_LIST_H_
#define DISTLINK_ATTACK_MATCH_LIST_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace distlink::attack {

// A (target row, identification row) pair, 0-based in memory. Files use
// 1-based rows.
struct Match {
  std::size_t target_row = 0;
  std::size_t ident_row = 0;

  friend auto operator<=>(const Match&, const Match&) = default;
};

// One-to-one set of matches, kept sorted by target row.
class MatchList {
 public:
  MatchList() = default;
  // Throws InputError if a target or identification row repeats.
  explicit MatchList(std::vector<Match> matches);

  std::size_t size() const { return matches_.size(); }
  bool empty() const { return matches_.empty(); }
  const std::vector<Match>& matches() const { return matches_; }
  auto begin() const { return matches_.begin(); }
  auto end() const { return matches_.end(); }
  bool contains(const Match& m) const;

  friend bool operator==(const MatchList&, const MatchList&) = default;

 private:
  std::vector<Match> matches_;
};

// CSV with header `target_row,ident_row` and 1-based rows.
void write_matches(std::ostream& out, const std::vector<Match>& matches);
void save_matches(const std::filesystem::path& path,
                  const std::vector<Match>& matches);
std::vector<Match> read_matches(std::istream& in);
std::vector<Match> load_matches(const std::filesystem::path& path);

}  // namespace distlink::attack

#endif  // DISTLINK_ATTACK_MATCH_LIST_H_
