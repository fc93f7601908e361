#ifndef DISTLINK_EVAL_EVALUATE_H_
#define DISTLINK_EVAL_EVALUATE_H_

#include <cstddef>
#include <vector>

#include "distlink/attack/match_list.h"

namespace distlink::eval {

// Pairs of (target row, identification row) that belong to the same entity.
class GroundTruth {
 public:
  GroundTruth() = default;
  // Throws InputError if a row appears twice.
  explicit GroundTruth(std::vector<attack::Match> pairs);

  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  const std::vector<attack::Match>& pairs() const { return pairs_; }
  bool contains(const attack::Match& m) const;

 private:
  std::vector<attack::Match> pairs_;  // sorted
};

struct EvaluationReport {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 1.0;
  double recall = 0.0;
  // False when no match was proposed; precision is then reported as 1.0.
  bool precision_defined = true;
};

// tp = |matches ∩ truth|, fp = |matches| - tp, fn = |truth| - tp.
// Throws DegenerateError when the ground truth is empty.
EvaluationReport evaluate(const attack::MatchList& matches, const GroundTruth& truth);

}  // namespace distlink::eval

#endif  // DISTLINK_EVAL_EVALUATE_H_
