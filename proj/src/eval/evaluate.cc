#include "distlink/eval/evaluate.h"

#include <algorithm>
#include <cassert>
#include <set>

#include "distlink/core/error.h"

namespace distlink::eval {

GroundTruth::GroundTruth(std::vector<attack::Match> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  std::set<std::size_t> targets;
  std::set<std::size_t> idents;
  for (const auto& m : pairs_) {
    if (!targets.insert(m.target_row).second || !idents.insert(m.ident_row).second) {
      throw InputError("ground truth is not one-to-one");
    }
  }
}

bool GroundTruth::contains(const attack::Match& m) const {
  return std::binary_search(pairs_.begin(), pairs_.end(), m);
}

EvaluationReport evaluate(const attack::MatchList& matches, const GroundTruth& truth) {
  if (truth.empty()) throw DegenerateError("evaluate: ground truth is empty");
  EvaluationReport r;
  for (const auto& m : matches) {
    if (truth.contains(m)) ++r.tp;
  }
  r.fp = matches.size() - r.tp;
  r.fn = truth.size() - r.tp;
  assert(r.tp + r.fp == matches.size());
  assert(r.tp + r.fn == truth.size());
  if (matches.empty()) {
    r.precision = 1.0;
    r.precision_defined = false;
  } else {
    r.precision = static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fp);
  }
  r.recall = static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fn);
  return r;
}

}  // namespace distlink::eval
