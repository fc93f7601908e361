#ifndef DISTLINK_GRAPH_APPROX_RELATION_H_
#define DISTLINK_GRAPH_APPROX_RELATION_H_

#include <string>

namespace distlink::graph {

// The "approximately equal" predicate on a pair of edge weights, one from the
// target graph and one from the identification graph. Both variants use
// strict inequalities.
class ApproxRelation {
 public:
  enum class Kind { kAbsolute, kQuantileBand };

  // |w_target - w_ident| < eps. Requires eps > 0 (infinity allowed).
  static ApproxRelation absolute(double eps);

  // lo < (w_ident - w_target) < hi. Requires lo < hi.
  //
  // The band is asymmetric in its arguments: the identification weight plays
  // the unmasked distance d and the target weight the masked distance d', so
  // the deviation is d - d'. Swapping the graphs flips the sign convention.
  static ApproxRelation quantile_band(double lo, double hi);

  bool operator()(double w_target, double w_ident) const {
    if (kind_ == Kind::kAbsolute) {
      const double diff = w_target - w_ident;
      return (diff < 0 ? -diff : diff) < eps_;
    }
    const double deviation = w_ident - w_target;
    return lo_ < deviation && deviation < hi_;
  }

  Kind kind() const { return kind_; }
  double eps() const { return eps_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::string describe() const;

 private:
  ApproxRelation() = default;

  Kind kind_ = Kind::kAbsolute;
  double eps_ = 0.0;
  double lo_ = 0.0;
  double hi_ = 0.0;
};

}  // namespace distlink::graph

#endif  // DISTLINK_GRAPH_APPROX_RELATION_H_
