#include "distlink/graph/approx_relation.h"

#include <cmath>

#include "distlink/core/error.h"
#include "distlink/core/io.h"

namespace distlink::graph {

ApproxRelation ApproxRelation::absolute(double eps) {
  if (!(eps > 0.0)) {
    throw InputError("absolute relation needs eps > 0, got " +
                     core::format_number(eps));
  }
  ApproxRelation r;
  r.kind_ = Kind::kAbsolute;
  r.eps_ = eps;
  return r;
}

ApproxRelation ApproxRelation::quantile_band(double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi) || !(lo < hi)) {
    throw InputError("quantile band needs lo < hi, got (" +
                     core::format_number(lo) + ", " + core::format_number(hi) +
                     ")");
  }
  ApproxRelation r;
  r.kind_ = Kind::kQuantileBand;
  r.lo_ = lo;
  r.hi_ = hi;
  return r;
}

std::string ApproxRelation::describe() const {
  if (kind_ == Kind::kAbsolute) {
    return "|w_target - w_ident| < " + core::format_number(eps_);
  }
  return core::format_number(lo_) + " < w_ident - w_target < " +
         core::format_number(hi_);
}

}  // namespace distlink::graph
