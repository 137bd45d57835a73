#pragma once

// Signed weight sums of Hodge tables against point counts.

#include <sstream>
#include <string>
#include <vector>

#include "clusterlab/point_count.hpp"
#include "clusterlab/standard_cohomology.hpp"

namespace clusterlab {

/// sum_k (-1)^{n+m-k} sum_w q^w h^{k,(w,w)}.
inline Integer signed_weight_sum(const HodgeTable& t, u64 q) {
  Integer total = 0;
  Integer Q = Integer(static_cast<unsigned long>(q));
  const long e = t.dimension();
  for (const auto& [kp, h] : t.entries) {
    Integer term = h * int_pow(Q, static_cast<unsigned long>(kp.second));
    if ((e - kp.first) % 2 != 0) term = -term;
    total += term;
  }
  return total;
}

struct ConsistencyReport {
  bool ok = true;
  std::string diff;
};

/// Compare signed weight sums with every sample.  Only trivial Frobenius
/// characters are supported; with the flag off the check is refused.
inline ConsistencyReport grothendieck_consistency(const HodgeTable& t, const std::vector<PointCountSample>& samples,
                                                  bool assume_trivial_characters = true) {
  ConsistencyReport rep;
  std::ostringstream os;
  if (!assume_trivial_characters) {
    rep.ok = false;
    rep.diff = "non-trivial Frobenius characters are not modelled\n";
    return rep;
  }
  for (const auto& s : samples) {
    Integer predicted = signed_weight_sum(t, s.q);
    if (predicted != s.count) {
      rep.ok = false;
      os << "q=" << s.q << ": table gives " << predicted << ", sample " << s.count << "\n";
    }
  }
  rep.diff = os.str();
  return rep;
}

}  // namespace clusterlab
