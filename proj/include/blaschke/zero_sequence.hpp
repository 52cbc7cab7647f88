#ifndef BLASCHKE_ZERO_SEQUENCE_HPP
#define BLASCHKE_ZERO_SEQUENCE_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "blaschke/disk_geometry.hpp"

namespace blaschke {

enum class FamilyTag { explicit_list, tangential, oricyclic, designed };

// A finite truncation of a Blaschke zero sequence.  tail_delta_sum is a
// generator-certified upper bound on sum_{n>K} (1 - |lambda_n|); explicit
// lists carry 0.
struct ZeroSequence {
  std::vector<BoundaryPoint> zeros;
  FamilyTag family_tag = FamilyTag::explicit_list;
  double tail_delta_sum = 0.0;
  std::string description;

  std::size_t truncation_len() const { return zeros.size(); }
};

inline void check_valid(const ZeroSequence& s) {
  for (const auto& z : s.zeros)
    if (!valid(z)) throw std::invalid_argument("ZeroSequence: zero outside the open disk");
  if (s.tail_delta_sum < 0)
    throw std::invalid_argument("ZeroSequence: negative tail bound");
}

}  // namespace blaschke

#endif
