#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "cpaths/groupoid.hpp"
#include "cpaths/path_term.hpp"
#include "cpaths/space_presentation.hpp"

namespace cpaths {

/// Winding number in Z (circle, cylinder, Moebius band).
struct IntValue {
  long n = 0;
  friend bool operator==(const IntValue&, const IntValue&) = default;
};

/// Element of Z x Z (torus).
struct PairValue {
  long m = 0;
  long n = 0;
  friend bool operator==(const PairValue&, const PairValue&) = default;
};

/// Element of Z x| Z (Klein bottle); same carrier as PairValue, twisted product.
struct SemidirectValue {
  long m = 0;
  long n = 0;
  friend bool operator==(const SemidirectValue&, const SemidirectValue&) = default;
};

/// Element of Z/2 (projective plane).
struct ParityValue {
  bool odd = false;
  friend bool operator==(const ParityValue&, const ParityValue&) = default;
};

using GroupValue = std::variant<IntValue, PairValue, SemidirectValue, ParityValue>;

GroupTag tag_of(const GroupValue& g);
GroupValue group_identity(GroupTag tag);

/// `n`, `(m, n)`, or `0`/`1`.
std::string render(const GroupValue& g);
/// Inverse of render for the given tag; accepts `(m,n)` with optional spaces.
/// Throws ParseError.
GroupValue parse_group_value(GroupTag tag, std::string_view text);

/// Retractions onto the circle used to transfer its encode map.
const SpaceMap& cylinder_to_circle();
const SpaceMap& mobius_to_circle();

/// Fold of the transport action over the normal-form word of a basepoint
/// loop. Throws NotABasepointLoop, SpaceMismatch or GroupTagMismatch.
GroupValue encode(const SpaceRef& space, const PathClass& x);
/// Throws GroupTagMismatch.
PathClass decode(const SpaceRef& space, const GroupValue& g);

GroupValue group_mul(const SpacePresentation& space, const GroupValue& g, const GroupValue& h);
GroupValue group_inv(const SpacePresentation& space, const GroupValue& g);

/// encode(comp(x, y)) == group_mul(encode(x), encode(y)).
bool homomorphism_check(const SpaceRef& space, const PathClass& x, const PathClass& y);

}  // namespace cpaths
