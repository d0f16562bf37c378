#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cpaths/path_term.hpp"
#include "cpaths/symbol.hpp"

namespace cpaths {

/// Target group of the fundamental group computation. `None` marks
/// presentations loaded from files, which only support normalization.
enum class GroupTag { FreeZ, ZxZ, ZSemidirectZ, Z2, None };

std::string_view group_tag_name(GroupTag tag);

enum class BuiltinKind { Circle, Cylinder, Mobius, Torus, Klein, Rp2 };

struct Generator {
  GenId id;
  PointId src;
  PointId tgt;
  std::string display;  // output spelling, defaults to the id
};

/// A 2-cell lhs = rhs. The stored direction is the normalizing one.
struct Relation {
  Symbol name;
  PathExpr lhs;
  PathExpr rhs;
};

/// Finitely presented space: points, generators with endpoints, relations and
/// a basepoint. Immutable once built.
class SpacePresentation {
 public:
  SpacePresentation(std::string name, std::vector<PointId> points, std::vector<Generator> generators,
                    std::vector<Relation> relations, PointId basepoint, GroupTag tag = GroupTag::None,
                    std::optional<BuiltinKind> builtin = std::nullopt);

  const std::string& name() const { return name_; }
  const std::vector<PointId>& points() const { return points_; }
  const std::vector<Generator>& generators() const { return generators_; }
  const std::vector<Relation>& relations() const { return relations_; }
  PointId basepoint() const { return basepoint_; }
  GroupTag tag() const { return tag_; }
  std::optional<BuiltinKind> builtin() const { return builtin_; }

  bool has_point(PointId p) const;
  const Generator* find_generator(GenId g) const;
  /// Looks a generator up by id or by display spelling.
  const Generator* find_generator_by_name(std::string_view name) const;
  const Relation* find_relation(Symbol name) const;
  /// Declaration index, used for length-lexicographic orders.
  std::size_t generator_index(GenId g) const;
  const std::string& display_name(GenId g) const;

  friend bool operator==(const SpacePresentation& a, const SpacePresentation& b);

 private:
  std::string name_;
  std::vector<PointId> points_;
  std::vector<Generator> generators_;
  std::vector<Relation> relations_;
  PointId basepoint_;
  GroupTag tag_;
  std::optional<BuiltinKind> builtin_;
};

inline const char* const kBuiltinNames[] = {"circle", "cylinder", "mobius", "torus", "klein", "rp2"};

/// One of the six fixed presentations; throws UnknownSpace for other names.
/// Repeated calls return the same immutable instance.
SpaceRef builtin(std::string_view name);
SpaceRef builtin(BuiltinKind kind);

enum class ViolationKind {
  EmptyName,
  DuplicatePoint,
  DuplicateGenerator,
  NameClash,
  UnknownPoint,
  UnknownGenerator,
  EndpointMismatch,
};

std::string_view violation_kind_name(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string subject;  // offending identifier
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Empty when the presentation is valid.
std::vector<Violation> validate(const SpacePresentation& space);

}  // namespace cpaths
