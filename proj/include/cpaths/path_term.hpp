#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cpaths/symbol.hpp"

namespace cpaths {

class SpacePresentation;
using SpaceRef = std::shared_ptr<const SpacePresentation>;

enum class NodeKind : std::uint8_t { Refl, Gen, Symm, Trans };

/// One preorder node of a path term. `sym` names the point of a Refl or the
/// generator of a Gen and is empty for Symm/Trans.
struct Node {
  NodeKind kind;
  Symbol sym;

  friend bool operator==(const Node&, const Node&) = default;
};

/// Address of a subterm: child indices from the root. 0 is the Symm child or
/// the first Trans child, 1 the second Trans child.
using Position = std::vector<std::uint8_t>;

std::string position_to_string(const Position& pos);

struct Endpoints {
  PointId src;
  PointId tgt;

  friend bool operator==(const Endpoints&, const Endpoints&) = default;
};

/// Symbolic path: Refl(x) | Gen(g) | Symm(p) | Trans(p, q).
///
/// Stored as a flat preorder node sequence, so a subterm is a contiguous
/// slice and structural equality is sequence equality. Endpoints are not
/// cached; they depend on the presentation and are recomputed on demand.
class PathExpr {
 public:
  static PathExpr refl(PointId point);
  static PathExpr gen(GenId gen);
  static PathExpr symm(const PathExpr& inner);
  static PathExpr trans(const PathExpr& first, const PathExpr& second);

  NodeKind kind() const { return nodes_.front().kind; }
  Symbol symbol() const { return nodes_.front().sym; }
  std::size_t size() const { return nodes_.size(); }
  std::span<const Node> nodes() const { return nodes_; }

  /// Direct child: 0 for Symm, 0 or 1 for Trans.
  PathExpr child(std::size_t index) const;

  /// A generator or the inverse of a generator.
  bool is_letter() const;

  /// Node offset of the subterm at `pos`; throws InvalidPosition.
  std::size_t offset_of(const Position& pos) const;
  bool has_position(const Position& pos) const;
  PathExpr subterm(const Position& pos) const;
  PathExpr replace(const Position& pos, const PathExpr& replacement) const;

  std::size_t hash() const noexcept;

  friend bool operator==(const PathExpr&, const PathExpr&) = default;

  /// Rebuilds a term from a node slice that is known to be one complete subterm.
  static PathExpr from_nodes(std::span<const Node> nodes);

 private:
  PathExpr() = default;
  std::vector<Node> nodes_;
};

/// Index one past the end of the subterm starting at `start`.
std::size_t subterm_end(std::span<const Node> nodes, std::size_t start);

/// Constructor-style rendering, e.g. `Trans(Gen a, Symm(Gen a))`.
std::string to_debug_string(const PathExpr& p);

/// Source and target of `p`; throws UnknownGenerator, UnknownPoint or
/// EndpointMismatch when `p` is ill-formed over `space`.
Endpoints endpoints(const SpacePresentation& space, const PathExpr& p);

/// Endpoints of every subterm, indexed by preorder node offset.
std::vector<Endpoints> subterm_endpoints(const SpacePresentation& space, const PathExpr& p);

bool well_formed(const SpacePresentation& space, const PathExpr& p);

/// n = 0 gives Refl, n > 0 left-nested copies of `loop`, n < 0 powers of
/// Symm(loop). Throws NotALoop.
PathExpr zpow(const SpacePresentation& space, const PathExpr& loop, long n);

/// Structure-preserving map between presentations. Construction checks that
/// generator images have the mapped endpoints and that every relation of the
/// source is sent to a rewrite-equal pair in the target.
class SpaceMap {
 public:
  static SpaceMap create(SpaceRef source, SpaceRef target,
                         std::unordered_map<PointId, PointId> point_map,
                         std::unordered_map<GenId, PathExpr> gen_map);

  const SpacePresentation& source() const { return *source_; }
  const SpacePresentation& target() const { return *target_; }
  const SpaceRef& target_ref() const { return target_; }

  PointId map_point(PointId p) const;
  const PathExpr& map_generator(GenId g) const;

 private:
  SpaceMap() = default;
  SpaceRef source_;
  SpaceRef target_;
  std::unordered_map<PointId, PointId> point_map_;
  std::unordered_map<GenId, PathExpr> gen_map_;
};

PathExpr map_path(const SpaceMap& m, const PathExpr& p);

}  // namespace cpaths

template <>
struct std::hash<cpaths::PathExpr> {
  std::size_t operator()(const cpaths::PathExpr& p) const noexcept { return p.hash(); }
};
