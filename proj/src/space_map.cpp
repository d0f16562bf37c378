#include "cpaths/error.hpp"
#include "cpaths/path_term.hpp"
#include "cpaths/rewrite_engine.hpp"
#include "cpaths/space_presentation.hpp"

namespace cpaths {

SpaceMap SpaceMap::create(SpaceRef source, SpaceRef target, std::unordered_map<PointId, PointId> point_map,
                          std::unordered_map<GenId, PathExpr> gen_map) {
  SpaceMap m;
  m.source_ = std::move(source);
  m.target_ = std::move(target);
  m.point_map_ = std::move(point_map);
  m.gen_map_ = std::move(gen_map);

  for (PointId p : m.source_->points()) {
    auto it = m.point_map_.find(p);
    if (it == m.point_map_.end() || !m.target_->has_point(it->second)) {
      throw PathError(ErrorKind::InvalidSpaceMap, "point " + p.name() + " has no image in " + m.target_->name());
    }
  }
  for (const auto& g : m.source_->generators()) {
    auto it = m.gen_map_.find(g.id);
    if (it == m.gen_map_.end()) {
      throw PathError(ErrorKind::InvalidSpaceMap, "generator " + g.id.name() + " has no image");
    }
    Endpoints e = endpoints(*m.target_, it->second);
    if (e.src != m.point_map_.at(g.src) || e.tgt != m.point_map_.at(g.tgt)) {
      throw PathError(ErrorKind::InvalidSpaceMap, "image of " + g.id.name() + " has the wrong endpoints");
    }
  }
  for (const auto& r : m.source_->relations()) {
    if (!rw_eq(*m.target_, map_path(m, r.lhs), map_path(m, r.rhs))) {
      throw PathError(ErrorKind::InvalidSpaceMap, "relation " + r.name.name() + " is not preserved");
    }
  }
  return m;
}

}  // namespace cpaths
