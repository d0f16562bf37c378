#include "cpaths/groupoid.hpp"

#include "cpaths/error.hpp"

namespace cpaths {

PathClass PathClass::from_word(SpaceRef space, const Word& w) {
  NormalForm nf = normalize_word(*space, w);
  return PathClass(std::move(space), std::move(nf));
}

PathClass class_of(SpaceRef space, const PathExpr& p) {
  NormalForm nf = normalize(*space, p);
  return PathClass::from_word(std::move(space), nf.word);
}

PathClass identity(SpaceRef space, PointId point) {
  if (!space->has_point(point)) throw PathError(ErrorKind::UnknownPoint, point.name());
  return PathClass::from_word(std::move(space), Word{{}, point, point});
}

namespace {

void require_same_space(const PathClass& x, const PathClass& y) {
  if (x.space_ref() != y.space_ref() && !(x.space() == y.space())) {
    throw PathError(ErrorKind::SpaceMismatch, x.space().name() + " vs " + y.space().name());
  }
}

}  // namespace

PathClass comp(const PathClass& x, const PathClass& y) {
  require_same_space(x, y);
  return PathClass::from_word(x.space_ref(), concat(x.word(), y.word()));
}

PathClass inv(const PathClass& x) { return PathClass::from_word(x.space_ref(), inverse(x.word())); }

PathClass zpow_class(const PathClass& x, long n) {
  if (!x.is_loop()) {
    throw PathError(ErrorKind::NotALoop, "class runs " + x.src().name() + " -> " + x.tgt().name());
  }
  Word step = n >= 0 ? x.word() : inverse(x.word());
  Word acc{{}, x.src(), x.src()};
  for (long i = 0; i < (n >= 0 ? n : -n); ++i) acc = concat(acc, step);
  return PathClass::from_word(x.space_ref(), acc);
}

}  // namespace cpaths
