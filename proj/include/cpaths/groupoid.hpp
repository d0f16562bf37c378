#pragma once

#include "cpaths/path_term.hpp"
#include "cpaths/rewrite_engine.hpp"
#include "cpaths/space_presentation.hpp"

namespace cpaths {

/// Rewrite-equality class of paths, stored by its normal form. These are the
/// morphisms of the strict groupoid: composition is strictly associative with
/// strict units and inverses.
class PathClass {
 public:
  /// Normalizes `w`; the result is the class of any term reading as `w`.
  static PathClass from_word(SpaceRef space, const Word& w);

  const SpacePresentation& space() const { return *space_; }
  const SpaceRef& space_ref() const { return space_; }
  const NormalForm& normal_form() const { return nf_; }
  const Word& word() const { return nf_.word; }
  PointId src() const { return nf_.word.src; }
  PointId tgt() const { return nf_.word.tgt; }
  bool is_loop() const { return src() == tgt(); }

  /// Left-nested term spelling the normal form.
  PathExpr representative() const { return term_of(nf_.word); }

  friend bool operator==(const PathClass& a, const PathClass& b) {
    return a.space_->name() == b.space_->name() && a.nf_ == b.nf_;
  }

 private:
  PathClass(SpaceRef space, NormalForm nf) : space_(std::move(space)), nf_(std::move(nf)) {}

  SpaceRef space_;
  NormalForm nf_;
};

PathClass class_of(SpaceRef space, const PathExpr& p);
PathClass identity(SpaceRef space, PointId point);

/// Throws SpaceMismatch or EndpointMismatch.
PathClass comp(const PathClass& x, const PathClass& y);
PathClass inv(const PathClass& x);
/// Throws NotALoop.
PathClass zpow_class(const PathClass& x, long n);

}  // namespace cpaths
