#include "cpaths/pi1.hpp"

#include <charconv>
#include <optional>

#include "cpaths/error.hpp"

namespace cpaths {

GroupTag tag_of(const GroupValue& g) {
  struct {
    GroupTag operator()(const IntValue&) const { return GroupTag::FreeZ; }
    GroupTag operator()(const PairValue&) const { return GroupTag::ZxZ; }
    GroupTag operator()(const SemidirectValue&) const { return GroupTag::ZSemidirectZ; }
    GroupTag operator()(const ParityValue&) const { return GroupTag::Z2; }
  } visitor;
  return std::visit(visitor, g);
}

GroupValue group_identity(GroupTag tag) {
  switch (tag) {
    case GroupTag::FreeZ: return IntValue{};
    case GroupTag::ZxZ: return PairValue{};
    case GroupTag::ZSemidirectZ: return SemidirectValue{};
    case GroupTag::Z2: return ParityValue{};
    case GroupTag::None: break;
  }
  throw PathError(ErrorKind::GroupTagMismatch, "presentation has no group tag");
}

std::string render(const GroupValue& g) {
  if (auto v = std::get_if<IntValue>(&g)) return std::to_string(v->n);
  if (auto v = std::get_if<PairValue>(&g)) return "(" + std::to_string(v->m) + ", " + std::to_string(v->n) + ")";
  if (auto v = std::get_if<SemidirectValue>(&g)) {
    return "(" + std::to_string(v->m) + ", " + std::to_string(v->n) + ")";
  }
  return std::get<ParityValue>(g).odd ? "1" : "0";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

std::optional<long> parse_int(std::string_view s) {
  s = trim(s);
  long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

std::optional<std::pair<long, long>> parse_pair(std::string_view s) {
  s = trim(s);
  if (s.size() < 5 || s.front() != '(' || s.back() != ')') return std::nullopt;
  s = s.substr(1, s.size() - 2);
  auto comma = s.find(',');
  if (comma == std::string_view::npos) return std::nullopt;
  auto m = parse_int(s.substr(0, comma));
  auto n = parse_int(s.substr(comma + 1));
  if (!m || !n) return std::nullopt;
  return std::pair{*m, *n};
}

long neg_one_pow(long k) { return (k % 2 == 0) ? 1 : -1; }

void require_tag(const SpacePresentation& space, const GroupValue& g) {
  if (space.tag() == GroupTag::None || tag_of(g) != space.tag()) {
    throw PathError(ErrorKind::GroupTagMismatch, render(g) + " is not an element of the group of " + space.name() +
                                                     " (" + std::string(group_tag_name(space.tag())) + ")");
  }
}

/// The loop generator a FreeZ space decodes along: the first generator
/// looping at the basepoint.
const Generator& free_loop_generator(const SpacePresentation& space) {
  for (const auto& g : space.generators()) {
    if (g.src == space.basepoint() && g.tgt == space.basepoint()) return g;
  }
  throw PathError(ErrorKind::Internal, space.name() + " has no loop at its basepoint");
}

GroupValue fold(const SpacePresentation& space, const Word& w) {
  switch (space.tag()) {
    case GroupTag::FreeZ: {
      long n = 0;
      for (const auto& l : w.letters) n += l.sign;
      return IntValue{n};
    }
    case GroupTag::ZxZ: {
      PairValue v;
      for (const auto& l : w.letters) (space.generator_index(l.gen) == 0 ? v.m : v.n) += l.sign;
      return v;
    }
    case GroupTag::ZSemidirectZ: {
      // a^{+-1}: (m, n) -> (m +- 1, -n); b^{+-1}: (m, n) -> (m, n +- 1)
      SemidirectValue v;
      for (const auto& l : w.letters) {
        if (space.generator_index(l.gen) == 0) {
          v.m += l.sign;
          v.n = -v.n;
        } else {
          v.n += l.sign;
        }
      }
      return v;
    }
    case GroupTag::Z2: {
      ParityValue v;
      for (std::size_t i = 0; i < w.size(); ++i) v.odd = !v.odd;
      return v;
    }
    case GroupTag::None: break;
  }
  throw PathError(ErrorKind::GroupTagMismatch, space.name() + " has no group tag");
}

}  // namespace

GroupValue parse_group_value(GroupTag tag, std::string_view text) {
  switch (tag) {
    case GroupTag::FreeZ:
      if (auto n = parse_int(text)) return IntValue{*n};
      break;
    case GroupTag::ZxZ:
      if (auto p = parse_pair(text)) return PairValue{p->first, p->second};
      break;
    case GroupTag::ZSemidirectZ:
      if (auto p = parse_pair(text)) return SemidirectValue{p->first, p->second};
      break;
    case GroupTag::Z2: {
      auto t = trim(text);
      if (t == "0") return ParityValue{false};
      if (t == "1") return ParityValue{true};
      break;
    }
    case GroupTag::None:
      throw PathError(ErrorKind::GroupTagMismatch, "presentation has no group tag");
  }
  throw PathError(ErrorKind::ParseError,
                  "'" + std::string(text) + "' is not an element of " + std::string(group_tag_name(tag)));
}

const SpaceMap& cylinder_to_circle() {
  static const SpaceMap m = [] {
    auto pt = Symbol::intern("pt");
    auto a = PathExpr::gen(Symbol::intern("a"));
    return SpaceMap::create(builtin(BuiltinKind::Cylinder), builtin(BuiltinKind::Circle),
                            {{Symbol::intern("b0"), pt}, {Symbol::intern("b1"), pt}},
                            {{Symbol::intern("s"), PathExpr::refl(pt)}, {Symbol::intern("l0"), a},
                             {Symbol::intern("l1"), a}});
  }();
  return m;
}

const SpaceMap& mobius_to_circle() {
  static const SpaceMap m = [] {
    auto pt = Symbol::intern("pt");
    return SpaceMap::create(builtin(BuiltinKind::Mobius), builtin(BuiltinKind::Circle), {{pt, pt}},
                            {{Symbol::intern("a"), PathExpr::gen(Symbol::intern("a"))}});
  }();
  return m;
}

GroupValue encode(const SpaceRef& space, const PathClass& x) {
  if (x.space().name() != space->name()) {
    throw PathError(ErrorKind::SpaceMismatch, x.space().name() + " vs " + space->name());
  }
  if (x.src() != space->basepoint() || x.tgt() != space->basepoint()) {
    throw PathError(ErrorKind::NotABasepointLoop,
                    "class runs " + x.src().name() + " -> " + x.tgt().name() + ", basepoint is " +
                        space->basepoint().name());
  }
  if (space->builtin() == BuiltinKind::Cylinder || space->builtin() == BuiltinKind::Mobius) {
    const SpaceMap& r = *space->builtin() == BuiltinKind::Cylinder ? cylinder_to_circle() : mobius_to_circle();
    PathClass image = class_of(r.target_ref(), map_path(r, x.representative()));
    return fold(r.target(), image.word());
  }
  return fold(*space, x.word());
}

PathClass decode(const SpaceRef& space, const GroupValue& g) {
  require_tag(*space, g);
  const PointId base = space->basepoint();
  auto power = [&](const Generator& gen, long n) {
    return zpow_class(class_of(space, PathExpr::gen(gen.id)), n);
  };
  if (auto v = std::get_if<IntValue>(&g)) return power(free_loop_generator(*space), v->n);
  if (auto v = std::get_if<PairValue>(&g)) {
    return comp(power(space->generators()[0], v->m), power(space->generators()[1], v->n));
  }
  if (auto v = std::get_if<SemidirectValue>(&g)) {
    return comp(power(space->generators()[0], v->m), power(space->generators()[1], v->n));
  }
  if (std::get<ParityValue>(g).odd) return class_of(space, PathExpr::gen(space->generators()[0].id));
  return identity(space, base);
}

GroupValue group_mul(const SpacePresentation& space, const GroupValue& g, const GroupValue& h) {
  require_tag(space, g);
  require_tag(space, h);
  if (auto a = std::get_if<IntValue>(&g)) return IntValue{a->n + std::get<IntValue>(h).n};
  if (auto a = std::get_if<PairValue>(&g)) {
    const auto& b = std::get<PairValue>(h);
    return PairValue{a->m + b.m, a->n + b.n};
  }
  if (auto a = std::get_if<SemidirectValue>(&g)) {
    const auto& b = std::get<SemidirectValue>(h);
    return SemidirectValue{a->m + b.m, neg_one_pow(b.m) * a->n + b.n};
  }
  return ParityValue{std::get<ParityValue>(g).odd != std::get<ParityValue>(h).odd};
}

GroupValue group_inv(const SpacePresentation& space, const GroupValue& g) {
  require_tag(space, g);
  if (auto a = std::get_if<IntValue>(&g)) return IntValue{-a->n};
  if (auto a = std::get_if<PairValue>(&g)) return PairValue{-a->m, -a->n};
  if (auto a = std::get_if<SemidirectValue>(&g)) return SemidirectValue{-a->m, -neg_one_pow(a->m) * a->n};
  return g;
}

bool homomorphism_check(const SpaceRef& space, const PathClass& x, const PathClass& y) {
  return encode(space, comp(x, y)) == group_mul(*space, encode(space, x), encode(space, y));
}

}  // namespace cpaths
