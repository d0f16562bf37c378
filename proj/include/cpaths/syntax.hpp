#pragma once

#include <string>
#include <string_view>

#include "cpaths/path_term.hpp"
#include "cpaths/rewrite_engine.hpp"
#include "cpaths/space_presentation.hpp"

namespace cpaths {

/// Parses the path grammar:
///
///   expr    := unary ('*' unary)*          composition, left-associative
///   unary   := '~' unary | postfix         inverse
///   postfix := primary ('^' integer)*      integer power
///   primary := 'refl' | 'refl(' point ')' | generator | '(' expr ')'
///
/// Bare `refl` is only accepted in single-point spaces. Generators may be
/// written by id or display name. Throws ParseError, or the endpoint errors
/// of path_term when the expression is ill-formed.
PathExpr parse_path(const SpacePresentation& space, std::string_view text);

/// Renders a term in the grammar above, preserving its exact structure.
std::string render_path(const SpacePresentation& space, const PathExpr& p);

/// Renders a word with runs collapsed to powers, e.g. `a^2 * ~b`.
std::string render_word(const SpacePresentation& space, const Word& w);

/// Reads the line-oriented presentation format:
///
///   point <name>
///   gen <name> : <src> -> <tgt>
///   rel <name> : <expr> = <expr>
///   base <name>
///
/// `#` starts a comment. Throws ParseError or InvalidPresentation.
SpaceRef parse_space_file(std::string_view text, std::string name);
SpaceRef load_space_file(const std::string& path);

}  // namespace cpaths
