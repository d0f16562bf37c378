#include "cpaths/syntax.hpp"

#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cpaths/error.hpp"

namespace cpaths {

namespace {

enum class Tok { Ident, Int, Star, Tilde, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;
};

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '\'' || c >= 0x80; }

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (ident_start(c)) {
      while (i < text.size() && ident_char(static_cast<unsigned char>(text[i]))) ++i;
      out.push_back({Tok::Ident, std::string(text.substr(start, i - start)), start});
      continue;
    }
    if (std::isdigit(c) || (c == '-' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      out.push_back({Tok::Int, std::string(text.substr(start, i - start)), start});
      continue;
    }
    Tok kind;
    switch (c) {
      case '*': kind = Tok::Star; break;
      case '~': kind = Tok::Tilde; break;
      case '^': kind = Tok::Caret; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      default:
        throw PathError(ErrorKind::ParseError,
                        "unexpected character '" + std::string(1, static_cast<char>(c)) + "' at column " +
                            std::to_string(start + 1));
    }
    out.push_back({kind, std::string(1, static_cast<char>(c)), start});
    ++i;
  }
  out.push_back({Tok::End, "", text.size()});
  return out;
}

class Parser {
 public:
  Parser(const SpacePresentation& space, std::string_view text) : space_(space), tokens_(tokenize(text)) {}

  PathExpr parse() {
    PathExpr e = expr();
    if (peek().kind != Tok::End) fail("unexpected token");
    endpoints(space_, e);
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)]; }
  const Token& take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    std::string shown = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw PathError(ErrorKind::ParseError, what + ": " + shown + " at column " + std::to_string(t.column + 1));
  }

  PathExpr expr() {
    PathExpr acc = unary();
    while (peek().kind == Tok::Star) {
      take();
      PathExpr rhs = unary();
      acc = PathExpr::trans(acc, rhs);
    }
    return acc;
  }

  PathExpr unary() {
    if (peek().kind == Tok::Tilde) {
      take();
      return PathExpr::symm(unary());
    }
    return postfix();
  }

  PathExpr postfix() {
    PathExpr base = primary();
    while (peek().kind == Tok::Caret) {
      take();
      if (peek().kind != Tok::Int) fail("expected an integer exponent");
      const Token& t = take();
      long n = 0;
      auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), n);
      if (ec != std::errc()) fail("exponent out of range");
      base = zpow(space_, base, n);
    }
    return base;
  }

  PathExpr primary() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      take();
      PathExpr inner = expr();
      if (peek().kind != Tok::RParen) fail("expected ')'");
      take();
      return inner;
    }
    if (t.kind != Tok::Ident) fail("expected a generator, 'refl' or '('");
    if (t.text == "refl") {
      take();
      if (peek().kind == Tok::LParen && peek(1).kind == Tok::Ident && peek(2).kind == Tok::RParen &&
          space_.has_point(Symbol::intern(peek(1).text))) {
        take();
        PointId p = Symbol::intern(take().text);
        take();
        return PathExpr::refl(p);
      }
      if (space_.points().size() != 1) {
        throw PathError(ErrorKind::ParseError, "bare 'refl' at column " + std::to_string(t.column + 1) +
                                                   " is ambiguous in a multi-point space; write refl(<point>)");
      }
      return PathExpr::refl(space_.points().front());
    }
    const Generator* g = space_.find_generator_by_name(t.text);
    if (!g) fail("unknown generator");
    take();
    return PathExpr::gen(g->id);
  }

  const SpacePresentation& space_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string refl_text(const SpacePresentation& space, PointId p) {
  return space.points().size() == 1 ? "refl" : "refl(" + p.name() + ")";
}

void render_into(const SpacePresentation& space, const PathExpr& p, std::string& out) {
  switch (p.kind()) {
    case NodeKind::Refl: out += refl_text(space, p.symbol()); return;
    case NodeKind::Gen: out += space.display_name(p.symbol()); return;
    case NodeKind::Symm: {
      PathExpr inner = p.child(0);
      out += '~';
      if (inner.kind() == NodeKind::Trans) {
        out += '(';
        render_into(space, inner, out);
        out += ')';
      } else {
        render_into(space, inner, out);
      }
      return;
    }
    case NodeKind::Trans: {
      render_into(space, p.child(0), out);
      out += " * ";
      PathExpr second = p.child(1);
      if (second.kind() == NodeKind::Trans) {
        out += '(';
        render_into(space, second, out);
        out += ')';
      } else {
        render_into(space, second, out);
      }
      return;
    }
  }
}

}  // namespace

PathExpr parse_path(const SpacePresentation& space, std::string_view text) { return Parser(space, text).parse(); }

std::string render_path(const SpacePresentation& space, const PathExpr& p) {
  std::string out;
  render_into(space, p, out);
  return out;
}

std::string render_word(const SpacePresentation& space, const Word& w) {
  if (w.empty()) return refl_text(space, w.src);
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w.letters[j] == w.letters[i]) ++j;
    const std::size_t run = j - i;
    const std::string& name = space.display_name(w.letters[i].gen);
    if (!out.empty()) out += " * ";
    if (run == 1) {
      out += (w.letters[i].sign > 0 ? "" : "~") + name;
    } else {
      out += name + "^" + (w.letters[i].sign > 0 ? "" : "-") + std::to_string(run);
    }
    i = j;
  }
  return out;
}

SpaceRef parse_space_file(std::string_view text, std::string name) {
  std::vector<PointId> points;
  std::vector<Generator> gens;
  std::vector<Relation> rels;
  std::optional<PointId> base;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) -> void {
    throw PathError(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": " + what);
  };
  auto current = [&] { return SpacePresentation(name, points, gens, rels, base.value_or(Symbol())); };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string keyword;
    if (!(words >> keyword)) continue;
    if (keyword == "point") {
      std::string p, extra;
      if (!(words >> p) || (words >> extra)) fail("expected 'point <name>'");
      points.push_back(Symbol::intern(p));
    } else if (keyword == "base") {
      std::string p, extra;
      if (!(words >> p) || (words >> extra)) fail("expected 'base <name>'");
      base = Symbol::intern(p);
    } else if (keyword == "gen") {
      std::string id, colon, src, arrow, tgt, extra;
      if (!(words >> id >> colon >> src >> arrow >> tgt) || colon != ":" || arrow != "->" || (words >> extra)) {
        fail("expected 'gen <name> : <src> -> <tgt>'");
      }
      gens.push_back({Symbol::intern(id), Symbol::intern(src), Symbol::intern(tgt), ""});
    } else if (keyword == "rel") {
      std::string id, colon;
      if (!(words >> id >> colon) || colon != ":") fail("expected 'rel <name> : <expr> = <expr>'");
      std::string rest;
      std::getline(words, rest);
      auto eq = rest.find('=');
      if (eq == std::string::npos) fail("relation needs '='");
      SpacePresentation space = current();
      try {
        rels.push_back({Symbol::intern(id), parse_path(space, rest.substr(0, eq)), parse_path(space, rest.substr(eq + 1))});
      } catch (const PathError& e) {
        fail(std::string("relation ") + id + ": " + e.what());
      }
    } else {
      fail("unknown directive '" + keyword + "'");
    }
  }
  if (!base) throw PathError(ErrorKind::InvalidPresentation, "no 'base' line");
  auto space = std::make_shared<const SpacePresentation>(current());
  auto violations = validate(*space);
  if (!violations.empty()) {
    std::string msg;
    for (const auto& v : violations) {
      if (!msg.empty()) msg += "; ";
      msg += std::string(violation_kind_name(v.kind)) + " " + v.subject + " (" + v.detail + ")";
    }
    throw PathError(ErrorKind::InvalidPresentation, msg);
  }
  return space;
}

SpaceRef load_space_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PathError(ErrorKind::InvalidPresentation, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_space_file(buf.str(), std::filesystem::path(path).stem().string());
}

}  // namespace cpaths
