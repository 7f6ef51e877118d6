#pragma once

// The .fincat document format: parser with error recovery, and serializer.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fincat/biset.hpp"
#include "fincat/catset.hpp"
#include "fincat/category.hpp"
#include "fincat/corresp.hpp"
#include "fincat/functor.hpp"

namespace fincat::dsl {

struct ParseError {
  std::size_t line = 0;
  std::size_t column = 0;
  std::string message;
  std::vector<std::string> expected;
  bool semantic = false;  // raised while validating a block, not by the grammar

  std::string to_string() const {
    std::string s = std::to_string(line) + ":" + std::to_string(column) + ": " + message;
    if (!expected.empty()) {
      s += " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) s += (i ? " or " : "") + expected[i];
      s += ")";
    }
    return s;
  }
};

class DocumentError : public Error {
 public:
  explicit DocumentError(std::vector<ParseError> errors)
      : Error(ErrorKind::Parse, summary(errors)), errors_(std::move(errors)) {}
  const std::vector<ParseError>& errors() const { return errors_; }
  bool syntax() const {
    for (const auto& e : errors_)
      if (!e.semantic) return true;
    return false;
  }

 private:
  static std::string summary(const std::vector<ParseError>& es) {
    std::string s;
    for (const auto& e : es) s += (s.empty() ? "" : "\n") + e.to_string();
    return s;
  }
  std::vector<ParseError> errors_;
};

struct CategoryBlock {
  std::string name;
  CatPtr cat;
};

struct FunctorBlock {
  std::string name;
  std::string source, target;
  CatFunctor functor;
};

struct CSetBlock {
  std::string name;
  std::string over;
  CSet set;
  std::vector<std::vector<std::string>> elements;  // [object][index]
};

struct BisetBlock {
  std::string name;
  std::string left, right;
  Biset biset;
  std::vector<std::vector<std::vector<std::string>>> elements;  // [x][y][index]
};

struct CorrespBlock {
  std::string name;
  Correspondence corresp;
};

using Block = std::variant<CategoryBlock, FunctorBlock, CSetBlock, BisetBlock, CorrespBlock>;

struct Document {
  std::vector<Block> blocks;

  template <typename T>
  const T* find(const std::string& name) const {
    for (const auto& b : blocks)
      if (auto p = std::get_if<T>(&b); p && p->name == name) return p;
    return nullptr;
  }
  template <typename T>
  std::vector<const T*> all() const {
    std::vector<const T*> out;
    for (const auto& b : blocks)
      if (auto p = std::get_if<T>(&b)) out.push_back(p);
    return out;
  }
  template <typename T>
  const T& get(const std::string& name) const {
    if (auto p = find<T>(name)) return *p;
    throw Error(ErrorKind::PreconditionFails, "no block named '" + name + "' of the requested kind");
  }
};

inline const std::string& block_name(const Block& b) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, b);
}

inline const char* block_kind(const Block& b) {
  static const char* names[] = {"category", "functor", "cset", "biset", "corresp"};
  return names[b.index()];
}

namespace detail {

enum class Tok { Word, String, LBrace, RBrace, LParen, RParen, Comma, Colon, Equals, Arrow, End, Bad };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1, col = 1;
};

inline bool word_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '\'' || c == '.' || c >= 0x80;
}

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k && i < src.size(); ++j, ++i) {
      if (src[i] == '\n') { ++line; col = 1; }
      else ++col;
    }
  };
  while (i < src.size()) {
    unsigned char c = static_cast<unsigned char>(src[i]);
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(c)) { advance(1); continue; }
    Token t;
    t.line = line;
    t.col = col;
    if (c == '"') {
      advance(1);
      t.kind = Tok::String;
      bool closed = false;
      while (i < src.size() && src[i] != '\n') {
        if (src[i] == '"') { closed = true; advance(1); break; }
        if (src[i] == '\\' && i + 1 < src.size()) advance(1);
        t.text += src[i];
        advance(1);
      }
      if (!closed) { t.kind = Tok::Bad; t.text = "unterminated string"; }
      out.push_back(std::move(t));
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      t.kind = Tok::Arrow;
      t.text = "->";
      advance(2);
      out.push_back(std::move(t));
      continue;
    }
    if (word_char(c)) {
      t.kind = Tok::Word;
      while (i < src.size() && word_char(static_cast<unsigned char>(src[i]))) { t.text += src[i]; advance(1); }
      out.push_back(std::move(t));
      continue;
    }
    switch (c) {
      case '{': t.kind = Tok::LBrace; break;
      case '}': t.kind = Tok::RBrace; break;
      case '(': t.kind = Tok::LParen; break;
      case ')': t.kind = Tok::RParen; break;
      case ',': t.kind = Tok::Comma; break;
      case ':': t.kind = Tok::Colon; break;
      case '=': t.kind = Tok::Equals; break;
      default: t.kind = Tok::Bad; break;
    }
    t.text = std::string(1, static_cast<char>(c));
    advance(1);
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

inline const char* describe(Tok k) {
  switch (k) {
    case Tok::Word: return "name";
    case Tok::String: return "string";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Colon: return "':'";
    case Tok::Equals: return "'='";
    case Tok::Arrow: return "'->'";
    case Tok::End: return "end of input";
    case Tok::Bad: return "invalid character";
  }
  return "?";
}

inline const std::set<std::string>& block_keywords() {
  static const std::set<std::string> k{"category", "functor", "cset", "biset", "corresp"};
  return k;
}

inline const std::set<std::string>& keywords() {
  static const std::set<std::string> k{"category", "functor", "cset", "biset", "corresp", "objects", "mor",
                                       "compose", "over", "at", "map", "lmap", "rmap", "obj"};
  return k;
}

struct SyntaxError {
  ParseError error;
};

// A name together with where it was written.
struct Name {
  std::string text;
  std::size_t line = 0, col = 0;
};

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(lex(src)) {}

  Document run(std::vector<ParseError>& errors) {
    Document doc;
    while (peek().kind != Tok::End) {
      std::size_t start = pos_;
      try {
        const Token& t = peek();
        if (t.kind != Tok::Word || !block_keywords().count(t.text))
          fail(t, "expected a block", {"category", "functor", "cset", "biset", "corresp"});
        parse_block(doc, errors);
      } catch (const SyntaxError& e) {
        errors.push_back(e.error);
        if (pos_ == start) ++pos_;
        while (peek().kind != Tok::End && !(peek().kind == Tok::Word && block_keywords().count(peek().text))) ++pos_;
      }
    }
    return doc;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const Token& t, std::string msg, std::vector<std::string> expected = {}) {
    if (t.kind == Tok::Bad) msg = t.text == "unterminated string" ? t.text : "unexpected character '" + t.text + "'";
    throw SyntaxError{{t.line, t.col, std::move(msg), std::move(expected), false}};
  }

  bool at_keyword(const char* kw) const { return peek().kind == Tok::Word && peek().text == kw; }

  void expect_keyword(const char* kw) {
    if (!at_keyword(kw)) fail(peek(), std::string("expected '") + kw + "'", {std::string("'") + kw + "'"});
    next();
  }

  void expect(Tok k) {
    if (peek().kind != k) fail(peek(), std::string("expected ") + describe(k), {describe(k)});
    next();
  }

  bool at_name() const { return peek().kind == Tok::String || (peek().kind == Tok::Word && !keywords().count(peek().text)); }

  Name name(const char* what) {
    const Token& t = peek();
    if (t.kind == Tok::String || t.kind == Tok::Word) {
      if (t.kind == Tok::Word && keywords().count(t.text))
        fail(t, std::string("keyword '") + t.text + "' used as " + what + "; quote it", {what});
      next();
      return {t.text, t.line, t.col};
    }
    fail(t, std::string("expected ") + what, {what});
  }

  static ParseError semantic(std::size_t line, std::size_t col, std::string msg) {
    return {line, col, std::move(msg), {}, true};
  }

  void add_block(Document& doc, Block b, const Name& n, std::vector<ParseError>& errors) {
    for (const auto& other : doc.blocks)
      if (other.index() == b.index() && block_name(other) == n.text) {
        errors.push_back(semantic(n.line, n.col, std::string("duplicate ") + block_kind(b) + " '" + n.text + "'"));
        return;
      }
    doc.blocks.push_back(std::move(b));
  }

  void parse_block(Document& doc, std::vector<ParseError>& errors) {
    const std::string kw = peek().text;
    if (kw == "category") parse_category(doc, errors);
    else if (kw == "functor") parse_functor(doc, errors);
    else if (kw == "cset") parse_cset(doc, errors);
    else if (kw == "biset") parse_biset(doc, errors);
    else parse_corresp(doc, errors);
  }

  // Runs a block builder, turning library errors into semantic errors at
  // the block keyword.
  template <typename F>
  void guarded(const Token& at, const Name& n, std::vector<ParseError>& errors, F&& build) {
    try {
      build();
    } catch (const SyntaxError& e) {
      errors.push_back(e.error);
    } catch (const Error& e) {
      errors.push_back(semantic(at.line, at.col, "in '" + n.text + "': " + e.what()));
    }
  }

  [[noreturn]] static void sem_fail(const Name& where, std::string msg) {
    throw SyntaxError{semantic(where.line, where.col, std::move(msg))};
  }

  void parse_category(Document& doc, std::vector<ParseError>& errors) {
    Token kw = next();
    Name n = name("category name");
    expect(Tok::LBrace);
    expect_keyword("objects");
    std::vector<Name> objects;
    while (at_name()) objects.push_back(name("object name"));
    if (objects.empty() && !at_keyword("mor") && !at_keyword("compose") && peek().kind != Tok::RBrace)
      fail(peek(), "expected object name", {"object name"});
    struct Mor { Name name, dom, cod; };
    std::vector<Mor> mors;
    while (at_keyword("mor")) {
      next();
      Mor m;
      m.name = name("morphism name");
      expect(Tok::Colon);
      m.dom = name("object name");
      expect(Tok::Arrow);
      m.cod = name("object name");
      mors.push_back(std::move(m));
    }
    struct Comp { Name g, f, h; };
    std::vector<Comp> comps;
    while (at_keyword("compose")) {
      next();
      Comp c;
      c.g = name("morphism name");
      c.f = name("morphism name");
      expect(Tok::Equals);
      c.h = name("morphism name");
      comps.push_back(std::move(c));
    }
    if (peek().kind != Tok::RBrace) fail(peek(), "expected '}'", {"'mor'", "'compose'", "'}'"});
    next();

    guarded(kw, n, errors, [&] {
      std::vector<std::string> obj_names;
      std::map<std::string, std::size_t> obj_index;
      for (const auto& o : objects) {
        if (obj_index.count(o.text)) sem_fail(o, "duplicate object '" + o.text + "'");
        obj_index[o.text] = obj_names.size();
        obj_names.push_back(o.text);
      }
      RawCategory raw = raw_with_identities(obj_names);
      std::map<std::string, std::size_t> mor_index;
      for (std::size_t x = 0; x < obj_names.size(); ++x) mor_index["id_" + obj_names[x]] = x;
      auto object = [&](const Name& o) {
        auto it = obj_index.find(o.text);
        if (it == obj_index.end()) sem_fail(o, "unknown object '" + o.text + "'");
        return it->second;
      };
      for (const auto& m : mors) {
        if (mor_index.count(m.name.text)) sem_fail(m.name, "duplicate morphism '" + m.name.text + "'");
        mor_index[m.name.text] = raw.morphisms.size();
        raw.morphisms.push_back({object(m.dom), object(m.cod), m.name.text});
      }
      const std::size_t nm = raw.morphisms.size(), no = obj_names.size();
      raw.comp.assign(nm * nm, npos);
      for (std::size_t f = 0; f < nm; ++f) {
        raw.comp[raw.morphisms[f].cod * nm + f] = f;
        raw.comp[f * nm + raw.morphisms[f].dom] = f;
      }
      auto morphism = [&](const Name& m) {
        auto it = mor_index.find(m.text);
        if (it == mor_index.end()) sem_fail(m, "unknown morphism '" + m.text + "'");
        return it->second;
      };
      for (const auto& c : comps) {
        std::size_t g = morphism(c.g), f = morphism(c.f), h = morphism(c.h);
        if (g < no || f < no) sem_fail(c.g, "compositions with identities are implicit");
        if (raw.morphisms[g].dom != raw.morphisms[f].cod)
          sem_fail(c.g, "'" + c.g.text + "' and '" + c.f.text + "' are not composable");
        if (raw.morphisms[h].dom != raw.morphisms[f].dom || raw.morphisms[h].cod != raw.morphisms[g].cod)
          sem_fail(c.h, "'" + c.h.text + "' has the wrong endpoints for this composite");
        std::size_t& slot = raw.comp[g * nm + f];
        if (slot != npos && slot != h) sem_fail(c.g, "composite of '" + c.g.text + "' and '" + c.f.text + "' given twice");
        slot = h;
      }
      // Unlisted composites are inferred when the hom set has one element.
      for (std::size_t g = no; g < nm; ++g)
        for (std::size_t f = no; f < nm; ++f) {
          if (raw.morphisms[g].dom != raw.morphisms[f].cod || raw.comp[g * nm + f] != npos) continue;
          std::vector<std::size_t> cands;
          for (std::size_t h = 0; h < nm; ++h)
            if (raw.morphisms[h].dom == raw.morphisms[f].dom && raw.morphisms[h].cod == raw.morphisms[g].cod) cands.push_back(h);
          if (cands.size() != 1)
            sem_fail(n, "composite of '" + raw.morphisms[g].name + "' and '" + raw.morphisms[f].name +
                            "' is missing and cannot be inferred");
          raw.comp[g * nm + f] = cands.front();
        }
      add_block(doc, CategoryBlock{n.text, FinCat::make(std::move(raw))}, n, errors);
    });
  }

  const CategoryBlock& category_ref(const Document& doc, const Name& n) {
    auto p = doc.find<CategoryBlock>(n.text);
    if (!p) sem_fail(n, "unknown category '" + n.text + "'");
    return *p;
  }

  static std::size_t find_obj(const FinCat& c, const Name& n) {
    std::size_t x = c.find_object(n.text);
    if (x == npos) sem_fail(n, "unknown object '" + n.text + "'");
    return x;
  }

  static std::size_t find_mor(const FinCat& c, const Name& n, bool allow_identity) {
    std::size_t f = npos;
    for (std::size_t x = 0; x < c.num_objects(); ++x)
      if ("id_" + c.object_name(x) == n.text) f = x;
    if (f == npos)
      for (std::size_t g = c.num_objects(); g < c.num_morphisms(); ++g)
        if (c.morphism_name(g) == n.text) f = g;
    if (f == npos) sem_fail(n, "unknown morphism '" + n.text + "'");
    if (!allow_identity && f < c.num_objects()) sem_fail(n, "identities act trivially and are not listed");
    return f;
  }

  void parse_functor(Document& doc, std::vector<ParseError>& errors) {
    Token kw = next();
    Name n = name("functor name");
    expect(Tok::Colon);
    Name src = name("category name");
    expect(Tok::Arrow);
    Name tgt = name("category name");
    expect(Tok::LBrace);
    std::vector<std::pair<Name, Name>> objs, mors;
    while (at_keyword("obj")) {
      next();
      Name a = name("object name");
      expect(Tok::Arrow);
      objs.emplace_back(a, name("object name"));
    }
    while (at_keyword("mor")) {
      next();
      Name a = name("morphism name");
      expect(Tok::Arrow);
      mors.emplace_back(a, name("morphism name"));
    }
    if (peek().kind != Tok::RBrace) fail(peek(), "expected '}'", {"'obj'", "'mor'", "'}'"});
    next();

    guarded(kw, n, errors, [&] {
      const CatPtr& s = category_ref(doc, src).cat;
      const CatPtr& t = category_ref(doc, tgt).cat;
      std::vector<std::size_t> om(s->num_objects(), npos), mm(s->num_morphisms(), npos);
      for (auto& [a, b] : objs) {
        std::size_t x = find_obj(*s, a);
        if (om[x] != npos) sem_fail(a, "object '" + a.text + "' mapped twice");
        om[x] = find_obj(*t, b);
      }
      for (std::size_t x = 0; x < om.size(); ++x) {
        if (om[x] == npos) sem_fail(n, "object '" + s->object_name(x) + "' is not mapped");
        mm[x] = om[x];
      }
      for (auto& [a, b] : mors) {
        std::size_t f = find_mor(*s, a, false);
        if (mm[f] != npos) sem_fail(a, "morphism '" + a.text + "' mapped twice");
        mm[f] = find_mor(*t, b, true);
      }
      for (std::size_t f = s->num_objects(); f < s->num_morphisms(); ++f) {
        if (mm[f] != npos) continue;
        const auto& h = t->hom(om[s->dom(f)], om[s->cod(f)]);
        if (h.size() != 1) sem_fail(n, "image of '" + s->morphism_name(f) + "' is missing and cannot be inferred");
        mm[f] = h.front();
      }
      CatFunctor F = make_functor(s, t, om, mm);
      add_block(doc, FunctorBlock{n.text, src.text, tgt.text, std::move(F)}, n, errors);
    });
  }

  struct MapLine {
    Name mor;
    std::vector<std::pair<Name, Name>> pairs;
  };

  MapLine map_line() {
    MapLine m;
    m.mor = name("morphism name");
    expect(Tok::Colon);
    while (at_name()) {
      Name a = name("element name");
      expect(Tok::Arrow);
      m.pairs.emplace_back(a, name("element name"));
    }
    return m;
  }

  void parse_cset(Document& doc, std::vector<ParseError>& errors) {
    Token kw = next();
    Name n = name("set name");
    expect_keyword("over");
    Name over = name("category name");
    expect(Tok::LBrace);
    std::vector<std::pair<Name, std::vector<Name>>> ats;
    while (at_keyword("at")) {
      next();
      Name o = name("object name");
      expect(Tok::Colon);
      std::vector<Name> elems;
      while (at_name()) elems.push_back(name("element name"));
      ats.emplace_back(o, std::move(elems));
    }
    std::vector<MapLine> maps;
    while (at_keyword("map")) {
      next();
      maps.push_back(map_line());
    }
    if (peek().kind != Tok::RBrace) fail(peek(), "expected '}'", {"'at'", "'map'", "'}'"});
    next();

    guarded(kw, n, errors, [&] {
      const CatPtr& c = category_ref(doc, over).cat;
      std::vector<std::vector<std::string>> elems(c->num_objects());
      std::map<std::string, ElemRef> where;
      std::vector<bool> seen(c->num_objects(), false);
      for (auto& [o, es] : ats) {
        std::size_t x = find_obj(*c, o);
        if (seen[x]) sem_fail(o, "object '" + o.text + "' listed twice");
        seen[x] = true;
        for (const auto& e : es) {
          if (where.count(e.text)) sem_fail(e, "duplicate element '" + e.text + "'");
          where[e.text] = {x, elems[x].size()};
          elems[x].push_back(e.text);
        }
      }
      std::vector<std::size_t> sizes;
      for (const auto& v : elems) sizes.push_back(v.size());
      ActionTables act(c->num_morphisms());
      for (std::size_t f = 0; f < c->num_morphisms(); ++f) act[f].assign(sizes[c->dom(f)], npos);
      for (std::size_t x = 0; x < c->num_objects(); ++x)
        for (std::size_t u = 0; u < sizes[x]; ++u) act[x][u] = u;
      auto element = [&](const Name& e) {
        auto it = where.find(e.text);
        if (it == where.end()) sem_fail(e, "unknown element '" + e.text + "'");
        return it->second;
      };
      for (const auto& m : maps) {
        std::size_t f = find_mor(*c, m.mor, false);
        for (auto& [a, b] : m.pairs) {
          ElemRef u = element(a), v = element(b);
          if (u.object != c->dom(f)) sem_fail(a, "'" + a.text + "' is not at the domain of '" + m.mor.text + "'");
          if (v.object != c->cod(f)) sem_fail(b, "'" + b.text + "' is not at the codomain of '" + m.mor.text + "'");
          if (act[f][u.index] != npos) sem_fail(a, "'" + a.text + "' mapped twice");
          act[f][u.index] = v.index;
        }
      }
      for (std::size_t f = c->num_objects(); f < c->num_morphisms(); ++f)
        for (std::size_t u = 0; u < act[f].size(); ++u) {
          if (act[f][u] != npos) continue;
          if (sizes[c->cod(f)] != 1)
            sem_fail(n, "image of '" + elems[c->dom(f)][u] + "' under '" + c->morphism_name(f) + "' is missing");
          act[f][u] = 0;
        }
      CSet s(c, sizes, act);
      add_block(doc, CSetBlock{n.text, over.text, std::move(s), std::move(elems)}, n, errors);
    });
  }

  void parse_biset(Document& doc, std::vector<ParseError>& errors) {
    Token kw = next();
    Name n = name("biset name");
    expect_keyword("over");
    expect(Tok::LParen);
    Name left = name("category name");
    expect(Tok::Comma);
    Name right = name("category name");
    expect(Tok::RParen);
    expect(Tok::LBrace);
    struct At { Name x, y; std::vector<Name> elems; };
    std::vector<At> ats;
    while (at_keyword("at")) {
      next();
      At a;
      expect(Tok::LParen);
      a.x = name("object name");
      expect(Tok::Comma);
      a.y = name("object name");
      expect(Tok::RParen);
      expect(Tok::Colon);
      while (at_name()) a.elems.push_back(name("element name"));
      ats.push_back(std::move(a));
    }
    std::vector<MapLine> lmaps, rmaps;
    while (at_keyword("lmap") || at_keyword("rmap")) {
      bool l = next().text == "lmap";
      (l ? lmaps : rmaps).push_back(map_line());
    }
    if (peek().kind != Tok::RBrace) fail(peek(), "expected '}'", {"'at'", "'lmap'", "'rmap'", "'}'"});
    next();

    guarded(kw, n, errors, [&] {
      const CatPtr& C = category_ref(doc, left).cat;
      const CatPtr& D = category_ref(doc, right).cat;
      const std::size_t nc = C->num_objects(), nd = D->num_objects();
      std::vector<std::vector<std::vector<std::string>>> elems(nc, std::vector<std::vector<std::string>>(nd));
      struct Where { std::size_t x, y, i; };
      std::map<std::string, Where> where;
      std::set<std::pair<std::size_t, std::size_t>> seen;
      for (const auto& a : ats) {
        std::size_t x = find_obj(*C, a.x), y = find_obj(*D, a.y);
        if (!seen.insert({x, y}).second) sem_fail(a.x, "cell (" + a.x.text + "," + a.y.text + ") listed twice");
        for (const auto& e : a.elems) {
          if (where.count(e.text)) sem_fail(e, "duplicate element '" + e.text + "'");
          where[e.text] = {x, y, elems[x][y].size()};
          elems[x][y].push_back(e.text);
        }
      }
      auto element = [&](const Name& e) {
        auto it = where.find(e.text);
        if (it == where.end()) sem_fail(e, "unknown element '" + e.text + "'");
        return it->second;
      };
      // lact[alpha][y][u], ract[beta][x][u]
      std::vector<std::vector<std::vector<std::size_t>>> lact(C->num_morphisms()), ract(D->num_morphisms());
      for (std::size_t a = 0; a < C->num_morphisms(); ++a) {
        lact[a].resize(nd);
        for (std::size_t y = 0; y < nd; ++y) {
          lact[a][y].assign(elems[C->dom(a)][y].size(), npos);
          if (a < nc)
            for (std::size_t u = 0; u < lact[a][y].size(); ++u) lact[a][y][u] = u;
        }
      }
      for (std::size_t b = 0; b < D->num_morphisms(); ++b) {
        ract[b].resize(nc);
        for (std::size_t x = 0; x < nc; ++x) {
          ract[b][x].assign(elems[x][D->cod(b)].size(), npos);
          if (b < nd)
            for (std::size_t u = 0; u < ract[b][x].size(); ++u) ract[b][x][u] = u;
        }
      }
      for (const auto& m : lmaps) {
        std::size_t a = find_mor(*C, m.mor, false);
        for (auto& [p, q] : m.pairs) {
          Where u = element(p), v = element(q);
          if (u.x != C->dom(a) || v.x != C->cod(a) || u.y != v.y)
            sem_fail(p, "'" + p.text + " -> " + q.text + "' does not fit '" + m.mor.text + "' acting on the left");
          if (lact[a][u.y][u.i] != npos) sem_fail(p, "'" + p.text + "' mapped twice");
          lact[a][u.y][u.i] = v.i;
        }
      }
      for (const auto& m : rmaps) {
        std::size_t b = find_mor(*D, m.mor, false);
        for (auto& [p, q] : m.pairs) {
          Where u = element(p), v = element(q);
          if (u.y != D->cod(b) || v.y != D->dom(b) || u.x != v.x)
            sem_fail(p, "'" + p.text + " -> " + q.text + "' does not fit '" + m.mor.text + "' acting on the right");
          if (ract[b][u.x][u.i] != npos) sem_fail(p, "'" + p.text + "' mapped twice");
          ract[b][u.x][u.i] = v.i;
        }
      }
      for (std::size_t a = nc; a < C->num_morphisms(); ++a)
        for (std::size_t y = 0; y < nd; ++y)
          for (std::size_t u = 0; u < lact[a][y].size(); ++u) {
            if (lact[a][y][u] != npos) continue;
            if (elems[C->cod(a)][y].size() != 1)
              sem_fail(n, "image of '" + elems[C->dom(a)][y][u] + "' under '" + C->morphism_name(a) + "' is missing");
            lact[a][y][u] = 0;
          }
      for (std::size_t b = nd; b < D->num_morphisms(); ++b)
        for (std::size_t x = 0; x < nc; ++x)
          for (std::size_t u = 0; u < ract[b][x].size(); ++u) {
            if (ract[b][x][u] != npos) continue;
            if (elems[x][D->dom(b)].size() != 1)
              sem_fail(n, "image of '" + elems[x][D->cod(b)][u] + "' under '" + D->morphism_name(b) + "' is missing");
            ract[b][x][u] = 0;
          }
      SizeMatrix sizes(nc, std::vector<std::size_t>(nd));
      for (std::size_t x = 0; x < nc; ++x)
        for (std::size_t y = 0; y < nd; ++y) sizes[x][y] = elems[x][y].size();
      // (alpha, beta) acts as alpha on the left after beta on the right.
      Biset b = make_biset(C, D, sizes, [&](std::size_t a, std::size_t bt, std::size_t u) {
        std::size_t x = C->dom(a);
        std::size_t v = ract[bt][x][u];
        return lact[a][D->dom(bt)][v];
      });
      add_block(doc, BisetBlock{n.text, left.text, right.text, std::move(b), std::move(elems)}, n, errors);
    });
  }

  std::size_t integer(const char* what) {
    const Token& t = peek();
    if (t.kind != Tok::Word || t.text.empty() || t.text.size() > 6 ||
        !std::all_of(t.text.begin(), t.text.end(), [](unsigned char c) { return std::isdigit(c); }))
      fail(t, std::string("expected ") + what, {what});
    next();
    return std::stoul(t.text);
  }

  void parse_corresp(Document& doc, std::vector<ParseError>& errors) {
    Token kw = next();
    Name n = name("correspondence name");
    expect(Tok::Colon);
    std::size_t ny = integer("row count");
    expect_keyword("x");
    std::size_t nx = integer("column count");
    expect(Tok::LBrace);
    std::vector<Token> rows;
    while (peek().kind == Tok::Word) rows.push_back(next());
    if (peek().kind != Tok::RBrace) fail(peek(), "expected '}'", {"bit row", "'}'"});
    next();

    guarded(kw, n, errors, [&] {
      if (ny > 16 || nx > 16) sem_fail(n, "correspondences are limited to 16 x 16");
      std::size_t want = nx == 0 ? 0 : ny;
      if (rows.size() != want)
        sem_fail(n, "expected " + std::to_string(want) + " bit rows, found " + std::to_string(rows.size()));
      Correspondence u(ny, nx);
      for (std::size_t y = 0; y < rows.size(); ++y) {
        const Token& r = rows[y];
        Name where{r.text, r.line, r.col};
        if (r.text.size() != nx) sem_fail(where, "bit row '" + r.text + "' should have " + std::to_string(nx) + " digits");
        for (std::size_t x = 0; x < nx; ++x) {
          if (r.text[x] != '0' && r.text[x] != '1') sem_fail(where, "bit rows use 0 and 1 only");
          u.set(y, x, r.text[x] == '1');
        }
      }
      add_block(doc, CorrespBlock{n.text, std::move(u)}, n, errors);
    });
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

inline bool plain_name(const std::string& s) {
  if (s.empty() || keywords().count(s)) return false;
  for (unsigned char c : s)
    if (!word_char(c)) return false;
  return true;
}

inline std::string quote(const std::string& s) {
  if (plain_name(s)) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') q += '\\';
    q += c;
  }
  return q + "\"";
}

}  // namespace detail

struct ParseResult {
  Document document;
  std::vector<ParseError> errors;
  bool ok() const { return errors.empty(); }
};

// Collects every error; blocks that fail are left out of the document.
inline ParseResult parse_document(const std::string& text) {
  ParseResult r;
  detail::Parser p(text);
  r.document = p.run(r.errors);
  return r;
}

inline Document parse(const std::string& text) {
  ParseResult r = parse_document(text);
  if (!r.ok()) throw DocumentError(std::move(r.errors));
  return std::move(r.document);
}

// Default element names for sets built in code.
inline std::vector<std::vector<std::string>> default_element_names(const CSet& s) {
  std::vector<std::vector<std::string>> out(s.sizes().size());
  for (std::size_t x = 0; x < out.size(); ++x)
    for (std::size_t u = 0; u < s.size(x); ++u) out[x].push_back("e" + std::to_string(s.flat({x, u})));
  return out;
}

inline std::vector<std::vector<std::vector<std::string>>> default_element_names(const Biset& b) {
  const std::size_t nc = b.left_cat()->num_objects(), nd = b.right_cat()->num_objects();
  std::vector<std::vector<std::vector<std::string>>> out(nc, std::vector<std::vector<std::string>>(nd));
  for (std::size_t x = 0; x < nc; ++x)
    for (std::size_t y = 0; y < nd; ++y)
      for (std::size_t u = 0; u < b.value_size(x, y); ++u)
        out[x][y].push_back("e" + std::to_string(b.carrier().flat({b.object(x, y), u})));
  return out;
}

inline std::string serialize(const Document& doc) {
  using detail::quote;
  std::ostringstream os;
  bool first = true;
  for (const auto& blk : doc.blocks) {
    if (!first) os << "\n";
    first = false;
    if (auto p = std::get_if<CategoryBlock>(&blk)) {
      const FinCat& c = *p->cat;
      os << "category " << quote(p->name) << " {\n  objects";
      for (std::size_t x = 0; x < c.num_objects(); ++x) os << " " << quote(c.object_name(x));
      os << "\n";
      for (std::size_t f = c.num_objects(); f < c.num_morphisms(); ++f)
        os << "  mor " << quote(c.morphism_name(f)) << " : " << quote(c.object_name(c.dom(f))) << " -> "
           << quote(c.object_name(c.cod(f))) << "\n";
      auto mname = [&](std::size_t f) { return f < c.num_objects() ? quote("id_" + c.object_name(f)) : quote(c.morphism_name(f)); };
      for (std::size_t g = c.num_objects(); g < c.num_morphisms(); ++g)
        for (std::size_t f = c.num_objects(); f < c.num_morphisms(); ++f)
          if (c.dom(g) == c.cod(f)) os << "  compose " << mname(g) << " " << mname(f) << " = " << mname(c.compose(g, f)) << "\n";
      os << "}\n";
    } else if (auto p = std::get_if<FunctorBlock>(&blk)) {
      const CatFunctor& F = p->functor;
      const FinCat& s = *F.source;
      const FinCat& t = *F.target;
      auto tname = [&](std::size_t g) { return g < t.num_objects() ? quote("id_" + t.object_name(g)) : quote(t.morphism_name(g)); };
      os << "functor " << quote(p->name) << " : " << quote(p->source) << " -> " << quote(p->target) << " {\n";
      for (std::size_t x = 0; x < s.num_objects(); ++x)
        os << "  obj " << quote(s.object_name(x)) << " -> " << quote(t.object_name(F.obj(x))) << "\n";
      for (std::size_t f = s.num_objects(); f < s.num_morphisms(); ++f)
        os << "  mor " << quote(s.morphism_name(f)) << " -> " << tname(F.mor(f)) << "\n";
      os << "}\n";
    } else if (auto p = std::get_if<CSetBlock>(&blk)) {
      const FinCat& c = *p->set.cat();
      os << "cset " << quote(p->name) << " over " << quote(p->over) << " {\n";
      for (std::size_t x = 0; x < c.num_objects(); ++x) {
        if (p->elements[x].empty()) continue;
        os << "  at " << quote(c.object_name(x)) << " :";
        for (const auto& e : p->elements[x]) os << " " << quote(e);
        os << "\n";
      }
      for (std::size_t f = c.num_objects(); f < c.num_morphisms(); ++f) {
        if (p->set.size(c.dom(f)) == 0) continue;
        os << "  map " << quote(c.morphism_name(f)) << " :";
        for (std::size_t u = 0; u < p->set.size(c.dom(f)); ++u)
          os << " " << quote(p->elements[c.dom(f)][u]) << " -> " << quote(p->elements[c.cod(f)][p->set.act(f, u)]);
        os << "\n";
      }
      os << "}\n";
    } else if (auto p = std::get_if<BisetBlock>(&blk)) {
      const Biset& b = p->biset;
      const FinCat& C = *b.left_cat();
      const FinCat& D = *b.right_cat();
      os << "biset " << quote(p->name) << " over (" << quote(p->left) << ", " << quote(p->right) << ") {\n";
      for (std::size_t x = 0; x < C.num_objects(); ++x)
        for (std::size_t y = 0; y < D.num_objects(); ++y) {
          if (p->elements[x][y].empty()) continue;
          os << "  at (" << quote(C.object_name(x)) << ", " << quote(D.object_name(y)) << ") :";
          for (const auto& e : p->elements[x][y]) os << " " << quote(e);
          os << "\n";
        }
      for (std::size_t a = C.num_objects(); a < C.num_morphisms(); ++a) {
        std::ostringstream line;
        for (std::size_t y = 0; y < D.num_objects(); ++y)
          for (std::size_t u = 0; u < b.value_size(C.dom(a), y); ++u)
            line << " " << quote(p->elements[C.dom(a)][y][u]) << " -> "
                 << quote(p->elements[C.cod(a)][y][b.left_act(a, y, u)]);
        if (!line.str().empty()) os << "  lmap " << quote(C.morphism_name(a)) << " :" << line.str() << "\n";
      }
      for (std::size_t bt = D.num_objects(); bt < D.num_morphisms(); ++bt) {
        std::ostringstream line;
        for (std::size_t x = 0; x < C.num_objects(); ++x)
          for (std::size_t u = 0; u < b.value_size(x, D.cod(bt)); ++u)
            line << " " << quote(p->elements[x][D.cod(bt)][u]) << " -> "
                 << quote(p->elements[x][D.dom(bt)][b.right_act(x, u, bt)]);
        if (!line.str().empty()) os << "  rmap " << quote(D.morphism_name(bt)) << " :" << line.str() << "\n";
      }
      os << "}\n";
    } else if (auto p = std::get_if<CorrespBlock>(&blk)) {
      const Correspondence& u = p->corresp;
      os << "corresp " << quote(p->name) << " : " << u.to_size << " x " << u.from_size << " {\n";
      if (u.from_size > 0)
        for (std::size_t y = 0; y < u.to_size; ++y) {
          os << "  ";
          for (std::size_t x = 0; x < u.from_size; ++x) os << (u.contains(y, x) ? '1' : '0');
          os << "\n";
        }
      os << "}\n";
    }
  }
  return os.str();
}

// Names, shapes and tables agree; identity names are not compared.
inline bool same_category(const FinCat& a, const FinCat& b) {
  if (!a.same_structure(b)) return false;
  for (std::size_t x = 0; x < a.num_objects(); ++x)
    if (a.object_name(x) != b.object_name(x)) return false;
  for (std::size_t f = a.num_objects(); f < a.num_morphisms(); ++f)
    if (a.morphism_name(f) != b.morphism_name(f)) return false;
  return true;
}

inline bool structurally_equal(const Document& a, const Document& b) {
  if (a.blocks.size() != b.blocks.size()) return false;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    const Block& x = a.blocks[i];
    const Block& y = b.blocks[i];
    if (x.index() != y.index() || block_name(x) != block_name(y)) return false;
    bool same = std::visit([&](const auto& p) {
      using T = std::decay_t<decltype(p)>;
      const T& q = std::get<T>(y);
      if constexpr (std::is_same_v<T, CategoryBlock>) return same_category(*p.cat, *q.cat);
      else if constexpr (std::is_same_v<T, FunctorBlock>)
        return p.source == q.source && p.target == q.target && same_maps(p.functor, q.functor);
      else if constexpr (std::is_same_v<T, CSetBlock>)
        return p.over == q.over && p.set.same_data(q.set) && p.elements == q.elements;
      else if constexpr (std::is_same_v<T, BisetBlock>)
        return p.left == q.left && p.right == q.right && same_biset(p.biset, q.biset) && p.elements == q.elements;
      else return p.corresp == q.corresp;
    }, x);
    if (!same) return false;
  }
  return true;
}

}  // namespace fincat::dsl
