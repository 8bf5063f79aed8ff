#pragma once

// Recursive-descent parser for the ASCII formula grammar.
//
//   formula := iff
//   iff     := impl ('<->' impl)*                        right-assoc
//   impl    := or ('->' impl)?                           right-assoc
//   or      := and ('|' and)*                            right-assoc
//   and     := until ('&' until)*                        right-assoc
//   until   := pref (('U'|'W') until)?                   right-assoc
//   pref    := unary (PREF '[' INT ']' unary)?           non-assoc, binds
//                                                        tighter than the
//                                                        binary connectives
//   unary   := ('!'|'X'|'F'|'G'|'E'|'A') unary
//            | '<<' ints '>>' unary | ']' ints '[' unary | '[' ints ']' unary
//            | ('exists'|'forall') IDENT '.' formula
//            | ('Es'|'E1'|'As') '[' INT ']' '~'IDENT '.' formula
//            | primary
//   primary := 'false' | 'true' | IDENT | '~'IDENT | '(' formula ')'
//
// PREF is one of <ff <ea <ae <ee >ea >ae. '#' starts a comment to end of line.

#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "atlscpref/formula.hpp"

namespace atlscpref {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, size_t pos)
      : std::runtime_error(std::move(msg) + " at position " + std::to_string(pos)), pos(pos) {}
  size_t pos;
};

namespace detail {

enum class Tok {
  False, True, Ident, PathVar, Int,
  LParen, RParen, Bang, Amp, Pipe, Arrow, Iff,
  Next, Fin, Glob, UntilK, WeakK, EPath, APath, EsQ, E1Q, AsQ,
  Exists, Forall, Dot, Comma,
  LDouble, RDouble, LBrack, RBrack,
  PrefFF, PrefEA, PrefAE, PrefEE, PrefGEA, PrefGAE,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  long value = 0;
  size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_ws();
      size_t p = i_;
      if (i_ >= s_.size()) {
        out.push_back({Tok::End, "", 0, p});
        break;
      }
      char c = s_[i_];
      if (std::islower(static_cast<unsigned char>(c))) {
        out.push_back(ident(p));
      } else if (std::isupper(static_cast<unsigned char>(c))) {
        out.push_back(upper(p));
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        size_t j = i_;
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
        out.push_back({Tok::Int, std::string(s_.substr(i_, j - i_)),
                       std::stol(std::string(s_.substr(i_, j - i_))), p});
        i_ = j;
      } else {
        switch (c) {
          case '(': out.push_back({Tok::LParen, "(", 0, p}); ++i_; break;
          case ')': out.push_back({Tok::RParen, ")", 0, p}); ++i_; break;
          case '!': out.push_back({Tok::Bang, "!", 0, p}); ++i_; break;
          case '&': out.push_back({Tok::Amp, "&", 0, p}); ++i_; break;
          case '|': out.push_back({Tok::Pipe, "|", 0, p}); ++i_; break;
          case '.': out.push_back({Tok::Dot, ".", 0, p}); ++i_; break;
          case ',': out.push_back({Tok::Comma, ",", 0, p}); ++i_; break;
          case '[': out.push_back({Tok::LBrack, "[", 0, p}); ++i_; break;
          case ']': out.push_back({Tok::RBrack, "]", 0, p}); ++i_; break;
          case '~': {
            ++i_;
            if (i_ >= s_.size() || !std::islower(static_cast<unsigned char>(s_[i_])))
              throw ParseError("expected path variable name after '~'", p);
            Token t = ident(p);
            t.kind = Tok::PathVar;
            out.push_back(t);
            break;
          }
          case '-':
            if (peek(1) == '>') {
              out.push_back({Tok::Arrow, "->", 0, p});
              i_ += 2;
            } else {
              throw ParseError("stray '-'", p);
            }
            break;
          case '<':
            if (peek(1) == '<') {
              out.push_back({Tok::LDouble, "<<", 0, p});
              i_ += 2;
            } else if (peek(1) == '-' && peek(2) == '>') {
              out.push_back({Tok::Iff, "<->", 0, p});
              i_ += 3;
            } else if (peek(1) == 'f' && peek(2) == 'f') {
              out.push_back({Tok::PrefFF, "<ff", 0, p});
              i_ += 3;
            } else if (peek(1) == 'e' && peek(2) == 'a') {
              out.push_back({Tok::PrefEA, "<ea", 0, p});
              i_ += 3;
            } else if (peek(1) == 'a' && peek(2) == 'e') {
              out.push_back({Tok::PrefAE, "<ae", 0, p});
              i_ += 3;
            } else if (peek(1) == 'e' && peek(2) == 'e') {
              out.push_back({Tok::PrefEE, "<ee", 0, p});
              i_ += 3;
            } else {
              throw ParseError("unknown '<' operator", p);
            }
            break;
          case '>':
            if (peek(1) == '>') {
              out.push_back({Tok::RDouble, ">>", 0, p});
              i_ += 2;
            } else if (peek(1) == 'e' && peek(2) == 'a') {
              out.push_back({Tok::PrefGEA, ">ea", 0, p});
              i_ += 3;
            } else if (peek(1) == 'a' && peek(2) == 'e') {
              out.push_back({Tok::PrefGAE, ">ae", 0, p});
              i_ += 3;
            } else {
              throw ParseError("unknown '>' operator", p);
            }
            break;
          default:
            throw ParseError(std::string("unexpected character '") + c + "'", p);
        }
      }
    }
    return out;
  }

 private:
  char peek(size_t k) const { return i_ + k < s_.size() ? s_[i_ + k] : '\0'; }

  void skip_ws() {
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (c == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++i_;
      } else {
        break;
      }
    }
  }

  Token ident(size_t p) {
    size_t j = i_;
    while (j < s_.size() && (std::islower(static_cast<unsigned char>(s_[j])) ||
                             std::isdigit(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
      ++j;
    std::string name(s_.substr(i_, j - i_));
    i_ = j;
    if (name == "false") return {Tok::False, name, 0, p};
    if (name == "true") return {Tok::True, name, 0, p};
    if (name == "exists") return {Tok::Exists, name, 0, p};
    if (name == "forall") return {Tok::Forall, name, 0, p};
    return {Tok::Ident, name, 0, p};
  }

  Token upper(size_t p) {
    size_t j = i_;
    while (j < s_.size() && std::isalnum(static_cast<unsigned char>(s_[j]))) ++j;
    std::string word(s_.substr(i_, j - i_));
    i_ = j;
    if (word == "X") return {Tok::Next, word, 0, p};
    if (word == "F") return {Tok::Fin, word, 0, p};
    if (word == "G") return {Tok::Glob, word, 0, p};
    if (word == "U") return {Tok::UntilK, word, 0, p};
    if (word == "W") return {Tok::WeakK, word, 0, p};
    if (word == "E") return {Tok::EPath, word, 0, p};
    if (word == "A") return {Tok::APath, word, 0, p};
    if (word == "Es") return {Tok::EsQ, word, 0, p};
    if (word == "E1") return {Tok::E1Q, word, 0, p};
    if (word == "As") return {Tok::AsQ, word, 0, p};
    throw ParseError("unknown keyword '" + word + "'", p);
  }

  std::string_view s_;
  size_t i_ = 0;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, std::set<int> universe)
      : toks_(std::move(toks)), universe_(std::move(universe)) {}

  Formula run() {
    Formula f = parse_formula();
    expect(Tok::End, "trailing input");
    return f;
  }

 private:
  Token const& cur() const { return toks_[k_]; }
  Token const& take() { return toks_[k_++]; }
  bool at(Tok t) const { return cur().kind == t; }

  Token expect(Tok t, char const* what) {
    if (!at(t)) throw ParseError(std::string("expected ") + what, cur().pos);
    return take();
  }

  [[noreturn]] void fail(std::string msg) { throw ParseError(std::move(msg), cur().pos); }

  Formula build(char const* what, Formula (*fn)(Formula), Formula arg, size_t pos) {
    try {
      return fn(arg);
    } catch (BuildError const& e) {
      throw ParseError(std::string(what) + ": " + e.what(), pos);
    }
  }

  int agent_id() {
    Token t = expect(Tok::Int, "agent id");
    check_agent(static_cast<int>(t.value), t.pos);
    return static_cast<int>(t.value);
  }

  void check_agent(int a, size_t pos) {
    if (!universe_.count(a))
      throw ParseError("unknown agent " + std::to_string(a), pos);
  }

  std::vector<int> coalition(Tok closer) {
    std::vector<int> g;
    if (!at(closer)) {
      g.push_back(agent_id());
      while (at(Tok::Comma)) {
        take();
        g.push_back(agent_id());
      }
    }
    take();  // closer, checked by caller pattern
    return g;
  }

  Formula parse_formula() { return parse_iff(); }

  Formula parse_iff() {
    std::vector<Formula> parts{parse_impl()};
    while (at(Tok::Iff)) {
      take();
      parts.push_back(parse_impl());
    }
    Formula r = parts.back();
    for (size_t i = parts.size() - 1; i-- > 0;) r = mk::iff(parts[i], r);
    return r;
  }

  Formula parse_impl() {
    Formula l = parse_or();
    if (at(Tok::Arrow)) {
      take();
      return mk::implies(l, parse_impl());
    }
    return l;
  }

  Formula parse_or() {
    std::vector<Formula> parts{parse_and()};
    while (at(Tok::Pipe)) {
      take();
      parts.push_back(parse_and());
    }
    Formula r = parts.back();
    for (size_t i = parts.size() - 1; i-- > 0;) r = mk::or_(parts[i], r);
    return r;
  }

  Formula parse_and() {
    std::vector<Formula> parts{parse_until()};
    while (at(Tok::Amp)) {
      take();
      parts.push_back(parse_until());
    }
    Formula r = parts.back();
    for (size_t i = parts.size() - 1; i-- > 0;) r = mk::and_(parts[i], r);
    return r;
  }

  Formula parse_until() {
    Formula l = parse_pref();
    if (at(Tok::UntilK)) {
      take();
      return mk::until(l, parse_until());
    }
    if (at(Tok::WeakK)) {
      take();
      return mk::weak_until(l, parse_until());
    }
    return l;
  }

  std::optional<PrefVariant> pref_variant() {
    switch (cur().kind) {
      case Tok::PrefFF: return PrefVariant::FF;
      case Tok::PrefEA: return PrefVariant::EA;
      case Tok::PrefAE: return PrefVariant::AE;
      case Tok::PrefEE: return PrefVariant::EE;
      case Tok::PrefGEA: return PrefVariant::GEA;
      case Tok::PrefGAE: return PrefVariant::GAE;
      default: return std::nullopt;
    }
  }

  Formula parse_pref() {
    Formula l = parse_unary();
    if (auto v = pref_variant()) {
      take();
      expect(Tok::LBrack, "'[' after preference operator");
      int agent = agent_id();
      expect(Tok::RBrack, "']' after agent id");
      Formula r = parse_unary();
      return mk::pref(*v, agent, l, r);
    }
    return l;
  }

  Formula parse_unary() {
    size_t pos = cur().pos;
    switch (cur().kind) {
      case Tok::Bang:
        take();
        return mk::not_(parse_unary());
      case Tok::Next:
        take();
        return mk::next(parse_unary());
      case Tok::Fin:
        take();
        return mk::finally_(parse_unary());
      case Tok::Glob:
        take();
        return mk::globally(parse_unary());
      case Tok::EPath:
        take();
        return mk::exists_path(parse_unary());
      case Tok::APath:
        take();
        return mk::forall_path(parse_unary());
      case Tok::LDouble: {
        take();
        std::vector<int> g;
        if (!at(Tok::RDouble)) {
          g.push_back(agent_id());
          while (at(Tok::Comma)) {
            take();
            g.push_back(agent_id());
          }
        }
        expect(Tok::RDouble, "'>>'");
        return mk::strat_mod(std::move(g), parse_unary());
      }
      case Tok::RBrack: {  // ]G[ relax
        take();
        std::vector<int> g;
        if (!at(Tok::LBrack)) {
          g.push_back(agent_id());
          while (at(Tok::Comma)) {
            take();
            g.push_back(agent_id());
          }
        }
        expect(Tok::LBrack, "'[' closing the relax operator");
        try {
          return mk::relax(std::move(g), parse_unary());
        } catch (BuildError const& e) {
          throw ParseError(e.what(), pos);
        }
      }
      case Tok::LBrack: {  // [G] dual game modality
        take();
        std::vector<int> g;
        if (!at(Tok::RBrack)) {
          g.push_back(agent_id());
          while (at(Tok::Comma)) {
            take();
            g.push_back(agent_id());
          }
        }
        expect(Tok::RBrack, "']' closing the coalition");
        return mk::strat_dual(std::move(g), parse_unary());
      }
      case Tok::Exists: {
        take();
        Token name = expect(Tok::Ident, "quantified proposition name");
        expect(Tok::Dot, "'.'");
        try {
          return mk::exists_prop(name.text, parse_formula());
        } catch (BuildError const& e) {
          throw ParseError(e.what(), pos);
        }
      }
      case Tok::Forall: {
        take();
        Token name = expect(Tok::Ident, "quantified proposition name");
        expect(Tok::Dot, "'.'");
        try {
          return mk::forall_prop(name.text, parse_formula());
        } catch (BuildError const& e) {
          throw ParseError(e.what(), pos);
        }
      }
      case Tok::EsQ:
      case Tok::E1Q:
      case Tok::AsQ: {
        Tok which = take().kind;
        expect(Tok::LBrack, "'[' after path quantifier");
        int agent = agent_id();
        expect(Tok::RBrack, "']' after agent id");
        Token var = expect(Tok::PathVar, "path variable");
        expect(Tok::Dot, "'.'");
        Formula body = parse_formula();
        try {
          if (which == Tok::EsQ) return mk::sim_quant(agent, var.text, body);
          if (which == Tok::E1Q) return mk::one_quant(agent, var.text, body);
          return mk::forall_sim(agent, var.text, body);
        } catch (BuildError const& e) {
          throw ParseError(e.what(), pos);
        }
      }
      default:
        return parse_primary();
    }
  }

  Formula parse_primary() {
    switch (cur().kind) {
      case Tok::False:
        take();
        return mk::bot();
      case Tok::True:
        take();
        return mk::top();
      case Tok::Ident:
        return mk::atom(take().text);
      case Tok::PathVar:
        return mk::path_atom(take().text);
      case Tok::LParen: {
        take();
        Formula f = parse_formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      default:
        fail("expected a formula");
    }
  }

  std::vector<Token> toks_;
  std::set<int> universe_;
  size_t k_ = 0;
};

}  // namespace detail

inline Formula parse_formula(std::string_view text, std::set<int> const& universe = {}) {
  detail::Lexer lex(text);
  detail::Parser p(lex.run(), universe);
  return p.run();
}

}  // namespace atlscpref
