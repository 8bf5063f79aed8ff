#pragma once

// Concrete-syntax printer. Recognizes the fixed core encodings of the derived
// connectives so output stays readable; parse(print(f)) rebuilds the same
// interned node.

#include <string>

#include "atlscpref/formula.hpp"

namespace atlscpref {

namespace prec {
constexpr int binder = 0;
constexpr int iff = 1;
constexpr int implies = 2;
constexpr int or_ = 3;
constexpr int and_ = 4;
constexpr int until = 5;
constexpr int pref = 6;
constexpr int unary = 7;
constexpr int primary = 8;
}  // namespace prec

namespace detail {

inline std::string coalition_str(std::vector<int> const& g) {
  std::string s;
  for (size_t i = 0; i < g.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(g[i]);
  }
  return s;
}

inline char const* pref_token(PrefVariant v) {
  switch (v) {
    case PrefVariant::FF: return "<ff";
    case PrefVariant::EA: return "<ea";
    case PrefVariant::AE: return "<ae";
    case PrefVariant::EE: return "<ee";
    case PrefVariant::GEA: return ">ea";
    case PrefVariant::GAE: return ">ae";
  }
  return "<?";
}

inline std::string print_rec(Formula f, int ctx);

inline std::string wrap(std::string s, int mine, int ctx) {
  if (mine < ctx) return "(" + std::move(s) + ")";
  return s;
}

// match a <-> b, i.e. (a -> b) & (b -> a)
inline bool match_iff(Formula f, Formula& a, Formula& b) {
  Formula l, r;
  if (!match_and(f, l, r)) return false;
  if (l->op != Op::Implies || r->op != Op::Implies) return false;
  if (match_and(l, a, b) || match_or(l, a, b) || is_not(l)) return false;
  if (match_and(r, a, b) || match_or(r, a, b) || is_not(r)) return false;
  if (l->lhs != r->rhs || l->rhs != r->lhs) return false;
  a = l->lhs;
  b = l->rhs;
  return true;
}

// match a W b, i.e. (a U b) | G a
inline bool match_weak_until(Formula f, Formula& a, Formula& b) {
  Formula l, r, g;
  if (!match_or(f, l, r)) return false;
  if (l->op != Op::Until || is_finally(l)) return false;
  if (!match_globally(r, g) || g != l->lhs) return false;
  a = l->lhs;
  b = l->rhs;
  return true;
}

inline std::string print_rec(Formula f, int ctx) {
  using std::string;
  Formula a = nullptr, b = nullptr;
  switch (f->op) {
    case Op::Bot:
      return "false";
    case Op::Atom:
      return f->name;
    case Op::PathAtom:
      return "~" + f->name;
    case Op::Next:
      return wrap("X " + print_rec(f->lhs, prec::unary), prec::unary, ctx);
    case Op::ExistsPath:
      return wrap("E " + print_rec(f->lhs, prec::unary), prec::unary, ctx);
    case Op::ExistsProp:
      return wrap("exists " + f->name + " . " + print_rec(f->lhs, prec::binder), prec::binder,
                  ctx);
    case Op::StratMod:
      return wrap("<<" + coalition_str(f->coalition) + ">> " + print_rec(f->lhs, prec::unary),
                  prec::unary, ctx);
    case Op::Relax:
      return wrap("]" + coalition_str(f->coalition) + "[ " + print_rec(f->lhs, prec::unary),
                  prec::unary, ctx);
    case Op::SimQuant:
      return wrap("Es[" + std::to_string(f->agent) + "] ~" + f->name + " . " +
                      print_rec(f->lhs, prec::binder),
                  prec::binder, ctx);
    case Op::OneQuant:
      return wrap("E1[" + std::to_string(f->agent) + "] ~" + f->name + " . " +
                      print_rec(f->lhs, prec::binder),
                  prec::binder, ctx);
    case Op::Pref:
      return wrap(print_rec(f->lhs, prec::unary) + " " + pref_token(f->variant) + "[" +
                      std::to_string(f->agent) + "] " + print_rec(f->rhs, prec::unary),
                  prec::pref, ctx);
    case Op::Until: {
      if (is_finally(f)) return wrap("F " + print_rec(f->rhs, prec::unary), prec::unary, ctx);
      return wrap(print_rec(f->lhs, prec::pref) + " U " + print_rec(f->rhs, prec::until),
                  prec::until, ctx);
    }
    case Op::Implies: {
      if (is_top(f)) return "true";
      if (match_globally(f, a))
        return wrap("G " + print_rec(a, prec::unary), prec::unary, ctx);
      if (f->rhs->op == Op::Bot && f->lhs->op == Op::ExistsPath && is_not(f->lhs->lhs) &&
          !match_and(f->lhs->lhs, a, b))
        return wrap("A " + print_rec(f->lhs->lhs->lhs, prec::unary), prec::unary, ctx);
      if (f->rhs->op == Op::Bot && f->lhs->op == Op::ExistsProp && is_not(f->lhs->lhs) &&
          !match_and(f->lhs->lhs, a, b))
        return wrap("forall " + f->lhs->name + " . " + print_rec(f->lhs->lhs->lhs, prec::binder),
                    prec::binder, ctx);
      if (f->rhs->op == Op::Bot && f->lhs->op == Op::StratMod && is_not(f->lhs->lhs) &&
          !match_and(f->lhs->lhs, a, b))
        return wrap("[" + coalition_str(f->lhs->coalition) + "] " +
                        print_rec(f->lhs->lhs->lhs, prec::unary),
                    prec::unary, ctx);
      if (f->rhs->op == Op::Bot && f->lhs->op == Op::SimQuant && is_not(f->lhs->lhs) &&
          !match_and(f->lhs->lhs, a, b))
        return wrap("As[" + std::to_string(f->lhs->agent) + "] ~" + f->lhs->name + " . " +
                        print_rec(f->lhs->lhs->lhs, prec::binder),
                    prec::binder, ctx);
      if (match_iff(f, a, b))
        return wrap(print_rec(a, prec::implies) + " <-> " + print_rec(b, prec::iff), prec::iff,
                    ctx);
      if (match_and(f, a, b))
        return wrap(print_rec(a, prec::until) + " & " + print_rec(b, prec::and_), prec::and_, ctx);
      if (match_not(f, a)) return wrap("!" + print_rec(a, prec::unary), prec::unary, ctx);
      Formula wa, wb;
      if (match_weak_until(f, wa, wb))
        return wrap(print_rec(wa, prec::pref) + " W " + print_rec(wb, prec::until), prec::until,
                    ctx);
      if (match_or(f, a, b))
        return wrap(print_rec(a, prec::and_) + " | " + print_rec(b, prec::or_), prec::or_, ctx);
      return wrap(print_rec(f->lhs, prec::or_) + " -> " + print_rec(f->rhs, prec::implies),
                  prec::implies, ctx);
    }
  }
  return "?";
}

}  // namespace detail

inline std::string print_formula(Formula f) { return detail::print_rec(f, prec::binder); }

}  // namespace atlscpref
