#include "decmon/formula.hpp"

#include <algorithm>
#include <cctype>

namespace decmon {

int find_ap(const ApTable& aps, const std::string& name) {
  for (std::size_t i = 0; i < aps.size(); ++i)
    if (aps[i].name == name) return static_cast<int>(i);
  return -1;
}

int num_processes(const ApTable& aps) {
  int n = 0;
  for (const auto& ap : aps) n = std::max(n, ap.owner + 1);
  return n;
}

namespace {
Formula node(FormulaOp op, Formula a = nullptr, Formula b = nullptr, int ap = -1) {
  auto p = std::make_shared<FormulaNode>();
  p->op = op;
  p->ap = ap;
  p->lhs = std::move(a);
  p->rhs = std::move(b);
  return p;
}
}  // namespace

Formula f_true() { return node(FormulaOp::True); }
Formula f_false() { return node(FormulaOp::False); }
Formula f_prop(int ap) { return node(FormulaOp::Prop, nullptr, nullptr, ap); }
Formula f_not(Formula f) { return node(FormulaOp::Not, std::move(f)); }
Formula f_or(Formula a, Formula b) { return node(FormulaOp::Or, std::move(a), std::move(b)); }
Formula f_and(Formula a, Formula b) { return node(FormulaOp::And, std::move(a), std::move(b)); }
Formula f_implies(Formula a, Formula b) { return node(FormulaOp::Implies, std::move(a), std::move(b)); }
Formula f_next(Formula f) { return node(FormulaOp::Next, std::move(f)); }
Formula f_until(Formula a, Formula b) { return node(FormulaOp::Until, std::move(a), std::move(b)); }
Formula f_eventually(Formula f) { return node(FormulaOp::Eventually, std::move(f)); }
Formula f_always(Formula f) { return node(FormulaOp::Always, std::move(f)); }

Formula desugar(const Formula& f) {
  switch (f->op) {
    case FormulaOp::True:
    case FormulaOp::Prop:
      return f;
    case FormulaOp::Not:
      return f_not(desugar(f->lhs));
    case FormulaOp::Or:
      return f_or(desugar(f->lhs), desugar(f->rhs));
    case FormulaOp::Next:
      return f_next(desugar(f->lhs));
    case FormulaOp::Until:
      return f_until(desugar(f->lhs), desugar(f->rhs));
    case FormulaOp::False:
      return f_not(f_true());
    case FormulaOp::And:
      return f_not(f_or(f_not(desugar(f->lhs)), f_not(desugar(f->rhs))));
    case FormulaOp::Implies:
      return f_or(f_not(desugar(f->lhs)), desugar(f->rhs));
    case FormulaOp::Eventually:
      return f_until(f_true(), desugar(f->lhs));
    case FormulaOp::Always:
      return f_not(f_until(f_true(), f_not(desugar(f->lhs))));
  }
  return nullptr;
}

bool is_core(const Formula& f) {
  switch (f->op) {
    case FormulaOp::True:
    case FormulaOp::Prop:
      return true;
    case FormulaOp::Not:
    case FormulaOp::Next:
      return is_core(f->lhs);
    case FormulaOp::Or:
    case FormulaOp::Until:
      return is_core(f->lhs) && is_core(f->rhs);
    default:
      return false;
  }
}

bool formula_equal(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return true;
  if (a->op != b->op || a->ap != b->ap) return false;
  if (!!a->lhs != !!b->lhs || !!a->rhs != !!b->rhs) return false;
  if (a->lhs && !formula_equal(a->lhs, b->lhs)) return false;
  if (a->rhs && !formula_equal(a->rhs, b->rhs)) return false;
  return true;
}

std::string to_string(const Formula& f, const ApTable& aps) {
  auto wrap = [&](const Formula& g) {
    std::string s = to_string(g, aps);
    switch (g->op) {
      case FormulaOp::True:
      case FormulaOp::False:
      case FormulaOp::Prop:
      case FormulaOp::Not:
      case FormulaOp::Next:
      case FormulaOp::Eventually:
      case FormulaOp::Always:
        return s;
      default:
        return "(" + s + ")";
    }
  };
  switch (f->op) {
    case FormulaOp::True:
      return "true";
    case FormulaOp::False:
      return "false";
    case FormulaOp::Prop:
      return aps[f->ap].name;
    case FormulaOp::Not:
      return "!" + wrap(f->lhs);
    case FormulaOp::Or:
      return wrap(f->lhs) + " | " + wrap(f->rhs);
    case FormulaOp::And:
      return wrap(f->lhs) + " & " + wrap(f->rhs);
    case FormulaOp::Implies:
      return wrap(f->lhs) + " -> " + wrap(f->rhs);
    case FormulaOp::Next:
      return "X " + wrap(f->lhs);
    case FormulaOp::Until:
      return wrap(f->lhs) + " U " + wrap(f->rhs);
    case FormulaOp::Eventually:
      return "<>" + wrap(f->lhs);
    case FormulaOp::Always:
      return "[]" + wrap(f->lhs);
  }
  return "?";
}

namespace {

// Recursive-descent parser over a small token stream.
class Parser {
 public:
  Parser(const std::string& text, const ApTable& aps) : text_(text), aps_(aps) {}

  Formula parse() {
    Formula f = implies();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return f;
  }

 private:
  Formula implies() {
    Formula lhs = disjunct();
    skip_ws();
    if (try_eat("->")) return f_implies(std::move(lhs), implies());
    return lhs;
  }

  Formula disjunct() {
    Formula lhs = conjunct();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '|') {
      ++pos_;
      return f_or(std::move(lhs), disjunct());
    }
    return lhs;
  }

  Formula conjunct() {
    Formula lhs = until();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '&') {
      ++pos_;
      return f_and(std::move(lhs), conjunct());
    }
    return lhs;
  }

  Formula until() {
    Formula lhs = unary();
    skip_ws();
    if (try_keyword("U")) return f_until(std::move(lhs), until());
    return lhs;
  }

  Formula unary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    if (text_[pos_] == '!') {
      ++pos_;
      return f_not(unary());
    }
    if (try_eat("<>")) return f_eventually(unary());
    if (try_eat("[]")) return f_always(unary());
    if (try_keyword("X")) return f_next(unary());
    if (text_[pos_] == '(') {
      std::size_t open = pos_++;
      Formula f = implies();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') throw ParseError("unclosed parenthesis", open);
      ++pos_;
      return f;
    }
    return atom();
  }

  Formula atom() {
    if (!(std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name = text_.substr(start, pos_ - start);
    if (name == "true") return f_true();
    if (name == "false") return f_false();
    if (name == "U" || name == "X") throw ParseError("operator '" + name + "' needs a left operand", start);
    int ap = find_ap(aps_, name);
    if (ap < 0) throw ParseError("unknown proposition '" + name + "'", start);
    return f_prop(ap);
  }

  bool try_eat(const char* s) {
    skip_ws();
    std::size_t n = std::char_traits<char>::length(s);
    if (text_.compare(pos_, n, s) == 0) {
      pos_ += n;
      return true;
    }
    return false;
  }

  // Keyword operators (U, X) must not swallow identifier prefixes.
  bool try_keyword(const char* s) {
    skip_ws();
    std::size_t n = std::char_traits<char>::length(s);
    if (text_.compare(pos_, n, s) != 0) return false;
    std::size_t after = pos_ + n;
    if (after < text_.size() &&
        (std::isalnum(static_cast<unsigned char>(text_[after])) || text_[after] == '_'))
      return false;
    pos_ = after;
    return true;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  const std::string& text_;
  const ApTable& aps_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_ltl(const std::string& text, const ApTable& aps) {
  return desugar(Parser(text, aps).parse());
}

}  // namespace decmon
