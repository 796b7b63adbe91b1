#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace decmon {

// A boolean fact owned by exactly one process. Names are unique system-wide
// and the owner sets of different processes are disjoint by construction.
struct AtomicProposition {
  std::string name;
  int owner = 0;  // 0-based process index
  friend bool operator==(const AtomicProposition&, const AtomicProposition&) = default;
};

using ApTable = std::vector<AtomicProposition>;

int find_ap(const ApTable& aps, const std::string& name);  // -1 if absent
int num_processes(const ApTable& aps);

enum class FormulaOp {
  // core grammar
  True,
  Prop,
  Not,
  Or,
  Next,
  Until,
  // sugar, eliminated by desugar()
  False,
  And,
  Implies,
  Eventually,
  Always,
};

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  FormulaOp op;
  int ap = -1;  // for Prop
  Formula lhs;
  Formula rhs;
};

Formula f_true();
Formula f_false();
Formula f_prop(int ap);
Formula f_not(Formula f);
Formula f_or(Formula a, Formula b);
Formula f_and(Formula a, Formula b);
Formula f_implies(Formula a, Formula b);
Formula f_next(Formula f);
Formula f_until(Formula a, Formula b);
Formula f_eventually(Formula f);
Formula f_always(Formula f);

// Rewrites sugar into the core grammar {True, Prop, Not, Or, Next, Until}.
Formula desugar(const Formula& f);
bool is_core(const Formula& f);
bool formula_equal(const Formula& a, const Formula& b);

std::string to_string(const Formula& f, const ApTable& aps);

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " (at position " + std::to_string(position) + ")"), pos(position) {}
  std::size_t pos;
};

// Concrete syntax: identifiers [a-zA-Z_][a-zA-Z0-9_]*, keywords true/false,
// operators ! & | -> X U <> [] and parentheses.
// Precedence: unary > U > & > | > ->, with U and -> right-associative.
// The result is always desugared to core form.
Formula parse_ltl(const std::string& text, const ApTable& aps);

}  // namespace decmon
