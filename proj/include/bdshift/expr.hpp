#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bdshift/algebra.hpp"
#include "bdshift/derivations.hpp"
#include "bdshift/gns.hpp"
#include "bdshift/json_io.hpp"

namespace bdshift {

/// Named data a command runs against; loaded from one workspace JSON file.
struct Environment {
  SupernaturalNumber modulus;
  std::optional<DivisorChain> chain;
  std::map<std::string, EPSequence> sequences;
  std::map<std::string, LocallyConstantFunction> functions;
  std::map<std::string, DerivationSum> derivations;
  std::map<std::string, BilateralDerivationSum> bilateral_derivations;
  std::map<std::string, LaurentFunction> laurent;
  std::map<std::string, ImplementationData> implementations;
};

Environment environment_from_json(const Json& j);
Environment load_environment(const std::string& path);

struct Expr {
  enum class Kind { Number, Imag, Shift, ShiftAdj, BiShift, BiShiftInv, Identity, Vacuum, DiagName, DiagLiteral,
                    Add, Sub, Mul, Neg, Pow, Comm, Adj };
  Kind kind;
  Rational number;            // Number
  std::string name;           // DiagName
  EPSequence literal;         // DiagLiteral
  unsigned exponent = 0;      // Pow
  std::vector<std::shared_ptr<const Expr>> args;
  int line = 1;
  int column = 1;
};
using ExprPtr = std::shared_ptr<const Expr>;

inline constexpr std::size_t kMaxExpressionBytes = 1 << 20;

/// LL(1) grammar:
///   expr  := term (('+' | '-') term)*
///   term  := unary ('*' unary)*
///   unary := '-' unary | power
///   power := primary ('^' INT)?
///   primary := INT ('/' INT)? 'i'? | 'i' | U | Us | V | Vi | id | P0 | '(' expr ')'
///            | diag '(' NAME ')' | diag '[' values (';' INT ':' value (',' INT ':' value)*)? ']'
///            | comm '(' expr ',' expr ')' | adj '(' expr ')'
/// Throws SyntaxError with line:column.
ExprPtr parse(const std::string& text);

enum class Side { Unilateral, Bilateral };
using Element = std::variant<UnilateralElement, BilateralElement>;

/// Throws SideMismatch, UnknownName, PeriodNotDivisor.
UnilateralElement eval_unilateral(const ExprPtr& e, const Environment& env);
BilateralElement eval_bilateral(const ExprPtr& e, const Environment& env);
Element eval(const ExprPtr& e, const Environment& env, Side side);
/// Bilateral iff the expression mentions V or Vi.
Side infer_side(const ExprPtr& e);

/// Canonical text; parse + eval of the output reproduces the element.
std::string format(const EPSequence& a);
std::string format(const LocallyConstantFunction& f);
std::string format(const UnilateralElement& a);
std::string format(const BilateralElement& b);

}  // namespace bdshift
