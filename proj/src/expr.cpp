#include "bdshift/expr.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "bdshift/error.hpp"

namespace bdshift {

// --------------------------------------------------------------- environment

Environment environment_from_json(const Json& j) {
  require(j.is_object(), ErrorKind::SyntaxError, "workspace must be a JSON object");
  Environment env;
  env.modulus = j.contains("N") ? supernatural_from_json(j.at("N")) : SupernaturalNumber();
  if (j.contains("chain")) {
    std::vector<std::int64_t> levels;
    for (const auto& v : j.at("chain")) {
      require(v.is_number_integer(), ErrorKind::SyntaxError, "chain levels must be integers");
      levels.push_back(v.get<std::int64_t>());
    }
    env.chain = DivisorChain(std::move(levels), env.modulus);
  }
  const Json sequences = j.value("sequences", Json::object());
  for (const auto& [name, v] : sequences.items()) {
    EPSequence a = ep_from_json(v);
    require_divides(a.period(), env.modulus);
    env.sequences.emplace(name, std::move(a));
  }
  const Json functions = j.value("functions", Json::object());
  for (const auto& [name, v] : functions.items()) {
    LocallyConstantFunction f = lcf_from_json(v);
    require_divides(f.period(), env.modulus);
    env.functions.emplace(name, std::move(f));
  }
  const Json derivations = j.value("derivations", Json::object());
  for (const auto& [name, v] : derivations.items()) {
    env.derivations.emplace(name, derivation_from_json(v, &env.modulus));
  }
  const Json bilateral_derivations = j.value("bilateral_derivations", Json::object());
  for (const auto& [name, v] : bilateral_derivations.items()) {
    env.bilateral_derivations.emplace(name, bilateral_derivation_from_json(v, &env.modulus));
  }
  const Json laurent = j.value("laurent", Json::object());
  for (const auto& [name, v] : laurent.items()) {
    env.laurent.emplace(name, laurent_from_json(v));
  }
  const Json implementations = j.value("implementations", Json::object());
  for (const auto& [name, v] : implementations.items()) {
    env.implementations.emplace(name, implementation_from_json(v, env.modulus));
  }
  return env;
}

Environment load_environment(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::InvalidArgument, "cannot open workspace '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    fail(ErrorKind::SyntaxError, "workspace '" + path + "': " + e.what());
  }
  return environment_from_json(j);
}

// -------------------------------------------------------------------- lexing

namespace {

enum class Tok { Int, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, LBracket, RBracket, Comma, Semicolon,
                 Colon, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

[[noreturn]] void syntax_error(int line, int column, const std::string& what) {
  fail(ErrorKind::SyntaxError, std::to_string(line) + ":" + std::to_string(column) + ": " + what);
}

std::vector<Token> lex(const std::string& text) {
  require(text.size() <= kMaxExpressionBytes, ErrorKind::SyntaxError, "expression exceeds 1 MB");
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t s = 0; s < k; ++s, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const int l0 = line;
    const int c0 = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j < text.size() && (text[j] == '.' || text[j] == 'e' || text[j] == 'E')) {
        syntax_error(l0, c0, "float literals are not accepted; write an exact rational a/b");
      }
      out.push_back({Tok::Int, text.substr(i, j - i), l0, c0});
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back({Tok::Ident, text.substr(i, j - i), l0, c0});
      advance(j - i);
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '^': kind = Tok::Caret; break;
      case '/': kind = Tok::Slash; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '[': kind = Tok::LBracket; break;
      case ']': kind = Tok::RBracket; break;
      case ',': kind = Tok::Comma; break;
      case ';': kind = Tok::Semicolon; break;
      case ':': kind = Tok::Colon; break;
      default: syntax_error(l0, c0, std::string("unexpected character '") + c + "'");
    }
    out.push_back({kind, std::string(1, c), l0, c0});
    advance(1);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

// ------------------------------------------------------------------- parsing

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  ExprPtr parse_all() {
    ExprPtr e = expr();
    if (peek().kind != Tok::End) syntax_error(peek().line, peek().column, "unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) {
      syntax_error(peek().line, peek().column,
                   std::string("expected ") + what + (peek().kind == Tok::End ? " at end of input" : ", got '" + peek().text + "'"));
    }
    return next();
  }

  static std::shared_ptr<Expr> node(Expr::Kind k, const Token& at) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->line = at.line;
    e->column = at.column;
    return e;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const Token& op = next();
      auto n = node(op.kind == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub, op);
      n->args = {lhs, term()};
      lhs = n;
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (peek().kind == Tok::Star) {
      const Token& op = next();
      auto n = node(Expr::Kind::Mul, op);
      n->args = {lhs, unary()};
      lhs = n;
    }
    return lhs;
  }

  ExprPtr unary() {
    if (peek().kind == Tok::Minus) {
      const Token& op = next();
      auto n = node(Expr::Kind::Neg, op);
      n->args = {unary()};
      return n;
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (peek().kind != Tok::Caret) return base;
    const Token& op = next();
    const Token& ex = expect(Tok::Int, "a non-negative integer exponent (use Us or Vi for inverses)");
    auto n = node(Expr::Kind::Pow, op);
    unsigned long v = 0;
    try {
      v = std::stoul(ex.text);
    } catch (const std::exception&) {
      syntax_error(ex.line, ex.column, "exponent too large");
    }
    if (v > 100000) syntax_error(ex.line, ex.column, "exponent too large");
    n->exponent = static_cast<unsigned>(v);
    n->args = {base};
    return n;
  }

  Rational rational_literal() {
    const Token& num = expect(Tok::Int, "an integer");
    std::string text = num.text;
    if (accept(Tok::Slash)) text += "/" + expect(Tok::Int, "a denominator").text;
    if (text.find('/') != std::string::npos && text.substr(text.find('/') + 1).find_first_not_of('0') == std::string::npos) {
      syntax_error(num.line, num.column, "zero denominator");
    }
    return parse_rational(text);
  }

  bool at_imag_unit() const { return peek().kind == Tok::Ident && peek().text == "i"; }

  /// ['-'] (q ['i'] | 'i') [('+' | '-') (q 'i' | 'i')]
  Scalar scalar_literal() {
    auto part = [&](bool& imag) {
      if (at_imag_unit()) {
        next();
        imag = true;
        return Rational(1);
      }
      Rational q = rational_literal();
      imag = false;
      if (at_imag_unit()) {
        next();
        imag = true;
      }
      return q;
    };
    Rational sign = accept(Tok::Minus) ? -1 : 1;
    bool imag = false;
    Rational first = sign * part(imag);
    Scalar out = imag ? Scalar(Rational(0), first) : Scalar(first);
    if (!imag && (peek().kind == Tok::Plus || peek().kind == Tok::Minus)) {
      Rational s2 = next().kind == Tok::Plus ? 1 : -1;
      if (peek().kind == Tok::Minus) {
        next();
        s2 = -s2;
      }
      const Token& at = peek();
      bool imag2 = false;
      Rational second = s2 * part(imag2);
      if (!imag2) syntax_error(at.line, at.column, "the second part of a scalar must be imaginary");
      out.im = second;
    }
    return out;
  }

  ExprPtr diag_literal(const Token& at) {
    std::vector<Scalar> periodic;
    do {
      periodic.push_back(scalar_literal());
    } while (accept(Tok::Comma));
    Correction corr;
    if (accept(Tok::Semicolon)) {
      do {
        const Token& k = expect(Tok::Int, "a correction index");
        expect(Tok::Colon, "':'");
        std::int64_t idx = 0;
        try {
          idx = std::stoll(k.text);
        } catch (const std::exception&) {
          syntax_error(k.line, k.column, "index too large");
        }
        if (corr.count(idx) != 0) syntax_error(k.line, k.column, "duplicate correction index");
        corr.emplace(idx, scalar_literal());
      } while (accept(Tok::Comma));
    }
    expect(Tok::RBracket, "']'");
    auto n = node(Expr::Kind::DiagLiteral, at);
    n->literal = EPSequence(std::move(corr), LocallyConstantFunction(std::move(periodic)));
    return n;
  }

  ExprPtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int: {
        auto n = node(Expr::Kind::Number, t);
        n->number = rational_literal();
        if (at_imag_unit()) {
          next();
          auto im = node(Expr::Kind::Mul, t);
          im->args = {n, node(Expr::Kind::Imag, t)};
          return im;
        }
        return n;
      }
      case Tok::LParen: {
        next();
        ExprPtr e = expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident:
        return identifier();
      default:
        syntax_error(t.line, t.column, t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
    }
  }

  ExprPtr identifier() {
    const Token t = next();
    using K = Expr::Kind;
    static const std::map<std::string, K> atoms = {{"U", K::Shift},      {"Us", K::ShiftAdj}, {"V", K::BiShift},
                                                   {"Vi", K::BiShiftInv}, {"id", K::Identity}, {"P0", K::Vacuum},
                                                   {"i", K::Imag}};
    if (auto it = atoms.find(t.text); it != atoms.end()) return node(it->second, t);
    if (t.text == "diag") {
      if (accept(Tok::LBracket)) return diag_literal(t);
      expect(Tok::LParen, "'(' or '['");
      const Token& name = expect(Tok::Ident, "a sequence name");
      expect(Tok::RParen, "')'");
      auto n = node(K::DiagName, t);
      n->name = name.text;
      return n;
    }
    if (t.text == "comm") {
      expect(Tok::LParen, "'('");
      ExprPtr a = expr();
      expect(Tok::Comma, "','");
      ExprPtr b = expr();
      expect(Tok::RParen, "')'");
      auto n = node(K::Comm, t);
      n->args = {a, b};
      return n;
    }
    if (t.text == "adj") {
      expect(Tok::LParen, "'('");
      ExprPtr a = expr();
      expect(Tok::RParen, "')'");
      auto n = node(K::Adj, t);
      n->args = {a};
      return n;
    }
    fail(ErrorKind::UnknownName, std::to_string(t.line) + ":" + std::to_string(t.column) + ": unknown name '" + t.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------- evaluation

std::string where(const Expr& e) { return std::to_string(e.line) + ":" + std::to_string(e.column) + ": "; }

template <typename El>
struct Ops;

template <>
struct Ops<UnilateralElement> {
  static UnilateralElement scalar(const Scalar& s) { return UnilateralElement::scalar(s); }
  static UnilateralElement mul(const UnilateralElement& a, const UnilateralElement& b) { return multiply(a, b); }
  static UnilateralElement adj(const UnilateralElement& a) { return adjoint(a); }
  static UnilateralElement atom(const Expr& e, const Environment& env) {
    switch (e.kind) {
      case Expr::Kind::Shift: return UnilateralElement::shift();
      case Expr::Kind::ShiftAdj: return UnilateralElement::shift_adjoint();
      case Expr::Kind::Vacuum: return UnilateralElement::vacuum_projection();
      case Expr::Kind::BiShift:
      case Expr::Kind::BiShiftInv:
        fail(ErrorKind::SideMismatch, where(e) + "V and Vi only exist on the bilateral side");
      case Expr::Kind::DiagLiteral:
        require_divides(e.literal.period(), env.modulus);
        return UnilateralElement::diagonal(e.literal);
      case Expr::Kind::DiagName: {
        if (auto it = env.sequences.find(e.name); it != env.sequences.end()) return UnilateralElement::diagonal(it->second);
        if (auto it = env.functions.find(e.name); it != env.functions.end()) {
          return UnilateralElement::diagonal(EPSequence::periodic(it->second));
        }
        fail(ErrorKind::UnknownName, where(e) + "no sequence named '" + e.name + "'");
      }
      default:
        fail(ErrorKind::InternalInvariant, "not an atom");
    }
  }
};

template <>
struct Ops<BilateralElement> {
  static BilateralElement scalar(const Scalar& s) { return BilateralElement::scalar(s); }
  static BilateralElement mul(const BilateralElement& a, const BilateralElement& b) { return bilateral_multiply(a, b); }
  static BilateralElement adj(const BilateralElement& a) { return bilateral_adjoint(a); }
  static BilateralElement diag(const EPSequence& a, const Expr& e) {
    require(a.correction().empty(), ErrorKind::SideMismatch,
            where(e) + "finitely supported corrections have no bilateral counterpart");
    return BilateralElement::diagonal(a.periodic_part());
  }
  static BilateralElement atom(const Expr& e, const Environment& env) {
    switch (e.kind) {
      case Expr::Kind::BiShift: return BilateralElement::shift();
      case Expr::Kind::BiShiftInv: return BilateralElement::shift_inverse();
      case Expr::Kind::Shift:
      case Expr::Kind::ShiftAdj:
      case Expr::Kind::Vacuum:
        fail(ErrorKind::SideMismatch, where(e) + "U, Us and P0 only exist on the unilateral side");
      case Expr::Kind::DiagLiteral:
        require_divides(e.literal.period(), env.modulus);
        return diag(e.literal, e);
      case Expr::Kind::DiagName: {
        if (auto it = env.functions.find(e.name); it != env.functions.end()) return BilateralElement::diagonal(it->second);
        if (auto it = env.sequences.find(e.name); it != env.sequences.end()) return diag(it->second, e);
        fail(ErrorKind::UnknownName, where(e) + "no function named '" + e.name + "'");
      }
      default:
        fail(ErrorKind::InternalInvariant, "not an atom");
    }
  }
};

template <typename El>
El evaluate(const Expr& e, const Environment& env) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Number: return Ops<El>::scalar(Scalar(e.number));
    case K::Imag: return Ops<El>::scalar(Scalar::i());
    case K::Identity: return Ops<El>::scalar(Scalar(1));
    case K::Add: return evaluate<El>(*e.args[0], env) + evaluate<El>(*e.args[1], env);
    case K::Sub: return evaluate<El>(*e.args[0], env) - evaluate<El>(*e.args[1], env);
    case K::Mul: return Ops<El>::mul(evaluate<El>(*e.args[0], env), evaluate<El>(*e.args[1], env));
    case K::Neg: return -evaluate<El>(*e.args[0], env);
    case K::Pow: {
      const El base = evaluate<El>(*e.args[0], env);
      El out = Ops<El>::scalar(Scalar(1));
      for (unsigned k = 0; k < e.exponent; ++k) out = Ops<El>::mul(out, base);
      return out;
    }
    case K::Comm: {
      const El x = evaluate<El>(*e.args[0], env);
      const El y = evaluate<El>(*e.args[1], env);
      return Ops<El>::mul(x, y) - Ops<El>::mul(y, x);
    }
    case K::Adj: return Ops<El>::adj(evaluate<El>(*e.args[0], env));
    default: return Ops<El>::atom(e, env);
  }
}

bool mentions_bilateral(const Expr& e) {
  if (e.kind == Expr::Kind::BiShift || e.kind == Expr::Kind::BiShiftInv) return true;
  for (const auto& a : e.args) {
    if (mentions_bilateral(*a)) return true;
  }
  return false;
}

std::string power_text(const char* base, std::int64_t p) {
  return p == 1 ? std::string(base) : std::string(base) + "^" + std::to_string(p);
}

/// Text of c·op, where op is already formatted ("" for the identity). Constant
/// coefficients print as scalars; anything else falls back to a diag literal.
std::string term_text(const std::optional<Scalar>& constant, const std::string& diag, const std::string& op,
                      bool op_first) {
  if (!constant) {
    if (op.empty()) return diag;
    return op_first ? op + "*" + diag : diag + "*" + op;
  }
  std::string s = to_string(*constant);
  if (op.empty()) return s.find_first_of("+- ", 1) == std::string::npos ? s : "(" + s + ")";
  if (*constant == Scalar(1)) return op;
  if (s.find_first_not_of("0123456789") != std::string::npos) s = "(" + s + ")";
  return s + "*" + op;
}

std::optional<Scalar> constant_of(const LocallyConstantFunction& f) {
  if (!f.is_constant()) return std::nullopt;
  return f.values()[0];
}

std::optional<Scalar> constant_of(const EPSequence& a) {
  if (!a.correction().empty()) return std::nullopt;
  return constant_of(a.periodic_part());
}

}  // namespace

ExprPtr parse(const std::string& text) { return Parser(lex(text)).parse_all(); }

UnilateralElement eval_unilateral(const ExprPtr& e, const Environment& env) {
  return evaluate<UnilateralElement>(*e, env);
}

BilateralElement eval_bilateral(const ExprPtr& e, const Environment& env) { return evaluate<BilateralElement>(*e, env); }

Element eval(const ExprPtr& e, const Environment& env, Side side) {
  if (side == Side::Unilateral) return eval_unilateral(e, env);
  return eval_bilateral(e, env);
}

Side infer_side(const ExprPtr& e) { return mentions_bilateral(*e) ? Side::Bilateral : Side::Unilateral; }

// ---------------------------------------------------------------- formatting

std::string format(const LocallyConstantFunction& f) {
  std::ostringstream os;
  os << "diag[";
  for (std::size_t r = 0; r < f.values().size(); ++r) os << (r ? ", " : "") << to_string(f.values()[r]);
  os << "]";
  return os.str();
}

std::string format(const EPSequence& a) {
  std::ostringstream os;
  os << "diag[";
  const auto& values = a.periodic_part().values();
  for (std::size_t r = 0; r < values.size(); ++r) os << (r ? ", " : "") << to_string(values[r]);
  if (!a.correction().empty()) {
    os << ";";
    bool first = true;
    for (const auto& [k, v] : a.correction()) {
      os << (first ? " " : ", ") << k << ":" << to_string(v);
      first = false;
    }
  }
  os << "]";
  return os.str();
}

std::string format(const UnilateralElement& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [n, c] : a.terms()) {
    if (!out.empty()) out += " + ";
    if (n == 0 && c == EPSequence::spike(0, Scalar(1))) {
      out += "P0";
      continue;
    }
    const std::string op = n > 0 ? power_text("U", n) : n < 0 ? power_text("Us", -n) : "";
    out += term_text(constant_of(c), format(c), op, n > 0);
  }
  return out;
}

std::string format(const BilateralElement& b) {
  if (b.is_zero()) return "0";
  std::string out;
  for (const auto& [n, c] : b.terms()) {
    if (!out.empty()) out += " + ";
    const std::string op = n > 0 ? power_text("V", n) : n < 0 ? power_text("Vi", -n) : "";
    out += term_text(constant_of(c), format(c), op, true);
  }
  return out;
}

}  // namespace bdshift
