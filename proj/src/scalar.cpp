#include "bdshift/scalar.hpp"

#include <cctype>
#include <ostream>

#include "bdshift/error.hpp"

namespace bdshift {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::PeriodNotDivisor: return "PeriodNotDivisor";
    case ErrorKind::NotFinite: return "NotFinite";
    case ErrorKind::UnboundedCoefficient: return "UnboundedCoefficient";
    case ErrorKind::RegimeMismatch: return "RegimeMismatch";
    case ErrorKind::NonzeroMean: return "NonzeroMean";
    case ErrorKind::NotDerivation: return "NotDerivation";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::LevelMismatch: return "LevelMismatch";
    case ErrorKind::SideMismatch: return "SideMismatch";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

Rational make_rational(std::int64_t num, std::int64_t den) {
  require(den != 0, ErrorKind::InvalidArgument, "zero denominator");
  mpz_class n, d;
  mpz_set_si(n.get_mpz_t(), num);
  mpz_set_si(d.get_mpz_t(), den);
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) fail(ErrorKind::SyntaxError, "empty rational literal");
  std::size_t pos = 0;
  if (text[0] == '+' || text[0] == '-') pos = 1;
  bool seen_slash = false;
  bool digit_before = false;
  bool digit_after = false;
  for (std::size_t k = pos; k < text.size(); ++k) {
    char c = text[k];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      (seen_slash ? digit_after : digit_before) = true;
    } else if (c == '/' && !seen_slash) {
      seen_slash = true;
    } else {
      fail(ErrorKind::SyntaxError, "malformed rational literal '" + text + "'");
    }
  }
  if (!digit_before || (seen_slash && !digit_after)) {
    fail(ErrorKind::SyntaxError, "malformed rational literal '" + text + "'");
  }
  std::string body = text[0] == '+' ? text.substr(1) : text;
  Rational q;
  if (q.set_str(body, 10) != 0) fail(ErrorKind::SyntaxError, "malformed rational literal '" + text + "'");
  require(q.get_den() != 0, ErrorKind::SyntaxError, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Scalar& Scalar::operator*=(const Scalar& o) {
  Rational r = re * o.re - im * o.im;
  Rational m = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(m);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  Rational d = o.norm_sq();
  require(sgn(d) != 0, ErrorKind::InvalidArgument, "division by zero scalar");
  *this *= o.conj();
  re /= d;
  im /= d;
  return *this;
}

std::string to_string(const Scalar& s) {
  if (s.is_real()) return to_string(s.re);
  if (sgn(s.re) == 0) return to_string(s.im) + " i";
  std::string imag = to_string(s.im);
  if (imag[0] != '-') imag = "+" + imag;
  return to_string(s.re) + imag + " i";
}

Scalar parse_scalar(const std::string& text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  if (compact.empty()) fail(ErrorKind::SyntaxError, "empty scalar literal");
  Scalar out;
  std::size_t start = 0;
  while (start < compact.size()) {
    std::size_t end = start + 1;
    while (end < compact.size() && compact[end] != '+' && compact[end] != '-') ++end;
    std::string term = compact.substr(start, end - start);
    if (term.back() == 'i') {
      std::string coeff = term.substr(0, term.size() - 1);
      if (coeff.empty() || coeff == "+") coeff = "1";
      if (coeff == "-") coeff = "-1";
      out.im += parse_rational(coeff);
    } else {
      out.re += parse_rational(term);
    }
    start = end;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << to_string(s); }

}  // namespace bdshift
