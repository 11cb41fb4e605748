#include "bdshift/json_io.hpp"

#include <cmath>

#include "bdshift/error.hpp"

namespace bdshift {

namespace {

Json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
  return z.get_str();
}

mpz_class integer_from_json(const Json& j) {
  if (j.is_number_integer()) {
    mpz_class z;
    mpz_set_si(z.get_mpz_t(), j.get<std::int64_t>());
    return z;
  }
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) != 0) fail(ErrorKind::SyntaxError, "malformed integer " + j.dump());
    return z;
  }
  fail(ErrorKind::SyntaxError, "expected an exact integer, got " + j.dump());
}

std::int64_t key_to_int(const std::string& key) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used == key.size() && !key.empty(), ErrorKind::SyntaxError, "expected an integer key, got '" + key + "'");
  return v;
}

std::int64_t int_from_json(const Json& j, const char* what) {
  require(j.is_number_integer(), ErrorKind::SyntaxError, std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

Json correction_json(const Correction& c) {
  Json out = Json::object();
  for (const auto& [k, v] : c) out[std::to_string(k)] = to_json(v);
  return out;
}

Correction correction_from_json(const Json& j) {
  Correction c;
  if (j.is_null()) return c;
  require(j.is_object(), ErrorKind::SyntaxError, "correction must be an object");
  for (const auto& [k, v] : j.items()) c[key_to_int(k)] += scalar_from_json(v);
  return c;
}

const Json& field(const Json& j, const char* name) {
  require(j.is_object() && j.contains(name), ErrorKind::SyntaxError, std::string("missing field '") + name + "'");
  return j.at(name);
}

}  // namespace

Json to_json(const Rational& q) { return Json::array({integer_json(q.get_num()), integer_json(q.get_den())}); }

Json to_json(const Scalar& s) {
  return Json::array({integer_json(s.re.get_num()), integer_json(s.re.get_den()), integer_json(s.im.get_num()),
                      integer_json(s.im.get_den())});
}

Json to_json(const SupernaturalNumber& n) {
  Json f = Json::object();
  for (const auto& [p, e] : n.factors()) {
    f[std::to_string(p)] = e == SupernaturalNumber::kInfinite ? Json("inf") : Json(e);
  }
  return Json{{"factors", f}};
}

namespace {

Json table_json(const LocallyConstantFunction& f) {
  Json out = Json::array();
  for (const auto& v : f.values()) out.push_back(to_json(v));
  return out;
}

Json ep_layout(const Correction& c, const LocallyConstantFunction& f) {
  return Json{{"correction", correction_json(c)}, {"period", f.period()}, {"table", table_json(f)}};
}

}  // namespace

Json to_json(const LocallyConstantFunction& f) { return Json{{"period", f.period()}, {"values", table_json(f)}}; }

Json to_json(const EPSequence& a) { return ep_layout(a.correction(), a.periodic_part()); }

Json to_json(const AffineSequence& b) {
  Json j = to_json(b.ep());
  j["linear"] = to_json(b.linear());
  return j;
}

Json to_json(const BilateralAffineSequence& e) {
  Json j = ep_layout(e.ep().correction(), e.ep().periodic_part());
  j["linear"] = to_json(e.linear());
  return j;
}

Json to_json(const UnilateralElement& a) {
  Json t = Json::object();
  for (const auto& [n, c] : a.terms()) t[std::to_string(n)] = to_json(c);
  return Json{{"terms", t}};
}

Json to_json(const BilateralElement& b) {
  Json t = Json::object();
  for (const auto& [n, c] : b.terms()) t[std::to_string(n)] = to_json(c);
  return Json{{"terms", t}};
}

Json to_json(const LaurentPolynomial& p) {
  Json out = Json::object();
  for (const auto& [k, v] : p.coefficients()) out[std::to_string(k)] = to_json(v);
  return out;
}

Json to_json(const MatrixTrigPoly& m) {
  Json rows = Json::array();
  for (std::int64_t r = 0; r < m.size(); ++r) {
    Json row = Json::array();
    for (std::int64_t c = 0; c < m.size(); ++c) row.push_back(to_json(m.at(r, c)));
    rows.push_back(row);
  }
  return Json{{"size", m.size()}, {"entries", rows}};
}

Json to_json(const CovariantDerivationData& d) {
  return Json{{"n", d.n()}, {"beta", to_json(d.beta())}, {"N", to_json(d.modulus())}};
}

Json to_json(const DerivationSum& d) {
  Json c = Json::object();
  for (const auto& [n, beta] : d.components()) c[std::to_string(n)] = to_json(beta);
  return Json{{"components", c}, {"N", to_json(d.modulus())}};
}

Json to_json(const BilateralDerivationSum& d) {
  Json c = Json::object();
  for (const auto& [n, eta] : d.components()) c[std::to_string(n)] = to_json(eta);
  return Json{{"components", c}, {"N", to_json(d.modulus())}};
}

Json to_json(const GNSVector0& v) {
  Json e = Json::object();
  for (const auto& [l, x] : v.entries()) e[std::to_string(l)] = to_json(x);
  return Json{{"entries", e}};
}

Json to_json(const GNSVectorHaar& v) {
  Json e = Json::array();
  for (const auto& [key, x] : v.entries()) e.push_back(Json::array({key.first, key.second, to_json(x)}));
  return Json{{"level", v.level()}, {"entries", e}};
}

Json to_json(const ImplementationData& d) {
  return Json{{"n", d.n},         {"case", to_string(d.kind)}, {"linear", to_json(d.linear)},
              {"fn", to_json(d.fn)}, {"psi", to_json(d.psi)},      {"c", to_json(d.shift_constant)},
              {"level", d.level}, {"N", to_json(d.modulus)}};
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return make_rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_array() && j.size() == 2) {
    mpz_class den = integer_from_json(j[1]);
    require(den != 0, ErrorKind::InvalidArgument, "zero denominator");
    Rational q(integer_from_json(j[0]), den);
    q.canonicalize();
    return q;
  }
  fail(ErrorKind::SyntaxError, "expected an exact rational, got " + j.dump());
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_number_float()) fail(ErrorKind::SyntaxError, "float literals are not accepted in exact contexts");
  if (j.is_number_integer()) return Scalar(make_rational(j.get<std::int64_t>()));
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_array() && j.size() == 4) {
    return Scalar(rational_from_json(Json::array({j[0], j[1]})), rational_from_json(Json::array({j[2], j[3]})));
  }
  if (j.is_array() && j.size() == 2) return Scalar(rational_from_json(j));
  fail(ErrorKind::SyntaxError, "expected an exact scalar, got " + j.dump());
}

SupernaturalNumber supernatural_from_json(const Json& j) {
  if (j.is_number_integer()) return SupernaturalNumber::finite(j.get<std::int64_t>());
  const Json& f = j.is_object() && j.contains("factors") ? j.at("factors") : j;
  require(f.is_object(), ErrorKind::SyntaxError, "supernatural number must be an integer or {\"factors\": {...}}");
  std::map<std::uint64_t, unsigned> factors;
  for (const auto& [p, e] : f.items()) {
    std::int64_t prime = key_to_int(p);
    require(prime >= 2, ErrorKind::InvalidArgument, "factor keys must be primes");
    unsigned exp = 0;
    if (e.is_string()) {
      require(e.get<std::string>() == "inf", ErrorKind::SyntaxError, "exponent must be an integer or \"inf\"");
      exp = SupernaturalNumber::kInfinite;
    } else {
      std::int64_t v = int_from_json(e, "exponent");
      require(v >= 0 && v < 64, ErrorKind::InvalidArgument, "exponent out of range");
      exp = static_cast<unsigned>(v);
    }
    factors[static_cast<std::uint64_t>(prime)] = exp;
  }
  return SupernaturalNumber(std::move(factors));
}

namespace {

LocallyConstantFunction table_from_json(const Json& v, const Json* period) {
  require(v.is_array() && !v.empty(), ErrorKind::SyntaxError, "value table must be a non-empty array");
  if (period != nullptr) {
    require(int_from_json(*period, "period") == static_cast<std::int64_t>(v.size()), ErrorKind::SyntaxError,
            "period does not match the length of the value table");
  }
  std::vector<Scalar> values;
  for (const auto& x : v) values.push_back(scalar_from_json(x));
  return LocallyConstantFunction(std::move(values));
}

const Json* optional_field(const Json& j, const char* key) { return j.contains(key) ? &j.at(key) : nullptr; }

}  // namespace

LocallyConstantFunction lcf_from_json(const Json& j) {
  if (!j.is_object()) return table_from_json(j, nullptr);
  return table_from_json(field(j, "values"), optional_field(j, "period"));
}

EPSequence ep_from_json(const Json& j) {
  if (j.is_array()) return EPSequence::periodic(lcf_from_json(j));
  require(j.is_object(), ErrorKind::SyntaxError, "eventually periodic sequence must be an object or array");
  LocallyConstantFunction per =
      j.contains("table") ? table_from_json(j.at("table"), optional_field(j, "period")) : LocallyConstantFunction();
  return {correction_from_json(j.value("correction", Json())), std::move(per)};
}

AffineSequence affine_from_json(const Json& j) {
  Scalar linear = j.is_object() && j.contains("linear") ? scalar_from_json(j.at("linear")) : Scalar(0);
  if (j.is_object() && j.contains("ep")) return {std::move(linear), ep_from_json(j.at("ep"))};
  return {std::move(linear), ep_from_json(j)};
}

UnilateralElement unilateral_from_json(const Json& j) {
  UnilateralElement::Terms t;
  for (const auto& [k, v] : field(j, "terms").items()) t.emplace(key_to_int(k), ep_from_json(v));
  return UnilateralElement(std::move(t));
}

BilateralElement bilateral_from_json(const Json& j) {
  BilateralElement::Terms t;
  for (const auto& [k, v] : field(j, "terms").items()) t.emplace(key_to_int(k), lcf_from_json(v));
  return BilateralElement(std::move(t));
}

LaurentPolynomial laurent_from_json(const Json& j) {
  require(j.is_object(), ErrorKind::SyntaxError, "Laurent polynomial must be an object of power -> scalar");
  LaurentPolynomial::Coefficients c;
  for (const auto& [k, v] : j.items()) c[key_to_int(k)] += scalar_from_json(v);
  return LaurentPolynomial(std::move(c));
}

MatrixTrigPoly matrix_from_json(const Json& j) {
  const std::int64_t size = int_from_json(field(j, "size"), "size");
  MatrixTrigPoly m(size);
  const Json& rows = field(j, "entries");
  require(rows.is_array() && static_cast<std::int64_t>(rows.size()) == size, ErrorKind::SyntaxError,
          "entries must have one row per index");
  for (std::int64_t r = 0; r < size; ++r) {
    require(rows[r].is_array() && static_cast<std::int64_t>(rows[r].size()) == size, ErrorKind::SyntaxError,
            "matrix rows must have size entries");
    for (std::int64_t c = 0; c < size; ++c) m.at(r, c) = laurent_from_json(rows[r][c]);
  }
  return m;
}

DerivationSum derivation_from_json(const Json& j, const SupernaturalNumber* default_n) {
  SupernaturalNumber n;
  if (j.contains("N")) {
    n = supernatural_from_json(j.at("N"));
  } else {
    require(default_n != nullptr, ErrorKind::SyntaxError, "derivation needs an N");
    n = *default_n;
  }
  DerivationSum::Components c;
  for (const auto& [k, v] : field(j, "components").items()) c.emplace(key_to_int(k), affine_from_json(v));
  return DerivationSum(std::move(n), std::move(c));
}

BilateralDerivationSum bilateral_derivation_from_json(const Json& j, const SupernaturalNumber* default_n) {
  SupernaturalNumber n;
  if (j.contains("N")) {
    n = supernatural_from_json(j.at("N"));
  } else {
    require(default_n != nullptr, ErrorKind::SyntaxError, "derivation needs an N");
    n = *default_n;
  }
  BilateralDerivationSum::Components c;
  for (const auto& [k, v] : field(j, "components").items()) {
    BilateralEPSequence ep;
    Scalar linear;
    const Json& body = v.is_object() && v.contains("ep") ? v.at("ep") : v;
    if (body.is_array()) {
      ep = BilateralEPSequence::periodic(lcf_from_json(body));
    } else {
      require(body.is_object(), ErrorKind::SyntaxError, "bilateral coefficient must be an object or array");
      LocallyConstantFunction per = body.contains("table")
                                        ? table_from_json(body.at("table"), optional_field(body, "period"))
                                        : LocallyConstantFunction();
      ep = BilateralEPSequence(correction_from_json(body.value("correction", Json())), std::move(per));
    }
    if (v.is_object() && v.contains("linear")) linear = scalar_from_json(v.at("linear"));
    c.emplace(key_to_int(k), BilateralAffineSequence(std::move(linear), std::move(ep)));
  }
  return BilateralDerivationSum(std::move(n), std::move(c));
}

GNSVector0 gns0_from_json(const Json& j) {
  GNSVector0::Entries e;
  for (const auto& [k, v] : field(j, "entries").items()) e[key_to_int(k)] += scalar_from_json(v);
  return GNSVector0(std::move(e));
}

GNSVectorHaar gns_haar_from_json(const Json& j) {
  const std::int64_t level = int_from_json(field(j, "level"), "level");
  GNSVectorHaar::Entries e;
  for (const auto& item : field(j, "entries")) {
    require(item.is_array() && item.size() == 3, ErrorKind::SyntaxError, "Haar entries are [m, x, scalar]");
    e[{int_from_json(item[0], "m"), int_from_json(item[1], "x")}] += scalar_from_json(item[2]);
  }
  return {level, std::move(e)};
}

ImplementationData implementation_from_json(const Json& j, const SupernaturalNumber& n) {
  const std::string tag = field(j, "case").get<std::string>();
  ImplementationCase kind;
  if (tag == "bounded") {
    kind = ImplementationCase::Bounded;
  } else if (tag == "infinite-invariant") {
    kind = ImplementationCase::InfiniteInvariant;
  } else if (tag == "finite-divisible") {
    kind = ImplementationCase::FiniteDivisible;
  } else {
    fail(ErrorKind::SyntaxError, "unknown implementation case '" + tag + "'");
  }
  return make_implementation(int_from_json(field(j, "n"), "n"), kind,
                             j.contains("linear") ? scalar_from_json(j.at("linear")) : Scalar(0),
                             j.contains("fn") ? lcf_from_json(j.at("fn")) : LocallyConstantFunction(), n,
                             j.contains("level") ? int_from_json(j.at("level"), "level") : 0,
                             j.contains("psi") ? lcf_from_json(j.at("psi")) : LocallyConstantFunction(),
                             j.contains("c") ? scalar_from_json(j.at("c")) : Scalar(0));
}

Json to_json(const TruncationReport& r) {
  return Json{{"M", r.window},
              {"D", r.margin},
              {"exact_match", r.exact_match},
              {"max_deviation", r.max_deviation},
              {"relative_deviation", r.relative_deviation},
              {"float_match", r.float_match},
              {"verdict", r.verdict}};
}

Json to_json(const NormEstimate& e) {
  return Json{{"value", e.value}, {"converged", e.converged}, {"iterations", e.iterations}};
}

Json to_json(const QuotientNormEstimate& e) {
  Json log = Json::array();
  for (const auto& [g, v] : e.refinement) log.push_back(Json{{"grid", g}, {"value", v}});
  return Json{{"value", e.value}, {"lower_bound", true}, {"refinement", log}};
}

Json to_json(const ParametrixReport& r) {
  return Json{{"state", to_string(r.state)},
              {"M", r.windows},
              {"min_sv", r.min_sv},
              {"growth", r.growth},
              {"diverges", r.diverges},
              {"levels", r.levels},
              {"small_counts", r.small_counts},
              {"fibres_grow", r.fibres_grow},
              {"numeric_positive", r.numeric_positive},
              {"predicate", r.predicate_text},
              {"predicate_positive", r.predicate},
              {"agrees", r.predicate == r.numeric_positive},
              {"verdict", r.verdict}};
}

Json to_json(const ImplementationCheck& c) {
  return Json{{"margin", c.margin}, {"exact", c.exact}, {"max_deviation", c.max_deviation}};
}

Json to_json(const Classification& c) {
  return Json{{"C", to_json(c.linear)},
              {"inner_per", to_json(c.inner_per.beta())},
              {"approx_c00", to_json(c.approx_c00.beta())}};
}

Json dense_to_json(const DenseMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(row);
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

}  // namespace bdshift
