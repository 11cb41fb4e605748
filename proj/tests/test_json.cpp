#include <doctest.h>

#include "bdshift/error.hpp"
#include "bdshift/json_io.hpp"
#include "support/generators.hpp"

using namespace bdshift;
using namespace bdshift::testing;

TEST_CASE("exact values round trip through JSON") {
  Gen g(91);
  const auto six = SupernaturalNumber::finite(6);
  for (int t = 0; t < 100; ++t) {
    const Scalar s = g.scalar();
    CHECK(scalar_from_json(Json::parse(to_json(s).dump())) == s);
    const auto a = g.unilateral({1, 2, 3, 6});
    CHECK(unilateral_from_json(Json::parse(to_json(a).dump())) == a);
    const auto b = g.bilateral({1, 2, 3, 6});
    CHECK(bilateral_from_json(Json::parse(to_json(b).dump())) == b);
    const auto d = g.derivation(six, {1, 2, 3, 6});
    CHECK(derivation_from_json(Json::parse(to_json(d).dump())) == d);
    const auto p = g.laurent();
    CHECK(laurent_from_json(Json::parse(to_json(p).dump())) == p);
    const auto m = g.matrix(3);
    CHECK(matrix_from_json(Json::parse(to_json(m).dump())) == m);
  }
}

TEST_CASE("documented layouts") {
  const auto s = Scalar(make_rational(1, 2), make_rational(-3, 4));
  CHECK(to_json(s) == Json::parse("[1, 2, -3, 4]"));
  CHECK(scalar_from_json(Json("1/2-3/4 i")) == s);
  CHECK(scalar_from_json(Json::parse("[1, 2]")) == Scalar(make_rational(1, 2)));
  CHECK_THROWS_AS(scalar_from_json(Json(0.5)), Error);

  const Rational huge("123456789012345678901234567890");
  CHECK(to_json(Scalar(huge))[0] == "123456789012345678901234567890");
  CHECK(scalar_from_json(to_json(Scalar(huge))) == Scalar(huge));

  const auto inf = SupernaturalNumber(std::map<std::uint64_t, unsigned>{{2, 3}, {5, SupernaturalNumber::kInfinite}});
  CHECK(to_json(inf) == Json::parse(R"({"factors": {"2": 3, "5": "inf"}})"));
  CHECK(supernatural_from_json(to_json(inf)) == inf);
  CHECK(supernatural_from_json(Json(12)) == SupernaturalNumber::finite(12));

  const auto f = lcf_from_json(Json::parse(R"({"period": 2, "values": [1, -1]})"));
  CHECK(to_json(f) == Json::parse(R"({"period": 2, "values": [[1,1,0,1], [-1,1,0,1]]})"));
  CHECK_THROWS_AS(lcf_from_json(Json::parse(R"({"period": 3, "values": [1, -1]})")), Error);

  const auto beta = affine_from_json(Json::parse(R"({"correction": {"2": 5}, "period": 1, "table": [0], "linear": 1})"));
  CHECK(beta.linear() == Scalar(1));
  CHECK(beta.ep() == EPSequence::spike(2, Scalar(5)));
  const auto j = to_json(beta);
  CHECK(j.contains("linear"));
  CHECK(j.at("correction").contains("2"));
}
