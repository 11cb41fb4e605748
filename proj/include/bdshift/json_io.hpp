#pragma once

#include <json.hpp>

#include "bdshift/algebra.hpp"
#include "bdshift/derivations.hpp"
#include "bdshift/gns.hpp"
#include "bdshift/numerics.hpp"

namespace bdshift {

using Json = nlohmann::json;

// Exact values. Scalars are [re_num, re_den, im_num, im_den]; integers that do not fit in
// 64 bits are written as decimal strings. Readers also accept "a/b+c/d i" strings.
Json to_json(const Rational& q);
Json to_json(const Scalar& s);
Json to_json(const SupernaturalNumber& n);
Json to_json(const LocallyConstantFunction& f);
Json to_json(const EPSequence& a);
Json to_json(const AffineSequence& b);
Json to_json(const BilateralAffineSequence& e);
Json to_json(const UnilateralElement& a);
Json to_json(const BilateralElement& b);
Json to_json(const LaurentPolynomial& p);
Json to_json(const MatrixTrigPoly& m);
Json to_json(const CovariantDerivationData& d);
Json to_json(const DerivationSum& d);
Json to_json(const BilateralDerivationSum& d);
Json to_json(const GNSVector0& v);
Json to_json(const GNSVectorHaar& v);
Json to_json(const ImplementationData& d);

Rational rational_from_json(const Json& j);
Scalar scalar_from_json(const Json& j);
SupernaturalNumber supernatural_from_json(const Json& j);
LocallyConstantFunction lcf_from_json(const Json& j);
EPSequence ep_from_json(const Json& j);
AffineSequence affine_from_json(const Json& j);
UnilateralElement unilateral_from_json(const Json& j);
BilateralElement bilateral_from_json(const Json& j);
LaurentPolynomial laurent_from_json(const Json& j);
MatrixTrigPoly matrix_from_json(const Json& j);
/// {"components": {...}, "N": ...}; the N key may be omitted when a default is given.
DerivationSum derivation_from_json(const Json& j, const SupernaturalNumber* default_n = nullptr);
BilateralDerivationSum bilateral_derivation_from_json(const Json& j, const SupernaturalNumber* default_n = nullptr);
GNSVector0 gns0_from_json(const Json& j);
GNSVectorHaar gns_haar_from_json(const Json& j);
ImplementationData implementation_from_json(const Json& j, const SupernaturalNumber& n);

// Reports (floating point).
Json to_json(const TruncationReport& r);
Json to_json(const NormEstimate& e);
Json to_json(const QuotientNormEstimate& e);
Json to_json(const ParametrixReport& r);
Json to_json(const ImplementationCheck& c);
Json to_json(const Classification& c);
Json dense_to_json(const DenseMatrix& m);

}  // namespace bdshift
