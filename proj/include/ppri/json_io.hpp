#pragma once

#include "ppri/lattice.hpp"
#include "ppri/matrix.hpp"
#include "ppri/norms.hpp"
#include "ppri/operators.hpp"
#include "ppri/rational.hpp"
#include "ppri/scalars.hpp"
#include "ppri/series.hpp"

#include <json.hpp>

#include <vector>

// Conversions between library values and JSON. Rationals are written as
// "a/b" strings; readers accept strings or JSON integers (and, where a real
// value is expected, JSON floats). Malformed input throws ParseError.
namespace ppri::json_io {

using Json = nlohmann::json;

Rational rational_from(const Json& j);
std::vector<Rational> vector_from(const Json& j);
std::vector<double> real_vector_from(const Json& j);
RationalMatrix matrix_from(const Json& j);

// {"kind":"finite","scalar":"rational","terms":["1","1/2"]}; scalar may be
// "padic" with a "prime" field.
CoeffSeq<Rational> series_from(const Json& j);
// {"support":{"-1":"1","1":"1"}} with an optional "tail" bound.
LaurentSeq laurent_from(const Json& j);
// {"type":"box","halfwidths":[...]}, {"type":"box","lower":[...],"upper":[...]},
// {"type":"ellipsoid","matrix":[...]}, {"type":"named","name":"ball","dim":2,"radius":"1"}.
ConvexRegion region_from(const Json& j);

Json to_json(const Rational& x);
Json to_json(std::span<const Rational> v);
Json to_json(const PAdic& x);
Json to_json(const Complex& z);
Json to_json(const RationalMatrix& m);
Json to_json(const EigenDecomp& e);
Json to_json(const AxiomReport& r);
Json to_json(const SumResult<Complex>& s);
Json to_json(const SumResult<double>& s);
Json to_json(const SumResult<PAdic>& s);
Json to_json(const LaurentSeq& a);

} // namespace ppri::json_io
