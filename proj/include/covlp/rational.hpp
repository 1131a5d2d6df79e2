#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "covlp/core.hpp"

namespace covlp {

// Exact arbitrary-precision rationals. Conversion from double is exact (every
// finite double is a dyadic rational), so reference results never inherit
// rounding from the inputs.
using Rational = boost::multiprecision::cpp_rational;
using RationalVec = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVec>;

Rational rational_from_double(double v);
RationalVec rational_vec(const DenseVec& v);
double to_double(const Rational& r);

}  // namespace covlp
