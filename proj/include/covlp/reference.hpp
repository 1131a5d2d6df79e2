#pragma once

#include <cstddef>
#include <vector>

#include "covlp/binpack.hpp"
#include "covlp/core.hpp"
#include "covlp/rational.hpp"

namespace covlp {

// Covering LP in explicit rational form: min c^T x subject to A x >= b,
// x >= 0, with A >= 0 elementwise, b > 0, c > 0. Always feasible once
// validated (no zero rows), and bounded since c > 0.
struct ExplicitRationalLp {
  RationalMatrix A;
  RationalVec b;
  RationalVec c;

  std::size_t rows() const { return A.size(); }
  std::size_t cols() const { return c.size(); }
  void validate() const;

  static ExplicitRationalLp from_double(const std::vector<DenseVec>& A,
                                        const DenseVec& b, const DenseVec& c);
};

// Exact optimum with a dual certificate: A x >= b, A^T y <= c, y >= 0 and
// c^T x = b^T y all hold exactly, so objective is the true optimum r*.
struct ExactLpSolution {
  RationalVec x;
  Rational objective;
  RationalVec y;
};

// Size caps for the exact simplex; it is a verification tool, not a solver
// for large instances.
inline constexpr std::size_t kReferenceMaxRows = 50;
inline constexpr std::size_t kReferenceMaxCols = 10000;

ExactLpSolution exact_lp_solve(const ExplicitRationalLp& lp);

// Exact value of max { min_i (Ax)_i / b_i : c^T x = r, x >= 0 } for r > 0,
// the feasibility margin the approximate solver probes during its binary
// search. lambda_star >= 1 iff the level set { c^T x <= r } contains a
// feasible cover.
Rational exact_lambda_star(const ExplicitRationalLp& lp, const Rational& r);

// All feasible nonempty configurations of the instance in ascending
// lexicographic count order. Throws once the count would pass the cap.
inline constexpr std::size_t kMaxEnumeratedConfigs = 1000000;
std::vector<Configuration> enumerate_configurations(const BinPackInstance& inst);

// The configuration LP, columns enumerated explicitly: A[i][k] = copies of
// type i in configuration k, b = multiplicities, every cost 1.
ExplicitRationalLp configuration_lp(const BinPackInstance& inst);

struct BinPackReference {
  std::vector<Configuration> configs;
  ExactLpSolution lp;
};

// Exact fractional bin packing optimum via full enumeration.
BinPackReference binpack_reference_optimum(const BinPackInstance& inst);

}  // namespace covlp
