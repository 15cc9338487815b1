#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

#include "gradedalg/wiener.hpp"

namespace gradedalg {

// Brute-force reference implementations for tests and derived fixtures.
// Everything here is dense linear algebra and direct grid transforms; none
// of it calls the certified solvers it is used to check. Matrix/scalar
// instance only (finite-dimensional coefficients).

// Dense block Toeplitz compression of multiplication by a: block (j, k)
// equals the coefficient a_{j-k}.
struct FiniteSection {
    int halfWidth = 0;
    int dim = 0;
    Eigen::MatrixXcd matrix;  // (2N+1)d x (2N+1)d
};

FiniteSection toeplitzSection(const WienerElement& a, int halfWidth);

// y = a x through the dense section; equals wienerMultiply up to truncation
// bookkeeping.
WienerElement toeplitzApply(const WienerElement& a, const WienerElement& x);

struct PointwiseInverseReport {
    WienerElement inverse;
    int gridSize = 0;
    // l1 coefficient mass per dyadic band |n| in [2^k, 2^{k+1}): decay
    // evidence for Wiener-class membership
    std::vector<double> bandMass;
};

// Invert a(t) on a uniform grid and project back to Fourier coefficients by
// the discrete transform.
PointwiseInverseReport pointwiseInverseOracle(const WienerElement& a, int gridSize,
                                              int outHalfWidth = -1);

// Classical scalar log-split factorization for winding-number-zero symbols,
// normalized like the factorization module (the minus factor carries the
// constant term).
std::pair<WienerElement, WienerElement> scalarWienerHopfOracle(const WienerElement& a,
                                                               int gridSize = -1);

// Dense finite-section solve of x - P(s x) = rhs on the index window
// [-halfWidth, halfWidth] (P keeps indices n < 0).
WienerElement finiteSectionSolveX(const WienerElement& s, const WienerElement& rhs,
                                  int halfWidth);
// Dense finite-section solve of y - Q(y s) = rhs (Q keeps indices n >= 0).
WienerElement finiteSectionSolveY(const WienerElement& s, const WienerElement& rhs,
                                  int halfWidth);

}  // namespace gradedalg
