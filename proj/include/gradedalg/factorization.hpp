#pragma once

#include <string>
#include <vector>

#include "gradedalg/wiener.hpp"

namespace gradedalg {

// Index-sign splitting of the Wiener algebra. Following the source
// convention, the "plus" subalgebra holds the strictly negative indices and
// its complement (the "minus-zero" side) holds the indices n >= 0, so the
// minus factor carries the constant term. Reports expose both names.
WienerElement projectPlus(const WienerElement& a);   // keep n < 0
WienerElement projectMinus(const WienerElement& a);  // keep n >= 0

// ||P||^beta_beta = ||Q||^beta_beta = 1: the graded l1 norm splits over
// disjoint index sets, and each projection fixes elements of its range.
double projectionNorm(const InstanceSpec& spec, const Rational& beta);

// T_a(x) = P(ax) + Q(x) and R_a(x) = P(x) + Q(xa).
WienerElement applyT(const WienerElement& a, const WienerElement& x, int capHalfWidth = -1);
WienerElement applyR(const WienerElement& a, const WienerElement& x, int capHalfWidth = -1);

struct IterationLogEntry {
    int iteration = 0;
    double incrementNorm = 0.0;
};

struct MembershipReport {
    // largest coefficient norm found outside the allowed index set
    double plusFactorViolation = 0.0;      // a_+ - 1 outside {n < 0}
    double plusInverseViolation = 0.0;     // a_+^{-1} - 1 outside {n < 0}
    double minusFactorViolation = 0.0;     // a_- - 1 outside {n >= 0}
    double minusInverseViolation = 0.0;    // a_-^{-1} - 1 outside {n >= 0}
    bool pass = false;
};

struct FactorizationResult {
    WienerElement aMinus, aPlus, aMinusInv, aPlusInv;
    Rational alpha{0}, beta{0};
    double contraction = 0.0;          // A_{beta,alpha} ||1-a||_alpha max(||P||,||Q||)
    double residualMinusPlus = 0.0;    // ||a - a_- a_+||_beta
    double residualPlusMinus = 0.0;    // ||a - a_+ a_-||_beta
    MembershipReport membership;
    std::vector<IterationLogEntry> logX, logY;
    std::string innerInversionMethod;  // "neumann" or "patched"
};

struct FactorizationOptions {
    int maxIterations = 100000;
    int capHalfWidth = 4096;
    double membershipTol = 1e-12;
    int verifyGrid = 512;
};

// Canonical factorization a = a_- a_+ under
// A_{beta,alpha} ||1-a||_alpha max(||P||,||Q||) < 1, via the fixed-point
// iterations x_{k+1} = 1 + P((1-a) x_k), y_{k+1} = 1 + Q(y_k (1-a)) and
// inner inversion of x, y. Both factor orderings are always reported;
// a = a_- a_+ is the verified contract.
FactorizationResult solveCanonicalFactorization(const WienerElement& a, const Rational& alpha,
                                                const Rational& beta, double tol,
                                                const FactorizationOptions& opts = {});

struct VerificationReport {
    double gridResidualMinusPlus = 0.0;  // max_t ||a(t) - a_-(t)a_+(t)||
    double gridResidualPlusMinus = 0.0;
    double normResidualMinusPlus = 0.0;
    double normResidualPlusMinus = 0.0;
    MembershipReport membership;
    bool minusPlusPasses = false;
    bool plusMinusPasses = false;
};

VerificationReport verifyFactorization(const WienerElement& a, const FactorizationResult& result,
                                       int gridSize, double tol = 1e-8);

// Unique solutions of x - P(ax) = f and y - Q(ya) = g under the contraction
// A_{beta,alpha} ||a||_alpha max(||P||,||Q||) < 1, by the same seeded
// iterations.
std::pair<WienerElement, WienerElement> solvePairEquations(const WienerElement& a,
                                                           const WienerElement& f,
                                                           const WienerElement& g,
                                                           const Rational& alpha,
                                                           const Rational& beta, double tol,
                                                           const FactorizationOptions& opts = {});

}  // namespace gradedalg
