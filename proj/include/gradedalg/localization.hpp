#pragma once

#include <utility>
#include <vector>

#include "gradedalg/trapezoid.hpp"
#include "gradedalg/wiener.hpp"

namespace gradedalg {

// b_eps = omega_eps a + (1 - omega_eps) a(0), materialized on |n| <= halfWidth
// from the kernel's closed-form coefficients, with the dropped mass and the
// input tail recorded in the Wiener tail bound.
WienerElement localize(const WienerElement& a, double eps, int halfWidth = -1);

// Constant Fourier coefficient of the localized symbol, evaluated directly:
// a_0 + sum_{n>=1} (a_n + a_{-n}) (1 + (cos eps n - cos 2 eps n)/(pi n^2 eps)
// - 3 eps/(2 pi)).
AlgebraElement b0OfEpsilon(const WienerElement& a, double eps);

struct LocalizationOptions {
    Rational alpha{0};             // home grade of the symbol; defaulted per instance
    bool alphaSet = false;
    double contractionTarget = 0.6;  // accept eps once the certified value drops below this
    double epsStart = M_PI / 4.0;
    int maxHalvings = 40;
    double preTol = 1e-8;            // left-inverse precondition tolerance
    double perturbTol = 1e-10;       // residual target for the constant-term left inverse
    int omegaHalfWidth = 1024;       // materialization window of the localized symbol
    int offDiagonalWindow = 8192;    // window used when summing ||b_n|| off the diagonal
};

// Certificate data for one localized symbol: the accepted eps, the grade
// chain, and the certified contraction value
//   A_{gamma,beta} A_{beta,alpha} sum_{n>=1}(||b_n|| + ||b_{-n}||) ||b_0'||.
struct LocalizationCertificate {
    double t0 = 0.0;
    double eps = 0.0;
    Rational alpha{0};
    Rational beta{0};
    Rational gamma{0};
    double contraction = 0.0;
    double offDiagonalSum = 0.0;        // certified upper bound for the coefficient sum
    double b0LeftInvNorm = 0.0;         // ||b_0'||_beta
    AlgebraElement b0LeftInverse;       // carried for the series inversion step
    std::vector<double> decayReport;    // ||b_n|| + ||b_{-n}||, diagnostic only
    int halvings = 0;
};

// Rotate a by t0, then search eps by halving until the localization
// contraction holds. The caller supplies a left inverse of a(t0).
std::pair<WienerElement, LocalizationCertificate> chooseLocalization(
    const WienerElement& a, double t0, const AlgebraElement& leftInvAtT0,
    const LocalizationOptions& opts = {});

struct LocalInverseOptions {
    int iterateHalfWidth = 4096;  // cap for the Neumann iterates
    int residualWindow = 128;     // half-width of the measured residual window
    int maxTerms = 4000;
    int maxEnlargements = 2;      // iterate-cap doublings before giving up
};

struct LocalInverseResult {
    WienerElement leftInverse;
    double windowResidual = 0.0;       // sum_{|n|<=window} ||(b'b - 1)_n|| at gamma
    double outOfWindowResidual = 0.0;  // remaining coefficient mass, reported
    int window = 0;
    int terms = 0;
};

// Left inverse of a localized symbol via b' = b_0' sum_n (-(b - b_0) b_0')^n,
// truncated under the certificate's geometric ratio. The sign convention is
// verified at runtime by the residual check.
LocalInverseResult localLeftInverse(const WienerElement& b, const LocalizationCertificate& cert,
                                    double tol, const LocalInverseOptions& opts = {});

}  // namespace gradedalg
