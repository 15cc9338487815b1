#include "gradedalg/factorization.hpp"

#include <algorithm>
#include <cmath>

#include "gradedalg/calculus.hpp"
#include "gradedalg/patch.hpp"

namespace gradedalg {

namespace {

bool keepNegative(int n) { return n < 0; }
bool keepNonNegative(int n) { return n >= 0; }

// Largest coefficient norm of (w - offset) outside the allowed index set.
double supportViolation(const WienerElement& w, bool minusSide, const Rational& grade) {
    double worst = 0.0;
    for (int n = -w.halfWidth(); n <= w.halfWidth(); ++n) {
        const bool allowed = minusSide ? (n >= 0) : (n < 0);
        if (allowed) continue;
        double v = w.coeffNorm(n, grade);
        if (n == 0 && !minusSide) {
            // the unit offset lives at n = 0
            AlgebraElement c = w.coeff(0) - AlgebraElement::unit(w.spec());
            c.clearTailBounds();
            v = c.truncationNorm(grade);
        }
        worst = std::max(worst, v);
    }
    return worst;
}

MembershipReport membershipReport(const WienerElement& aPlus, const WienerElement& aPlusInv,
                                  const WienerElement& aMinus, const WienerElement& aMinusInv,
                                  const Rational& grade, double tol) {
    MembershipReport rep;
    rep.plusFactorViolation = supportViolation(aPlus, false, grade);
    rep.plusInverseViolation = supportViolation(aPlusInv, false, grade);
    // for the minus side the offset n = 0 block is allowed, so plain check
    rep.minusFactorViolation = supportViolation(aMinus, true, grade);
    rep.minusInverseViolation = supportViolation(aMinusInv, true, grade);
    rep.pass = rep.plusFactorViolation <= tol && rep.plusInverseViolation <= tol &&
               rep.minusFactorViolation <= tol && rep.minusInverseViolation <= tol;
    return rep;
}

// Inner inversion of the factor equations' solutions: Neumann when the
// deviation from 1 contracts, the patched Wiener inverse otherwise.
WienerElement invertInU(const WienerElement& x, const Rational& alpha, const Rational& beta,
                        double tol, std::string& method) {
    const WienerElement one = WienerElement::unit(x.spec());
    WienerElement v = one - x;
    auto neumannWithRoom = [&](const Rational& lo, const Rational& hi, double kappa) {
        // size the index cap so the whole Neumann sum stays exact
        int terms = 1;
        if (kappa > 0.0)
            terms = static_cast<int>(
                        std::ceil(std::log(tol * (1.0 - kappa)) / std::log(kappa))) +
                    2;
        v.setMulCap(std::max(v.mulCap(), (terms + 2) * std::max(1, v.halfWidth())));
        return neumannInverse(v, lo, hi, tol).inverse;
    };
    const double kappaLow = x.ladderA(beta, alpha) * v.norm(alpha);
    if (kappaLow < 1.0) {
        method = "neumann";
        return neumannWithRoom(alpha, beta, kappaLow);
    }
    const Rational betaUp = x.ladderH(beta);
    if (x.spec().validGrade(betaUp)) {
        const double kappaHigh = x.ladderA(betaUp, beta) * v.norm(beta);
        if (kappaHigh < 1.0) {
            method = "neumann";
            return neumannWithRoom(beta, betaUp, kappaHigh);
        }
    }
    method = "patched";
    WienerInvertOptions wopts;
    wopts.tol = std::max(tol, 1e-8);
    return wienerLeftInverse(x, wopts).inverse;
}

}  // namespace

WienerElement projectPlus(const WienerElement& a) { return a.filtered(keepNegative); }

WienerElement projectMinus(const WienerElement& a) { return a.filtered(keepNonNegative); }

double projectionNorm(const InstanceSpec& spec, const Rational& beta) {
    spec.requireGrade(beta);
    // the graded l1 norm splits over the disjoint index sets and both
    // projections fix their ranges, so the norm is exactly one
    return 1.0;
}

WienerElement applyT(const WienerElement& a, const WienerElement& x, int capHalfWidth) {
    WienerElement::requireCompatible(a, x);
    return projectPlus(wienerMultiplyImpl(a, x, capHalfWidth, false)) + projectMinus(x);
}

WienerElement applyR(const WienerElement& a, const WienerElement& x, int capHalfWidth) {
    WienerElement::requireCompatible(a, x);
    return projectPlus(x) + projectMinus(wienerMultiplyImpl(x, a, capHalfWidth, false));
}

FactorizationResult solveCanonicalFactorization(const WienerElement& a, const Rational& alpha,
                                                const Rational& beta, double tol,
                                                const FactorizationOptions& opts) {
    const InstanceSpec& spec = a.spec();
    if (!spec.gradeLeq(spec.ladderH(alpha), beta))
        throw ladder_error("solveCanonicalFactorization: beta below h(alpha)");

    const WienerElement one = WienerElement::unit(spec);
    WienerElement u = one - a;  // 1 - a
    const double maxPQ = std::max(projectionNorm(spec, beta), projectionNorm(spec, beta));
    const double kappa = spec.ladderConstant(beta, alpha) * u.norm(alpha) * maxPQ;

    FactorizationResult res;
    res.alpha = alpha;
    res.beta = beta;
    res.contraction = kappa;
    if (!(kappa < 1.0))
        throw contraction_error(
            "solveCanonicalFactorization: A_{beta,alpha}||1-a||_alpha max(||P||,||Q||) = " +
                std::to_string(kappa),
            kappa);

    const int cap = opts.capHalfWidth;
    const double stopAt = kappa > 0.0 ? tol * (1.0 - kappa) / kappa : 0.0;

    // x_{k+1} = 1 + P((1-a) x_k)
    WienerElement x = one;
    for (int k = 1;; ++k) {
        if (k > opts.maxIterations)
            throw budget_exhausted("solveCanonicalFactorization: x-iteration budget exhausted");
        WienerElement next = one + projectPlus(wienerMultiplyImpl(u, x, cap, false));
        const double inc = (next - x).coeffNormSum(beta);
        res.logX.push_back({k, inc});
        x = std::move(next);
        if (inc <= stopAt) break;
    }
    // y_{k+1} = 1 + Q(y_k (1-a))
    WienerElement y = one;
    for (int k = 1;; ++k) {
        if (k > opts.maxIterations)
            throw budget_exhausted("solveCanonicalFactorization: y-iteration budget exhausted");
        WienerElement next = one + projectMinus(wienerMultiplyImpl(y, u, cap, false));
        const double inc = (next - y).coeffNormSum(beta);
        res.logY.push_back({k, inc});
        y = std::move(next);
        if (inc <= stopAt) break;
    }

    res.aPlusInv = x;
    res.aMinusInv = y;
    std::string methodX, methodY;
    res.aPlus = invertInU(x, alpha, beta, tol, methodX);
    res.aMinus = invertInU(y, alpha, beta, tol, methodY);
    res.innerInversionMethod = methodX == methodY ? methodX : methodX + "/" + methodY;

    res.residualMinusPlus = (a - res.aMinus.mulResidual(res.aPlus)).coeffNormSum(beta);
    res.residualPlusMinus = (a - res.aPlus.mulResidual(res.aMinus)).coeffNormSum(beta);
    res.membership =
        membershipReport(res.aPlus, res.aPlusInv, res.aMinus, res.aMinusInv, beta,
                         opts.membershipTol);
    return res;
}

VerificationReport verifyFactorization(const WienerElement& a, const FactorizationResult& result,
                                       int gridSize, double tol) {
    VerificationReport rep;
    const Rational grade = result.beta;

    const WienerElement mp = result.aMinus.mulResidual(result.aPlus);
    const WienerElement pm = result.aPlus.mulResidual(result.aMinus);
    rep.normResidualMinusPlus = (a - mp).coeffNormSum(grade);
    rep.normResidualPlusMinus = (a - pm).coeffNormSum(grade);

    for (int g = 0; g < gridSize; ++g) {
        const double t = -M_PI + 2.0 * M_PI * g / gridSize;
        const AlgebraElement at = a.evaluate(t);
        AlgebraElement dmp = at - mp.evaluate(t);
        AlgebraElement dpm = at - pm.evaluate(t);
        dmp.clearTailBounds();
        dpm.clearTailBounds();
        rep.gridResidualMinusPlus =
            std::max(rep.gridResidualMinusPlus, dmp.truncationNorm(grade));
        rep.gridResidualPlusMinus =
            std::max(rep.gridResidualPlusMinus, dpm.truncationNorm(grade));
    }

    rep.membership = membershipReport(result.aPlus, result.aPlusInv, result.aMinus,
                                      result.aMinusInv, grade, 1e-12);
    rep.minusPlusPasses = rep.normResidualMinusPlus <= tol && rep.membership.pass;
    rep.plusMinusPasses = rep.normResidualPlusMinus <= tol && rep.membership.pass;
    return rep;
}

std::pair<WienerElement, WienerElement> solvePairEquations(const WienerElement& a,
                                                           const WienerElement& f,
                                                           const WienerElement& g,
                                                           const Rational& alpha,
                                                           const Rational& beta, double tol,
                                                           const FactorizationOptions& opts) {
    const InstanceSpec& spec = a.spec();
    WienerElement::requireCompatible(a, f);
    WienerElement::requireCompatible(a, g);
    if (!spec.gradeLeq(spec.ladderH(alpha), beta))
        throw ladder_error("solvePairEquations: beta below h(alpha)");
    const double kappa = spec.ladderConstant(beta, alpha) * a.norm(alpha) *
                         std::max(projectionNorm(spec, beta), projectionNorm(spec, beta));
    if (!(kappa < 1.0))
        throw contraction_error(
            "solvePairEquations: A_{beta,alpha}||a||_alpha max(||P||,||Q||) = " +
                std::to_string(kappa),
            kappa);
    const double stopAt = kappa > 0.0 ? tol * (1.0 - kappa) / kappa : 0.0;
    const int cap = opts.capHalfWidth;

    WienerElement x = f;
    for (int k = 1;; ++k) {
        if (k > opts.maxIterations)
            throw budget_exhausted("solvePairEquations: x-iteration budget exhausted");
        WienerElement next = f + projectPlus(wienerMultiplyImpl(a, x, cap, false));
        const double inc = (next - x).coeffNormSum(beta);
        x = std::move(next);
        if (inc <= stopAt) break;
    }
    WienerElement y = g;
    for (int k = 1;; ++k) {
        if (k > opts.maxIterations)
            throw budget_exhausted("solvePairEquations: y-iteration budget exhausted");
        WienerElement next = g + projectMinus(wienerMultiplyImpl(y, a, cap, false));
        const double inc = (next - y).coeffNormSum(beta);
        y = std::move(next);
        if (inc <= stopAt) break;
    }
    return {std::move(x), std::move(y)};
}

}  // namespace gradedalg
