#include "gradedalg/localization.hpp"

#include <algorithm>
#include <cmath>

#include "gradedalg/calculus.hpp"

namespace gradedalg {

namespace {

Rational homeGrade(const InstanceSpec& spec, const LocalizationOptions& opts) {
    if (opts.alphaSet) {
        spec.requireGrade(opts.alpha);
        return opts.alpha;
    }
    return spec.grades().front();
}

// a - a(0) as a finite coefficient family (the constant block absorbs the
// difference); this is the part the cutoff actually acts on.
WienerElement centeredPart(const WienerElement& a) {
    WienerElement g = a;
    AlgebraElement a0 = a.evaluate(0.0);
    a0.clearTailBounds();
    AlgebraElement g0 = g.coeff(0) - a0;
    g0.clearTailBounds();
    g.setCoeff(0, g0);
    // the subtracted evaluation inherits the symbol's tail a second time
    for (const auto& [grade, v] : a.tailBounds())
        if (std::isfinite(v) && v > 0.0) g.addTailBound(grade, v);
    return g;
}

}  // namespace

WienerElement localize(const WienerElement& a, double eps, int halfWidth) {
    const TrapezoidKernel kernel(eps);
    const InstanceSpec& spec = a.spec();
    if (halfWidth < 0) halfWidth = a.halfWidth() + 1024;
    if (halfWidth < a.halfWidth())
        throw precondition_error("localize: halfWidth below the symbol's own half-width");

    AlgebraElement a0 = a.evaluate(0.0);
    a0.clearTailBounds();

    WienerElement out = WienerElement::zero(spec, halfWidth, a.coeffDeg());
    const int stride = out.stride();
    const int na = a.halfWidth();
    for (int n = -halfWidth; n <= halfWidth; ++n) {
        auto dst = out.blockRef(n);
        for (int m = -na; m <= na; ++m) {
            const Complex c = kernel.fourier(n - m);
            if (c == Complex{}) continue;
            const auto src = a.block(m);
            for (int i = 0; i < stride; ++i) dst[i] += c * src[i];
        }
        const Complex cn = kernel.fourier(n);
        for (int i = 0; i < stride; ++i) dst[i] -= cn * a0.coeff(i);
        if (n == 0)
            for (int i = 0; i < stride; ++i) dst[i] += a0.coeff(i);
    }

    // Dropped indices: b_n = (omega (a - a(0)))_n for n != 0, so the mass
    // beyond the window is bounded by ||a - a(0)|| times the kernel tail.
    const WienerElement g = centeredPart(a);
    const double kernelTail = kernel.l1Tail(halfWidth - na);
    const double kernelNorm = kernel.l1Norm();
    for (const auto& grade : spec.grades()) {
        double t = g.coeffNormSum(grade) * kernelTail;
        const double ta = a.tailBound(grade);
        if (!std::isfinite(ta)) continue;
        // omega a picks up tail * ||omega||, (1 - omega) a(0) another
        // tail * (1 + ||omega||)
        t += ta * (2.0 * kernelNorm + 1.0);
        if (t > 0.0) out.addTailBound(grade, t);
    }
    return out;
}

AlgebraElement b0OfEpsilon(const WienerElement& a, double eps) {
    if (!(eps > 0.0 && eps < M_PI / 2.0))
        throw precondition_error("b0OfEpsilon: eps must lie in (0, pi/2)");
    AlgebraElement out = a.coeff(0);
    for (int n = 1; n <= a.halfWidth(); ++n) {
        const double factor = 1.0 +
                              (std::cos(eps * n) - std::cos(2.0 * eps * n)) /
                                  (M_PI * n * n * eps) -
                              3.0 * eps / (2.0 * M_PI);
        AlgebraElement pair = a.coeff(n) + a.coeff(-n);
        out += pair.scaled(factor);
    }
    // factor magnitudes are bounded by 1 + c_0 + 2/(pi eps)
    const double factorCap = 1.0 + 3.0 * eps / (2.0 * M_PI) + 2.0 / (M_PI * eps);
    for (const auto& [grade, v] : a.tailBounds())
        if (std::isfinite(v) && v > 0.0) out.setTailBound(grade, v * factorCap);
    return out;
}

std::pair<WienerElement, LocalizationCertificate> chooseLocalization(
    const WienerElement& a, double t0, const AlgebraElement& leftInvAtT0,
    const LocalizationOptions& opts) {
    const InstanceSpec& spec = a.spec();
    const Rational alpha = homeGrade(spec, opts);
    const Rational alphaPrime = spec.ladderH(alpha);
    const Rational beta = spec.ladderH(alphaPrime);
    const Rational gamma = spec.ladderH(beta);

    const WienerElement rotated = a.phaseTwisted(t0);
    const AlgebraElement atT0 = rotated.evaluate(0.0);
    const AlgebraElement one = AlgebraElement::unit(spec);
    const double preResidual = (AlgebraElement::mulQuotient(leftInvAtT0, atT0, a.coeffDeg()) - one)
                                   .truncationNorm(gamma);
    if (preResidual > opts.preTol)
        throw precondition_error(
            "chooseLocalization: supplied element is not a left inverse of a(t0) "
            "(residual " +
            std::to_string(preResidual) + ")");

    const WienerElement g = centeredPart(rotated);
    const double gNormAlpha = g.coeffNormSum(alpha) + g.tailBound(alpha);
    const int na = a.halfWidth();

    LocalizationCertificate cert;
    cert.t0 = t0;
    cert.alpha = alpha;
    cert.beta = beta;
    cert.gamma = gamma;

    const double Agb = spec.ladderConstant(gamma, beta);
    const double Aba = spec.ladderConstant(beta, alpha);

    double eps = opts.epsStart;
    for (int halving = 0; halving < opts.maxHalvings; ++halving, eps *= 0.5) {
        const TrapezoidKernel kernel(eps);
        const AlgebraElement b0 = b0OfEpsilon(rotated, eps);
        const AlgebraElement d = atT0 - b0;

        AlgebraElement b0LeftInv;
        double b0LeftInvNorm = 0.0;
        try {
            const auto pli = perturbLeftInverse(atT0, leftInvAtT0, d, alpha, alphaPrime, beta,
                                                opts.perturbTol);
            b0LeftInv = pli.leftInverse;
            b0LeftInvNorm = b0LeftInv.norm(beta);
        } catch (const contraction_error&) {
            continue;  // perturbation still too large at this eps
        } catch (const numerical_error&) {
            continue;
        }

        // off-diagonal sum S(eps) = sum_{n != 0} ||(omega g)_n||_alpha,
        // summed over a wide window with the kernel tail added honestly
        const int window = opts.offDiagonalWindow;
        double offDiag = 0.0;
        std::vector<double> decay;
        {
            const int stride = g.stride();
            std::vector<Complex> block(stride);
            for (int n = -window; n <= window; ++n) {
                if (n == 0) continue;
                std::fill(block.begin(), block.end(), Complex{});
                for (int m = -na; m <= na; ++m) {
                    const Complex c = kernel.fourier(n - m);
                    if (c == Complex{}) continue;
                    const auto src = g.block(m);
                    for (int i = 0; i < stride; ++i) block[i] += c * src[i];
                }
                const double nb = AlgebraElement::fromCoefficients(
                                      spec, g.coeffDeg(),
                                      std::vector<Complex>(block.begin(), block.end()))
                                      .truncationNorm(alpha);
                offDiag += nb;
                if (std::abs(n) <= 32) {
                    if (static_cast<int>(decay.size()) < std::abs(n))
                        decay.resize(std::abs(n), 0.0);
                    decay[std::abs(n) - 1] += nb;
                }
            }
            offDiag += gNormAlpha * kernel.l1Tail(window - na);
        }

        const double contraction = Agb * Aba * offDiag * b0LeftInvNorm;
        if (contraction < opts.contractionTarget) {
            cert.eps = eps;
            cert.contraction = contraction;
            cert.offDiagonalSum = offDiag;
            cert.b0LeftInvNorm = b0LeftInvNorm;
            cert.b0LeftInverse = b0LeftInv;
            cert.decayReport = decay;
            cert.halvings = halving;
            WienerElement b = localize(rotated, eps, opts.omegaHalfWidth);
            return {std::move(b), std::move(cert)};
        }
    }
    throw numerical_error(
        "chooseLocalization: halving budget exhausted without a certificate "
        "(this does not imply non-invertibility)");
}

LocalInverseResult localLeftInverse(const WienerElement& b, const LocalizationCertificate& cert,
                                    double tol, const LocalInverseOptions& opts) {
    const InstanceSpec& spec = b.spec();
    const Rational gamma = cert.gamma;
    const double kappa = cert.contraction;
    if (!(kappa < 1.0))
        throw contraction_error("localLeftInverse: certificate contraction is not below 1",
                                kappa);

    const AlgebraElement& b0Inv = cert.b0LeftInverse;
    const WienerElement one = WienerElement::unit(spec);

    // u = -(b - b_0) b_0'
    WienerElement u = b;
    {
        AlgebraElement zeroBlock = AlgebraElement::zero(spec, b.coeffDeg());
        u.setCoeff(0, zeroBlock);
        WienerElement scaledU = WienerElement::zero(spec, u.halfWidth(), u.coeffDeg());
        for (int n = -u.halfWidth(); n <= u.halfWidth(); ++n) {
            AlgebraElement c = u.coeff(n);
            c.clearTailBounds();
            scaledU.setCoeff(
                n, AlgebraElement::mulQuotient(c, b0Inv, b.coeffDeg()).scaled(-1.0));
        }
        u = std::move(scaledU);
    }

    const double scale = std::max(1.0, cert.b0LeftInvNorm);
    // geometric remainder after T terms: kappa^T/(1-kappa) * scale < tol
    int neededTerms = 0;
    if (kappa > 0.0) {
        neededTerms = static_cast<int>(
                          std::ceil(std::log(tol * (1.0 - kappa) / scale) / std::log(kappa))) +
                      1;
        neededTerms = std::max(neededTerms, 1);
    }
    if (neededTerms > opts.maxTerms)
        throw budget_exhausted("localLeftInverse: " + std::to_string(neededTerms) +
                               " terms exceed the budget");

    int cap = opts.iterateHalfWidth;
    for (int attempt = 0; attempt <= opts.maxEnlargements; ++attempt, cap *= 2) {
        WienerElement x = one;
        x.setMulCap(cap);
        int terms = 1;
        for (int k = 1; k <= neededTerms; ++k) {
            WienerElement ux = u.mulRep(x);
            x = one + ux;
            x.setMulCap(cap);
            terms = k + 1;
        }

        // b' = b_0' X
        WienerElement bPrime = WienerElement::zero(spec, x.halfWidth(), x.coeffDeg());
        for (int n = -x.halfWidth(); n <= x.halfWidth(); ++n) {
            AlgebraElement c = x.coeff(n);
            c.clearTailBounds();
            bPrime.setCoeff(n, AlgebraElement::mulQuotient(b0Inv, c, b.coeffDeg()));
        }

        WienerElement residual = bPrime.mulResidual(b) - one;
        const int window = opts.residualWindow;
        double inWindow = 0.0, outWindow = 0.0;
        for (int n = -residual.halfWidth(); n <= residual.halfWidth(); ++n) {
            const double cn = residual.coeffNorm(n, gamma);
            if (std::abs(n) <= window)
                inWindow += cn;
            else
                outWindow += cn;
        }
        if (inWindow <= tol) {
            LocalInverseResult out;
            out.leftInverse = std::move(bPrime);
            out.windowResidual = inWindow;
            out.outOfWindowResidual = outWindow;
            out.window = window;
            out.terms = terms;
            return out;
        }
    }
    throw numerical_error("localLeftInverse: windowed residual above tolerance after budget");
}

}  // namespace gradedalg
