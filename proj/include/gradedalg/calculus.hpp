#pragma once

#include <cmath>
#include <concepts>
#include <functional>
#include <vector>

#include "gradedalg/certificate.hpp"
#include "gradedalg/element.hpp"

namespace gradedalg {

// Anything that lives in a graded ladder of normed levels and multiplies.
// AlgebraElement models this, and so does WienerElement (the Fourier-series
// algebra over an instance inherits its ladder).
template <class E>
concept GradedElement = requires(const E& e, const Rational& g, Complex z) {
    { e.norm(g) } -> std::convertible_to<double>;
    { e.unitLike() } -> std::convertible_to<E>;
    { e.unitNorm(g) } -> std::convertible_to<double>;
    { e.gradeLeq(g, g) } -> std::convertible_to<bool>;
    { e.ladderH(g) } -> std::convertible_to<Rational>;
    { e.ladderA(g, g) } -> std::convertible_to<double>;
    { e.mulRep(e) } -> std::convertible_to<E>;       // product in the working representation
    { e.mulResidual(e) } -> std::convertible_to<E>;  // product used to measure residuals
    { e.scaled(z) } -> std::convertible_to<E>;
};

struct IterationLimits {
    int maxTerms = 1'000'000;  // series-term budget; hard error on overflow
};

// A power series sum c_n z^n given by its coefficients, its convergence
// radius, and an honest majorant for sum_{n>N} |c_n| rho^n.
struct PowerSeries {
    std::function<Complex(int)> coeff;
    double radius = 0.0;
    std::function<double(int, double)> tail;

    static PowerSeries geometric();
    static PowerSeries exponential();
    static PowerSeries polynomial(std::vector<Complex> coeffs);
};

template <GradedElement E>
struct PowerSeriesResult {
    E value;
    NormCertificate certificate;
    int terms = 0;
    double tailBound = 0.0;
};

template <GradedElement E>
struct NeumannResult {
    E inverse;
    NormCertificate normBound;       // ||x||_beta
    NormCertificate deviationBound;  // ||1 - x||_beta
    double residualLeft = 0.0;       // ||(1-a)x - 1||_beta
    double residualRight = 0.0;      // ||x(1-a) - 1||_beta
    int terms = 0;
};

template <GradedElement E>
struct LeftInverseResult {
    E leftInverse;
    NormCertificate distanceBound;  // ||(a-b)' - a'||_gamma
    double residual = 0.0;          // ||(a-b)'(a-b) - 1||_gamma
    int terms = 0;
};

namespace detail {

template <GradedElement E>
void requireLadderPair(const E& e, const Rational& alpha, const Rational& beta,
                       const char* where) {
    if (!e.gradeLeq(e.ladderH(alpha), beta))
        throw ladder_error(std::string(where) + ": beta = " + beta.str() +
                           " is below h(alpha) = " + e.ladderH(alpha).str());
}

}  // namespace detail

// Sum of c_n a^n for A_{beta,alpha} ||a||_alpha < radius, stopped when the
// geometric majorant of the remainder falls below tol.
template <GradedElement E>
PowerSeriesResult<E> evalPowerSeries(const PowerSeries& series, const E& a, const Rational& alpha,
                                     const Rational& beta, double tol,
                                     const IterationLimits& limits = {}) {
    detail::requireLadderPair(a, alpha, beta, "evalPowerSeries");
    const double A = a.ladderA(beta, alpha);
    const double rho = A * a.norm(alpha);
    if (!(rho < series.radius))
        throw contraction_error("evalPowerSeries: A_{beta,alpha}||a||_alpha = " +
                                    std::to_string(rho) + " is not below the radius " +
                                    std::to_string(series.radius),
                                rho);
    const double unit = a.unitNorm(beta);

    E sum = a.unitLike().scaled(series.coeff(0));
    E power = a.unitLike();
    double majorant = std::abs(series.coeff(0));
    int n = 0;
    double tailNow = series.tail(0, rho) * unit;
    while (tailNow >= tol) {
        if (++n > limits.maxTerms)
            throw budget_exhausted("evalPowerSeries: term budget exhausted");
        power = power.mulRep(a);
        const Complex cn = series.coeff(n);
        if (cn != Complex{}) sum += power.scaled(cn);
        majorant += std::abs(cn) * std::pow(rho, n);
        tailNow = series.tail(n, rho) * unit;
    }

    PowerSeriesResult<E> out{std::move(sum), {}, n + 1, tailNow};
    out.certificate.grade = beta;
    out.certificate.bound = majorant * unit + tailNow;
    out.certificate.formula = CertificateFormula::PowerSeries;
    out.certificate.alpha = alpha;
    out.certificate.beta = beta;
    out.certificate.constants = {{"A", A},
                                 {"norm_a_alpha", a.norm(alpha)},
                                 {"rho", rho},
                                 {"unit_norm_beta", unit},
                                 {"radius", series.radius}};
    return out;
}

// Certified inverse of 1 - a under the contraction A_{beta,alpha}||a||_alpha < 1,
// with the two norm bounds ||x|| <= ||1||/(1-rho) and ||1-x|| <= rho||1||/(1-rho).
template <GradedElement E>
NeumannResult<E> neumannInverse(const E& a, const Rational& alpha, const Rational& beta,
                                double tol, const IterationLimits& limits = {}) {
    detail::requireLadderPair(a, alpha, beta, "neumannInverse");
    const double A = a.ladderA(beta, alpha);
    const double normA = a.norm(alpha);
    const double rho = A * normA;
    if (!(rho < 1.0))
        throw contraction_error(
            "neumannInverse: contraction condition failed, A_{beta,alpha}||a||_alpha = " +
                std::to_string(rho),
            rho);
    const double unit = a.unitNorm(beta);
    const E one = a.unitLike();

    E sum = one;
    E power = one;
    int n = 0;
    // remainder majorant: sum_{k>n} rho^k ||1|| = rho^{n+1}/(1-rho) ||1||
    while (std::pow(rho, n + 1) / (1.0 - rho) * unit >= tol && normA > 0.0) {
        if (++n > limits.maxTerms) throw budget_exhausted("neumannInverse: term budget exhausted");
        power = power.mulRep(a);
        sum += power;
    }

    NeumannResult<E> out{std::move(sum), {}, {}, 0.0, 0.0, n + 1};
    const E oneMinusA = one - a;
    out.residualLeft = (oneMinusA.mulResidual(out.inverse) - one).norm(beta);
    out.residualRight = (out.inverse.mulResidual(oneMinusA) - one).norm(beta);

    out.normBound.grade = beta;
    out.normBound.bound = unit / (1.0 - rho);
    out.normBound.formula = CertificateFormula::NeumannInverse;
    out.normBound.alpha = alpha;
    out.normBound.beta = beta;
    out.normBound.constants = {{"A", A}, {"norm_a_alpha", normA}, {"unit_norm_beta", unit}};

    out.deviationBound = out.normBound;
    out.deviationBound.bound = rho * unit / (1.0 - rho);

    if (out.residualLeft > tol || out.residualRight > tol)
        throw numerical_error("neumannInverse: residual above tolerance after certified stop");
    return out;
}

// Left inverse of a - b from a left inverse a' of a, via (a-b)' = a' sum (b a')^n,
// under A_{gamma,beta} A_{beta,alpha} ||a'||_alpha ||b||_beta < 1.
template <GradedElement E>
LeftInverseResult<E> perturbLeftInverse(const E& a, const E& aLeftInv, const E& b,
                                        const Rational& alpha, const Rational& beta,
                                        const Rational& gamma, double tol,
                                        const IterationLimits& limits = {}) {
    detail::requireLadderPair(a, alpha, beta, "perturbLeftInverse");
    detail::requireLadderPair(a, beta, gamma, "perturbLeftInverse");
    const E one = a.unitLike();
    const double leftResidual = (aLeftInv.mulResidual(a) - one).norm(gamma);
    if (leftResidual > tol)
        throw precondition_error(
            "perturbLeftInverse: a' is not a left inverse of a within tolerance (residual " +
            std::to_string(leftResidual) + ")");

    const double Agb = a.ladderA(gamma, beta);
    const double Aba = a.ladderA(beta, alpha);
    const double Aga = a.ladderA(gamma, alpha);
    const double normLi = aLeftInv.norm(alpha);
    const double normB = b.norm(beta);
    const double kappa = Agb * Aba * normLi * normB;
    if (!(kappa < 1.0))
        throw contraction_error(
            "perturbLeftInverse: contraction condition failed, "
            "A_{gamma,beta}A_{beta,alpha}||a'||_alpha ||b||_beta = " +
                std::to_string(kappa),
            kappa);
    const double unit = a.unitNorm(gamma);

    const E t = b.mulRep(aLeftInv);
    E sum = one;
    E power = one;
    const double scale = std::max(1.0, Aga * normLi * std::max(1.0, a.norm(alpha)) * unit);
    int n = 0;
    while (kappa > 0.0 && std::pow(kappa, n + 1) / (1.0 - kappa) * scale >= tol) {
        if (++n > limits.maxTerms)
            throw budget_exhausted("perturbLeftInverse: term budget exhausted");
        power = power.mulRep(t);
        sum += power;
    }

    LeftInverseResult<E> out;
    out.leftInverse = aLeftInv.mulRep(sum);
    out.terms = n + 1;
    out.residual = (out.leftInverse.mulResidual(a - b) - one).norm(gamma);
    if (out.residual > tol)
        throw numerical_error("perturbLeftInverse: residual " + std::to_string(out.residual) +
                              " above tolerance");

    out.distanceBound.grade = gamma;
    out.distanceBound.bound = Aga * normLi * kappa * unit / (1.0 - kappa);
    out.distanceBound.formula = CertificateFormula::LeftInversePerturbation;
    out.distanceBound.alpha = alpha;
    out.distanceBound.beta = gamma;
    out.distanceBound.constants = {{"A_gamma_beta", Agb},
                                   {"A_beta_alpha", Aba},
                                   {"A_gamma_alpha", Aga},
                                   {"norm_left_inverse_alpha", normLi},
                                   {"norm_b_beta", normB},
                                   {"kappa", kappa},
                                   {"unit_norm_gamma", unit}};
    return out;
}

}  // namespace gradedalg
