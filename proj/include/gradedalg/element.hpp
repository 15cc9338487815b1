#pragma once

#include <complex>
#include <map>
#include <span>
#include <vector>

#include "gradedalg/instance.hpp"

namespace gradedalg {

using Complex = std::complex<double>;

// Low-level product kernel on raw coefficient blocks of a shared instance.
// Accumulates a*b into out, which is truncated at degOut (series kinds).
// Coefficients beyond degOut are dropped by the kernel; callers account for
// the discarded mass themselves when honesty requires it.
void accumulateProduct(const InstanceSpec& spec, const Complex* a, int degA, const Complex* b,
                       int degB, Complex* out, int degOut);

// Finitely-represented element of one instance: a dense matrix, a truncated
// power series, or a truncated Kondratiev chaos expansion. Carries an
// explicit per-grade tail bound so that every certificate downstream remains
// an honest upper bound. An empty tail map means the element is exact.
class AlgebraElement {
public:
    AlgebraElement() = default;

    static AlgebraElement zero(const InstanceSpec& spec);
    static AlgebraElement zero(const InstanceSpec& spec, int deg);
    static AlgebraElement unit(const InstanceSpec& spec);
    // z * unit; handy for scalar examples (matrix instance with n = 1).
    static AlgebraElement scalar(const InstanceSpec& spec, Complex z);
    static AlgebraElement fromCoefficients(const InstanceSpec& spec, int deg,
                                           std::vector<Complex> coeffs);

    const InstanceSpec& spec() const { return spec_; }
    int truncationDegree() const { return deg_; }
    int coeffCount() const { return static_cast<int>(c_.size()); }
    std::span<const Complex> coeffs() const { return c_; }
    Complex coeff(int i) const { return i >= 0 && i < coeffCount() ? c_[i] : Complex{}; }
    Complex& coeffRef(int i) { return c_[i]; }

    // Norm of the stored truncated representation at grade g.
    double truncationNorm(const Rational& g) const;
    // Declared tail bound resolved at grade g; +inf when no declared entry
    // can be transported there.
    double tailBound(const Rational& g) const;
    // Honest upper bound for the represented element: truncationNorm + tail.
    double norm(const Rational& g) const { return truncationNorm(g) + tailBound(g); }

    bool tailFree() const { return tail_.empty(); }
    const std::map<Rational, double>& tailBounds() const { return tail_; }
    void setTailBound(const Rational& g, double v);
    void clearTailBounds() { tail_.clear(); }

    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    AlgebraElement scaled(Complex z) const;

    // Exact product: series degrees add, nothing is discarded. Input tails
    // are transported honestly.
    static AlgebraElement mulFull(const AlgebraElement& a, const AlgebraElement& b);
    // Product truncated to deg with the discarded mass added to the tail
    // bound at every declared grade.
    static AlgebraElement mulTruncated(const AlgebraElement& a, const AlgebraElement& b, int deg);
    // Product in the degree-deg quotient representation: truncation without
    // tail accrual. For the series instances truncation is an algebra
    // quotient, so Neumann-type iterations are exact in this semantics.
    static AlgebraElement mulQuotient(const AlgebraElement& a, const AlgebraElement& b, int deg);

    // Re-truncation with tail accrual (degree can only shrink).
    AlgebraElement truncatedTo(int deg) const;

    double maxAbsCoeff() const;

    // --- graded-element concept surface (shared with WienerElement) ---
    AlgebraElement unitLike() const { return unit(spec_); }
    bool gradeLeq(const Rational& a, const Rational& b) const { return spec_.gradeLeq(a, b); }
    Rational ladderH(const Rational& a) const { return spec_.ladderH(a); }
    double ladderA(const Rational& beta, const Rational& alpha) const {
        return spec_.ladderConstant(beta, alpha);
    }
    double unitNorm(const Rational& g) const { return unit(spec_).norm(g); }
    // Representation product used inside certified iterations.
    AlgebraElement mulRep(const AlgebraElement& o) const {
        return mulQuotient(*this, o, spec_.degree());
    }
    // Exact product used when measuring residuals.
    AlgebraElement mulResidual(const AlgebraElement& o) const {
        return mulQuotient(*this, o, spec_.degree());
    }

    static void requireSameInstance(const AlgebraElement& a, const AlgebraElement& b);

private:
    static AlgebraElement product(const AlgebraElement& a, const AlgebraElement& b, int degOut,
                                  bool accrueTails);
    // Norm (in the instance's own metric) of the stored coefficients with
    // total degree > deg; exact, used when truncating.
    double massBeyond(int deg, const Rational& g) const;

    InstanceSpec spec_;
    int deg_ = 0;
    std::vector<Complex> c_;
    std::map<Rational, double> tail_;
};

// The public product of the core module: exact product of the truncated
// representations, re-truncated to the instance degree.
AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);

double unitNorm(const InstanceSpec& spec, const Rational& g);

}  // namespace gradedalg
