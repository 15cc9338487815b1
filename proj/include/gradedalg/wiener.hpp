#pragma once

#include <map>
#include <span>
#include <vector>

#include "gradedalg/element.hpp"
#include "gradedalg/random.hpp"

namespace gradedalg {

// Truncated two-sided Fourier series sum a_n e^{int} with coefficients in a
// fixed instance, |n| <= halfWidth. The graded norm is the coefficient-norm
// sum plus the declared tail bound:
//   ||a||_g = sum_n ||a_n||_g + tail(g).
// Coefficient blocks share one truncation degree and are stored tail-free in
// a flat buffer; all truncation debts live in the Wiener-level tail map.
class WienerElement {
public:
    WienerElement() = default;

    static WienerElement zero(const InstanceSpec& spec, int halfWidth, int coeffDeg = -1);
    static WienerElement unit(const InstanceSpec& spec);
    static WienerElement fromCoefficients(const InstanceSpec& spec,
                                          const std::map<int, AlgebraElement>& coeffs);

    const InstanceSpec& spec() const { return spec_; }
    int halfWidth() const { return half_; }
    int coeffDeg() const { return coeffDeg_; }
    int stride() const { return stride_; }

    std::span<const Complex> block(int n) const;
    std::span<Complex> blockRef(int n);
    AlgebraElement coeff(int n) const;  // materialized copy; zero outside range
    void setCoeff(int n, const AlgebraElement& value);
    // Scalar convenience for the matrix instance with n = 1.
    Complex scalarCoeff(int n) const;

    double coeffNorm(int n, const Rational& g) const;
    // sum_n ||a_n||_g over the stored window
    double coeffNormSum(const Rational& g) const;
    double norm(const Rational& g) const { return coeffNormSum(g) + tailBound(g); }

    double tailBound(const Rational& g) const;
    void setTailBound(const Rational& g, double v);
    void addTailBound(const Rational& g, double v);
    const std::map<Rational, double>& tailBounds() const { return tail_; }
    bool tailFree() const { return tail_.empty(); }

    AlgebraElement evaluate(double t) const;

    WienerElement& operator+=(const WienerElement& o);
    WienerElement& operator-=(const WienerElement& o);
    friend WienerElement operator+(WienerElement a, const WienerElement& b) { return a += b; }
    friend WienerElement operator-(WienerElement a, const WienerElement& b) { return a -= b; }
    WienerElement scaled(Complex z) const;

    // Coefficient phase twist a_n <- a_n e^{i n t0}; the result represents
    // t |-> a(t + t0).
    WienerElement phaseTwisted(double t0) const;

    // Keep only indices with keep(n) true (projections, support filters).
    WienerElement filtered(bool (*keep)(int)) const;

    WienerElement truncatedToHalfWidth(int halfWidth) const;  // honest: dropped mass -> tails

    double maxAbsCoeff() const;

    // --- graded-element concept surface (ladder inherited from the instance) ---
    WienerElement unitLike() const { return unit(spec_); }
    double unitNorm(const Rational& g) const;
    bool gradeLeq(const Rational& a, const Rational& b) const { return spec_.gradeLeq(a, b); }
    Rational ladderH(const Rational& a) const { return spec_.ladderH(a); }
    double ladderA(const Rational& beta, const Rational& alpha) const {
        return spec_.ladderConstant(beta, alpha);
    }
    WienerElement mulRep(const WienerElement& o) const;
    WienerElement mulResidual(const WienerElement& o) const;

    int mulCap() const { return mulCap_; }
    void setMulCap(int cap) { mulCap_ = cap; }

    static void requireCompatible(const WienerElement& a, const WienerElement& b);

private:
    friend WienerElement wienerMultiplyImpl(const WienerElement&, const WienerElement&, int, bool);

    InstanceSpec spec_;
    int half_ = 0;
    int coeffDeg_ = 0;
    int stride_ = 0;
    std::vector<Complex> buf_;  // (2 half_ + 1) blocks of length stride_
    std::map<Rational, double> tail_;
    int mulCap_ = 4096;  // index cap for mulRep
};

double wienerNorm(const WienerElement& a, const Rational& g);

// Cauchy convolution (ab)_n = sum_m a_m b_{n-m}, truncated to capHalfWidth
// with the discarded l1 mass added to the tail bounds.
WienerElement wienerMultiply(const WienerElement& a, const WienerElement& b,
                             int capHalfWidth = -1);

// Random Wiener element with unit-disk coefficient draws damped by
// decay^|n|; deterministic in the rng stream.
WienerElement randomWienerElement(const InstanceSpec& spec, Rng& rng, int halfWidth,
                                  double decay = 0.5);

enum class PointInvertibility { Invertible, Singular, Unknown };

struct ScanPoint {
    double t = 0.0;
    PointInvertibility status = PointInvertibility::Unknown;
    // matrix instance: smallest singular value of a(t); series instances:
    // 1 - contraction value of the certified Neumann condition.
    double margin = 0.0;
    Rational grade{0};
};

struct ScanReport {
    int gridSize = 0;
    std::vector<ScanPoint> points;
    bool allInvertible = false;
    double minMargin = 0.0;
    int singularCount = 0;
};

// Pointwise left-invertibility check of a(t) on a uniform grid: the
// hypothesis side of the Wiener-theorem equivalence.
ScanReport invertibilityScan(const WienerElement& a, int gridSize);

// Pointwise left inverse of one evaluation: dense inverse for the matrix
// instance, scaled Neumann series for the series instances.
AlgebraElement pointwiseLeftInverse(const AlgebraElement& value, const Rational& alpha);

}  // namespace gradedalg
