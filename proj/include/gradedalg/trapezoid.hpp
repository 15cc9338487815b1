#pragma once

#include <complex>

#include "gradedalg/errors.hpp"

namespace gradedalg {

// Wrap an angle into [-pi, pi).
double wrapAngle(double t);

// Piecewise-linear cutoff on the circle: 1 on |t| < eps, 0 beyond 2 eps,
// linear in between. Requires 0 < eps < pi/2.
double cutoffOmega(double eps, double t);

// The cutoff as a Fourier-series kernel with closed-form coefficients
//   c_0 = 3 eps / (2 pi),   c_n = (cos(eps n) - cos(2 eps n)) / (pi eps n^2),
// shifted to an arbitrary center. The exact O(1/n^2) decay gives honest
// l1 tail bounds, which is what makes the localization and patching error
// budgets computable. Coefficients are available at every index, so windowed
// products against finite series can be evaluated without truncating the
// kernel at all.
class TrapezoidKernel {
public:
    explicit TrapezoidKernel(double eps, double center = 0.0);

    double plateau() const { return eps_; }
    double support() const { return 2.0 * eps_; }
    double center() const { return center_; }

    double value(double t) const { return cutoffOmega(eps_, wrapAngle(t - center_)); }

    std::complex<double> fourier(int n) const;
    double fourierAbs(int n) const;

    // Upper bound on sum_{|n|>m} |c_n|.
    double l1Tail(int m) const;
    // Upper bound on sum_n |c_n|.
    double l1Norm() const;

private:
    double eps_;
    double center_;
};

}  // namespace gradedalg
