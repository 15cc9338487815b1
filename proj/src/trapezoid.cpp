#include "gradedalg/trapezoid.hpp"

#include <cmath>

namespace gradedalg {

double wrapAngle(double t) {
    t = std::fmod(t + M_PI, 2.0 * M_PI);
    if (t < 0.0) t += 2.0 * M_PI;
    return t - M_PI;
}

double cutoffOmega(double eps, double t) {
    if (!(eps > 0.0 && eps < M_PI / 2.0))
        throw precondition_error("cutoffOmega: eps must lie in (0, pi/2)");
    const double at = std::abs(wrapAngle(t));
    if (at < eps) return 1.0;
    if (at < 2.0 * eps) return 2.0 - at / eps;
    return 0.0;
}

TrapezoidKernel::TrapezoidKernel(double eps, double center)
    : eps_(eps), center_(wrapAngle(center)) {
    if (!(eps > 0.0 && eps < M_PI / 2.0))
        throw precondition_error("TrapezoidKernel: eps must lie in (0, pi/2)");
}

std::complex<double> TrapezoidKernel::fourier(int n) const {
    double c;
    if (n == 0) {
        c = 3.0 * eps_ / (2.0 * M_PI);
    } else {
        const double x = static_cast<double>(n);
        c = (std::cos(eps_ * x) - std::cos(2.0 * eps_ * x)) / (M_PI * eps_ * x * x);
    }
    if (center_ == 0.0) return {c, 0.0};
    return c * std::polar(1.0, -n * center_);
}

double TrapezoidKernel::fourierAbs(int n) const {
    if (n == 0) return 3.0 * eps_ / (2.0 * M_PI);
    const double x = static_cast<double>(n);
    return std::abs(std::cos(eps_ * x) - std::cos(2.0 * eps_ * x)) / (M_PI * eps_ * x * x);
}

double TrapezoidKernel::l1Tail(int m) const {
    if (m < 1) m = 1;
    // sum_{n>m} 1/n^2 < 1/m, both signs
    return 4.0 / (M_PI * eps_ * static_cast<double>(m));
}

double TrapezoidKernel::l1Norm() const {
    constexpr int kProbe = 4096;
    double s = fourierAbs(0);
    for (int n = 1; n <= kProbe; ++n) s += 2.0 * fourierAbs(n);
    return s + l1Tail(kProbe);
}

}  // namespace gradedalg
