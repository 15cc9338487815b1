#include "gradedalg/calculus.hpp"

#include <cmath>
#include <limits>
#include <memory>

namespace gradedalg {

PowerSeries PowerSeries::geometric() {
    PowerSeries s;
    s.coeff = [](int) { return Complex{1.0, 0.0}; };
    s.radius = 1.0;
    s.tail = [](int n, double rho) { return std::pow(rho, n + 1) / (1.0 - rho); };
    return s;
}

PowerSeries PowerSeries::exponential() {
    PowerSeries s;
    s.coeff = [](int n) {
        double f = 1.0;
        for (int k = 2; k <= n; ++k) f *= k;
        return Complex{1.0 / f, 0.0};
    };
    s.radius = std::numeric_limits<double>::infinity();
    s.tail = [](int n, double rho) {
        // sum_{k>n} rho^k/k! <= rho^{n+1}/(n+1)! * 1/(1 - rho/(n+2)) once rho < n+2
        double lead = 1.0;
        for (int k = 1; k <= n + 1; ++k) lead *= rho / k;
        if (rho < n + 2) return lead / (1.0 - rho / (n + 2));
        return std::exp(rho);  // crude but honest until n grows past rho
    };
    return s;
}

PowerSeries PowerSeries::polynomial(std::vector<Complex> coeffs) {
    PowerSeries s;
    auto stored = std::make_shared<std::vector<Complex>>(std::move(coeffs));
    s.coeff = [stored](int n) {
        return n < static_cast<int>(stored->size()) ? (*stored)[n] : Complex{};
    };
    s.radius = std::numeric_limits<double>::infinity();
    s.tail = [stored](int n, double rho) {
        double t = 0.0;
        for (int k = n + 1; k < static_cast<int>(stored->size()); ++k)
            t += std::abs((*stored)[k]) * std::pow(rho, k);
        return t;
    };
    return s;
}

}  // namespace gradedalg
