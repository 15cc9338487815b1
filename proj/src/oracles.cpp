#include "gradedalg/oracles.hpp"

#include <cmath>
#include <string>

namespace gradedalg {

namespace {

void requireFiniteCoefficients(const WienerElement& a, const char* where) {
    if (a.spec().kind() != InstanceKind::Matrix)
        throw precondition_error(std::string(where) +
                                 ": series instances unsupported (oracle is for "
                                 "finite-dimensional coefficients only)");
}

int oracleGrid(int requested, int halfWidth) {
    const int need = 4 * (2 * halfWidth + 1);
    int g = 64;
    while (g < need) g *= 2;
    if (requested < 0) return g;
    if (requested < need || (requested & (requested - 1)) != 0)
        throw precondition_error("oracle grid must be a power of two >= 4(2N+1)");
    return requested;
}

Eigen::MatrixXcd evalDense(const WienerElement& a, double t) {
    const int d = a.spec().dim();
    Eigen::MatrixXcd m(d, d);
    const AlgebraElement v = a.evaluate(t);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) m(r, c) = v.coeff(r * d + c);
    return m;
}

}  // namespace

FiniteSection toeplitzSection(const WienerElement& a, int halfWidth) {
    requireFiniteCoefficients(a, "toeplitzSection");
    const int d = a.spec().dim();
    const int w = 2 * halfWidth + 1;
    FiniteSection fs;
    fs.halfWidth = halfWidth;
    fs.dim = d;
    fs.matrix = Eigen::MatrixXcd::Zero(w * d, w * d);
    for (int j = -halfWidth; j <= halfWidth; ++j)
        for (int k = -halfWidth; k <= halfWidth; ++k) {
            if (std::abs(j - k) > a.halfWidth()) continue;
            const auto blk = a.block(j - k);
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c)
                    fs.matrix((j + halfWidth) * d + r, (k + halfWidth) * d + c) =
                        blk[r * d + c];
        }
    return fs;
}

WienerElement toeplitzApply(const WienerElement& a, const WienerElement& x) {
    requireFiniteCoefficients(a, "toeplitzApply");
    WienerElement::requireCompatible(a, x);
    const int d = a.spec().dim();
    const int nOut = a.halfWidth() + x.halfWidth();
    const FiniteSection fs = toeplitzSection(a, nOut);

    Eigen::MatrixXcd xs = Eigen::MatrixXcd::Zero((2 * nOut + 1) * d, d);
    for (int k = -x.halfWidth(); k <= x.halfWidth(); ++k) {
        const auto blk = x.block(k);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) xs((k + nOut) * d + r, c) = blk[r * d + c];
    }
    const Eigen::MatrixXcd ys = fs.matrix * xs;

    WienerElement y = WienerElement::zero(a.spec(), nOut);
    for (int j = -nOut; j <= nOut; ++j) {
        auto blk = y.blockRef(j);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) blk[r * d + c] = ys((j + nOut) * d + r, c);
    }
    return y;
}

PointwiseInverseReport pointwiseInverseOracle(const WienerElement& a, int gridSize,
                                              int outHalfWidth) {
    requireFiniteCoefficients(a, "pointwiseInverseOracle");
    const int G = oracleGrid(gridSize, a.halfWidth());
    const int d = a.spec().dim();
    if (outHalfWidth < 0) outHalfWidth = G / 4;
    if (outHalfWidth > G / 2 - 1) throw precondition_error("pointwiseInverseOracle: window too wide");

    std::vector<Eigen::MatrixXcd> inv(G);
    for (int g = 0; g < G; ++g) {
        const double t = -M_PI + 2.0 * M_PI * g / G;
        const Eigen::MatrixXcd m = evalDense(a, t);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        if (svd.singularValues()(d - 1) <= 1e-12 * std::max(1.0, svd.singularValues()(0)))
            throw numerical_error("pointwiseInverseOracle: singular grid point t = " +
                                  std::to_string(t));
        inv[g] = m.partialPivLu().inverse();
    }

    PointwiseInverseReport rep;
    rep.gridSize = G;
    rep.inverse = WienerElement::zero(a.spec(), outHalfWidth);
    for (int n = -outHalfWidth; n <= outHalfWidth; ++n) {
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d, d);
        for (int g = 0; g < G; ++g) {
            const double t = -M_PI + 2.0 * M_PI * g / G;
            acc += inv[g] * std::polar(1.0, -n * t);
        }
        acc /= static_cast<double>(G);
        auto blk = rep.inverse.blockRef(n);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) blk[r * d + c] = acc(r, c);
    }

    for (int band = 0; (1 << band) <= outHalfWidth; ++band) {
        double mass = 0.0;
        for (int n = 1 << band; n < std::min(1 << (band + 1), outHalfWidth + 1); ++n)
            mass += rep.inverse.coeffNorm(n, Rational(0)) +
                    rep.inverse.coeffNorm(-n, Rational(0));
        rep.bandMass.push_back(mass);
    }
    return rep;
}

std::pair<WienerElement, WienerElement> scalarWienerHopfOracle(const WienerElement& a,
                                                               int gridSize) {
    requireFiniteCoefficients(a, "scalarWienerHopfOracle");
    if (a.spec().dim() != 1)
        throw precondition_error("scalarWienerHopfOracle: scalar symbols only");
    const int G = oracleGrid(gridSize, a.halfWidth());

    std::vector<Complex> values(G);
    for (int g = 0; g < G; ++g) {
        const double t = -M_PI + 2.0 * M_PI * g / G;
        values[g] = a.evaluate(t).coeff(0);
        if (std::abs(values[g]) < 1e-13)
            throw numerical_error("scalarWienerHopfOracle: symbol vanishes at t = " +
                                  std::to_string(t));
    }

    // continuous argument and winding number
    std::vector<double> theta(G);
    theta[0] = std::arg(values[0]);
    for (int g = 1; g < G; ++g)
        theta[g] = theta[g - 1] + std::arg(values[g] / values[g - 1]);
    const double total = theta[G - 1] + std::arg(values[0] / values[G - 1]) - theta[0];
    const int winding = static_cast<int>(std::lround(total / (2.0 * M_PI)));
    if (winding != 0)
        throw precondition_error("scalarWienerHopfOracle: winding number " +
                                 std::to_string(winding) +
                                 " != 0, canonical factorization does not exist");

    const int window = G / 4;
    std::vector<Complex> logCoeff(2 * window + 1);
    for (int n = -window; n <= window; ++n) {
        Complex acc{};
        for (int g = 0; g < G; ++g) {
            const double t = -M_PI + 2.0 * M_PI * g / G;
            const Complex L{std::log(std::abs(values[g])), theta[g]};
            acc += L * std::polar(1.0, -n * t);
        }
        logCoeff[n + window] = acc / static_cast<double>(G);
    }

    // split: indices n >= 0 feed the minus factor (it carries the constant),
    // indices n < 0 feed the plus factor
    auto expSplit = [&](bool minusSide) {
        std::vector<Complex> vals(G);
        for (int g = 0; g < G; ++g) {
            const double t = -M_PI + 2.0 * M_PI * g / G;
            Complex s{};
            for (int n = -window; n <= window; ++n) {
                const bool take = minusSide ? (n >= 0) : (n < 0);
                if (take) s += logCoeff[n + window] * std::polar(1.0, n * t);
            }
            vals[g] = std::exp(s);
        }
        WienerElement out = WienerElement::zero(a.spec(), window);
        for (int n = -window; n <= window; ++n) {
            Complex acc{};
            for (int g = 0; g < G; ++g) {
                const double t = -M_PI + 2.0 * M_PI * g / G;
                acc += vals[g] * std::polar(1.0, -n * t);
            }
            out.blockRef(n)[0] = acc / static_cast<double>(G);
        }
        return out;
    };

    return {expSplit(true), expSplit(false)};
}

namespace {

WienerElement sectionSolve(const WienerElement& s, const WienerElement& rhs, int halfWidth,
                           bool xEquation) {
    requireFiniteCoefficients(s, "finiteSectionSolve");
    WienerElement::requireCompatible(s, rhs);
    const int d = s.spec().dim();
    const int w = 2 * halfWidth + 1;
    const int dim = w * d;

    // left multiplication by s acts column-by-column; right multiplication
    // row-by-row with transposed blocks
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(dim, dim);
    for (int j = -halfWidth; j <= halfWidth; ++j) {
        const bool project = xEquation ? (j < 0) : (j >= 0);
        if (!project) continue;
        for (int k = -halfWidth; k <= halfWidth; ++k) {
            if (std::abs(j - k) > s.halfWidth()) continue;
            const auto blk = s.block(j - k);
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) {
                    const Complex v = xEquation ? blk[r * d + c] : blk[c * d + r];
                    M((j + halfWidth) * d + r, (k + halfWidth) * d + c) -= v;
                }
        }
    }

    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(dim, d);
    for (int k = -std::min(halfWidth, rhs.halfWidth()); k <= std::min(halfWidth, rhs.halfWidth());
         ++k) {
        const auto blk = rhs.block(k);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                const Complex v = xEquation ? blk[r * d + c] : blk[c * d + r];
                b((k + halfWidth) * d + r, c) = v;
            }
    }

    const Eigen::MatrixXcd sol = M.partialPivLu().solve(b);
    WienerElement out = WienerElement::zero(s.spec(), halfWidth);
    for (int k = -halfWidth; k <= halfWidth; ++k) {
        auto blk = out.blockRef(k);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                const Complex v = sol((k + halfWidth) * d + r, c);
                blk[xEquation ? r * d + c : c * d + r] = v;
            }
    }
    return out;
}

}  // namespace

WienerElement finiteSectionSolveX(const WienerElement& s, const WienerElement& rhs,
                                  int halfWidth) {
    return sectionSolve(s, rhs, halfWidth, true);
}

WienerElement finiteSectionSolveY(const WienerElement& s, const WienerElement& rhs,
                                  int halfWidth) {
    return sectionSolve(s, rhs, halfWidth, false);
}

}  // namespace gradedalg
