#include "gradedalg/patch.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace gradedalg {

namespace {

Rational patchGrade(const InstanceSpec& spec, const PatchOptions& opts) {
    if (opts.gradeSet) {
        spec.requireGrade(opts.grade);
        return opts.grade;
    }
    return spec.grades().front();
}

// Uncovered arcs of [-pi, pi) left by the intervals (t_i - eps_i, t_i + eps_i).
std::vector<std::pair<double, double>> uncoveredArcs(const std::vector<LocalPatch>& locals) {
    for (const auto& p : locals)
        if (p.eps >= M_PI) return {};
    // unwrap every interval into [0, 2pi) segments
    std::vector<std::pair<double, double>> segs;
    for (const auto& p : locals) {
        double lo = p.t0 - p.eps + M_PI;  // shift to [0, 2pi) coordinates
        double hi = p.t0 + p.eps + M_PI;
        const double span = 2.0 * M_PI;
        lo = std::fmod(lo, span);
        if (lo < 0.0) lo += span;
        hi = lo + 2.0 * p.eps;
        if (hi <= span) {
            segs.push_back({lo, hi});
        } else {
            segs.push_back({lo, span});
            segs.push_back({0.0, hi - span});
        }
    }
    std::sort(segs.begin(), segs.end());
    std::vector<std::pair<double, double>> gaps;
    double covered = 0.0;
    for (const auto& [lo, hi] : segs) {
        if (lo > covered + 1e-12) gaps.push_back({covered - M_PI, lo - M_PI});
        covered = std::max(covered, hi);
    }
    if (covered < 2.0 * M_PI - 1e-12) gaps.push_back({covered - M_PI, M_PI});
    return gaps;
}

// out_n += sum_k s(n-k) b_k for |n| <= halfOut, with s given at every index.
void accumulateKernelProduct(const std::function<Complex(int)>& s, const WienerElement& b,
                             WienerElement& out) {
    const int halfOut = out.halfWidth();
    const int stride = out.stride();
    for (int n = -halfOut; n <= halfOut; ++n) {
        auto dst = out.blockRef(n);
        for (int k = -b.halfWidth(); k <= b.halfWidth(); ++k) {
            const Complex c = s(n - k);
            if (c == Complex{}) continue;
            const auto src = b.block(k);
            for (int i = 0; i < stride; ++i) dst[i] += c * src[i];
        }
    }
}

}  // namespace

std::pair<WienerElement, PatchReport> patchGlobalInverse(const WienerElement& a,
                                                         const std::vector<LocalPatch>& locals,
                                                         const PatchOptions& opts) {
    if (locals.empty()) throw precondition_error("patchGlobalInverse: no local inverses");
    const InstanceSpec& spec = a.spec();
    for (const auto& p : locals) WienerElement::requireCompatible(a, p.leftInverse);

    const auto gaps = uncoveredArcs(locals);
    if (!gaps.empty()) {
        std::string msg = "patchGlobalInverse: cover check failed, uncovered arcs:";
        for (const auto& [lo, hi] : gaps)
            msg += " (" + std::to_string(lo) + ", " + std::to_string(hi) + ")";
        throw cover_error(msg, gaps);
    }

    const Rational grade = patchGrade(spec, opts);
    PatchReport rep;
    const int m = static_cast<int>(locals.size());
    const AlgebraElement one = AlgebraElement::unit(spec);

    // single patch covering the whole circle: the partition is trivial
    if (m == 1 && locals[0].eps >= M_PI) {
        WienerElement aPrime = locals[0].leftInverse;
        rep.uniformTiling = false;
        rep.partitionError = 0.0;
        WienerElement residual = aPrime.mulResidual(a) - WienerElement::unit(spec);
        rep.window = opts.residualWindow;
        for (int n = -residual.halfWidth(); n <= residual.halfWidth(); ++n) {
            const double cn = residual.coeffNorm(n, grade);
            if (std::abs(n) <= rep.window)
                rep.windowResidual += cn;
            else
                rep.truncationBudget += cn;
        }
        if (rep.windowResidual > opts.tol)
            throw numerical_error("patchGlobalInverse: residual " +
                                  std::to_string(rep.windowResidual) + " above tolerance");
        return {std::move(aPrime), rep};
    }

    // detect uniformly spaced centers (sorted input not required)
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return locals[i].t0 < locals[j].t0; });
    const double delta = 2.0 * M_PI / m;
    bool uniform = true;
    for (int i = 0; i < m; ++i) {
        const double expected = locals[order[0]].t0 + i * delta;
        if (std::abs(wrapAngle(locals[order[i]].t0 - expected)) > 1e-9) uniform = false;
    }
    double epsMin = locals[0].eps;
    for (const auto& p : locals) epsMin = std::min(epsMin, p.eps);
    const double bump = delta / 3.0;
    if (uniform && !(2.0 * bump <= epsMin)) uniform = false;  // tiling must stay subordinate
    rep.uniformTiling = uniform;

    std::vector<TrapezoidKernel> kernels;
    std::vector<std::vector<Complex>> raggedCoeffs;  // index 0 <-> -window
    int raggedWindow = 0;

    if (uniform) {
        for (const auto& p : locals) kernels.emplace_back(bump, p.t0);
        // the equal-trapezoid tiling sums to one identically; verify on the grid
        double worst = 0.0;
        for (int gi = 0; gi < opts.grid; ++gi) {
            const double t = -M_PI + 2.0 * M_PI * gi / opts.grid;
            double s = 0.0;
            for (const auto& k : kernels) s += k.value(t);
            worst = std::max(worst, std::abs(s - 1.0));
        }
        rep.partitionError = worst;
    } else {
        // grid-normalized bumps, re-projected to Fourier coefficients
        const int G = opts.grid;
        std::vector<TrapezoidKernel> bumps;
        for (const auto& p : locals)
            bumps.emplace_back(std::min(p.eps / 2.0, M_PI / 2.0 * 0.999), p.t0);
        std::vector<double> W(G, 0.0);
        for (int gi = 0; gi < G; ++gi) {
            const double t = -M_PI + 2.0 * M_PI * gi / G;
            for (const auto& b : bumps) W[gi] += b.value(t);
        }
        const double minW = *std::min_element(W.begin(), W.end());
        if (minW < 1e-3)
            throw cover_error("patchGlobalInverse: bump overlap degenerates on the grid",
                              {{0.0, 0.0}});
        raggedWindow = std::min(opts.raggedCoefficientWindow, G / 2 - 1);
        raggedCoeffs.assign(m, std::vector<Complex>(2 * raggedWindow + 1, Complex{}));
        for (int i = 0; i < m; ++i) {
            for (int n = -raggedWindow; n <= raggedWindow; ++n) {
                Complex acc{};
                for (int gi = 0; gi < G; ++gi) {
                    const double t = -M_PI + 2.0 * M_PI * gi / G;
                    const double phi = bumps[i].value(t) / W[gi];
                    acc += phi * std::polar(1.0, -n * t);
                }
                raggedCoeffs[i][n + raggedWindow] = acc / static_cast<double>(G);
            }
        }
        // recorded projection error: reconstructed sum vs 1 on the grid
        double worst = 0.0;
        for (int gi = 0; gi < G; ++gi) {
            const double t = -M_PI + 2.0 * M_PI * gi / G;
            Complex s{};
            for (int i = 0; i < m; ++i)
                for (int n = -raggedWindow; n <= raggedWindow; ++n)
                    s += raggedCoeffs[i][n + raggedWindow] * std::polar(1.0, n * t);
            worst = std::max(worst, std::abs(s - Complex{1.0, 0.0}));
        }
        rep.partitionError = worst;
    }

    // per-patch pointwise check on its own interval
    for (const auto& p : locals) {
        for (int s = 0; s < 16; ++s) {
            const double t = p.t0 + (2.0 * s / 15.0 - 1.0) * 0.95 * std::min(p.eps, M_PI);
            const AlgebraElement prod = AlgebraElement::mulQuotient(
                p.leftInverse.evaluate(t), a.evaluate(t), a.coeffDeg());
            rep.patchCheckWorst =
                std::max(rep.patchCheckWorst, (prod - one).truncationNorm(grade));
        }
    }

    // materialize a' = sum_i phi_i b'_i on the output window
    WienerElement aPrime = WienerElement::zero(spec, opts.outputHalfWidth, a.coeffDeg());
    for (int i = 0; i < m; ++i) {
        const WienerElement& bi = locals[i].leftInverse;
        if (uniform) {
            const TrapezoidKernel& k = kernels[i];
            accumulateKernelProduct([&](int n) { return k.fourier(n); }, bi, aPrime);
        } else {
            const auto& coeffs = raggedCoeffs[i];
            accumulateKernelProduct(
                [&](int n) {
                    return std::abs(n) <= raggedWindow ? coeffs[n + raggedWindow] : Complex{};
                },
                bi, aPrime);
        }
    }

    // recorded out-of-window kernel mass
    for (int i = 0; i < m; ++i) {
        const double mass = locals[i].leftInverse.coeffNormSum(grade);
        if (uniform)
            rep.truncationBudget +=
                mass * kernels[i].l1Tail(opts.outputHalfWidth - locals[i].leftInverse.halfWidth());
        else
            rep.truncationBudget += mass * rep.partitionError;
    }

    // windowed residual of a' a - 1
    {
        WienerElement residual = aPrime.mulResidual(a) - WienerElement::unit(spec);
        rep.window = std::min(opts.residualWindow, opts.outputHalfWidth - a.halfWidth());
        for (int n = -rep.window; n <= rep.window; ++n)
            rep.windowResidual += residual.coeffNorm(n, grade);
    }

    // direct pointwise check of the patched product on the grid
    for (int gi = 0; gi < opts.grid; ++gi) {
        const double t = -M_PI + 2.0 * M_PI * gi / opts.grid;
        const AlgebraElement prod =
            AlgebraElement::mulQuotient(aPrime.evaluate(t), a.evaluate(t), a.coeffDeg());
        rep.pointwiseResidual =
            std::max(rep.pointwiseResidual, (prod - one).truncationNorm(grade));
    }

    if (rep.windowResidual > opts.tol)
        throw numerical_error("patchGlobalInverse: windowed residual " +
                              std::to_string(rep.windowResidual) + " above tolerance " +
                              std::to_string(opts.tol));
    return {std::move(aPrime), rep};
}

WienerInvertResult wienerLeftInverse(const WienerElement& a, const WienerInvertOptions& opts) {
    const InstanceSpec& spec = a.spec();
    WienerInvertResult result;

    int grid = opts.scanGrid;
    if (grid < 0) {
        grid = 64;
        while (grid < 4 * (2 * a.halfWidth() + 1)) grid *= 2;
    }
    result.scan = invertibilityScan(a, grid);
    if (!result.scan.allInvertible) {
        double tBad = 0.0;
        for (const auto& pt : result.scan.points)
            if (pt.status != PointInvertibility::Invertible) {
                tBad = pt.t;
                break;
            }
        throw numerical_error("wienerLeftInverse: symbol is not invertible at t = " +
                              std::to_string(tBad));
    }

    const Rational alpha = opts.localization.alphaSet ? opts.localization.alpha
                                                      : spec.grades().front();

    int m = std::max(3, opts.initialCenters);
    std::vector<LocalizationCertificate> certs;
    std::vector<WienerElement> localized;
    for (int round = 0; round < opts.maxRefinements; ++round) {
        certs.clear();
        localized.clear();
        const double delta = 2.0 * M_PI / m;
        double epsMin = M_PI;
        for (int i = 0; i < m; ++i) {
            const double ti = -M_PI + i * delta;
            const AlgebraElement pinv = pointwiseLeftInverse(a.evaluate(ti), alpha);
            auto [b, cert] = chooseLocalization(a, ti, pinv, opts.localization);
            epsMin = std::min(epsMin, cert.eps);
            certs.push_back(std::move(cert));
            localized.push_back(std::move(b));
        }
        if (2.0 * delta / 3.0 <= epsMin) break;
        const int refined = static_cast<int>(std::ceil(2.0 * M_PI / (1.4 * epsMin)));
        m = std::max(refined, m + 1);
        if (round + 1 == opts.maxRefinements)
            throw numerical_error("wienerLeftInverse: center refinement budget exhausted");
    }

    const double tolLocal = std::min(opts.localTol, opts.tol / (20.0 * m));
    std::vector<LocalPatch> patches;
    for (int i = 0; i < m; ++i) {
        const auto inv = localLeftInverse(localized[i], certs[i], tolLocal, opts.local);
        LocalPatch p;
        p.t0 = certs[i].t0;
        p.eps = certs[i].eps;
        p.leftInverse = inv.leftInverse.phaseTwisted(-certs[i].t0);
        patches.push_back(std::move(p));
    }

    PatchOptions popts = opts.patch;
    popts.tol = opts.tol;
    if (!popts.gradeSet) {
        popts.grade = certs.front().gamma;
        popts.gradeSet = true;
    }
    auto [inverse, rep] = patchGlobalInverse(a, patches, popts);
    result.inverse = std::move(inverse);
    result.certificates = std::move(certs);
    result.patch = rep;
    result.centers = m;
    return result;
}

}  // namespace gradedalg
