#include "gradedalg/wiener.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "gradedalg/calculus.hpp"

namespace gradedalg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool isSeries(InstanceKind k) { return k != InstanceKind::Matrix; }

// Per-block norm evaluator; precomputes the weight profile once.
class BlockNorm {
public:
    BlockNorm(const InstanceSpec& spec, int deg, const Rational& g) : spec_(&spec) {
        spec.requireGrade(g);
        switch (spec.kind()) {
            case InstanceKind::Matrix:
                break;
            case InstanceKind::Germs: {
                w_.resize(deg + 1);
                const double r = g.value();
                for (int i = 0; i <= deg; ++i) w_[i] = std::pow(r, i);
                break;
            }
            case InstanceKind::Kondratiev: {
                const MultiIndexTable& tab = spec.table(deg);
                w_.resize(tab.size());
                const double p = g.value();
                for (int i = 0; i < tab.size(); ++i) {
                    double v = 1.0;
                    const auto& gamma = tab.at(i);
                    for (std::size_t k = 0; k < gamma.size(); ++k)
                        if (gamma[k] > 0)
                            v *= std::pow(2.0 * (static_cast<double>(k) + 1.0), -p * gamma[k]);
                    w_[i] = v;
                }
                break;
            }
        }
    }

    double operator()(const Complex* p) const {
        switch (spec_->kind()) {
            case InstanceKind::Matrix: {
                const int n = spec_->dim();
                if (n == 1) return std::abs(p[0]);
                Eigen::Map<
                    const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
                    m(p, n, n);
                Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
                return svd.singularValues()(0);
            }
            case InstanceKind::Germs: {
                double s = 0.0;
                for (std::size_t i = 0; i < w_.size(); ++i)
                    if (p[i] != Complex{}) s += std::abs(p[i]) * w_[i];
                return s;
            }
            case InstanceKind::Kondratiev: {
                double s = 0.0;
                for (std::size_t i = 0; i < w_.size(); ++i)
                    if (p[i] != Complex{}) s += std::norm(p[i]) * w_[i];
                return std::sqrt(s);
            }
        }
        return 0.0;
    }

private:
    const InstanceSpec* spec_;
    std::vector<double> w_;
};

bool blockIsZero(const Complex* p, int stride) {
    for (int i = 0; i < stride; ++i)
        if (p[i] != Complex{}) return false;
    return true;
}

}  // namespace

WienerElement WienerElement::zero(const InstanceSpec& spec, int halfWidth, int coeffDeg) {
    if (halfWidth < 0) throw precondition_error("WienerElement: halfWidth must be >= 0");
    WienerElement w;
    w.spec_ = spec;
    w.half_ = halfWidth;
    w.coeffDeg_ = isSeries(spec.kind()) ? (coeffDeg < 0 ? spec.degree() : coeffDeg) : 0;
    w.stride_ = spec.coeffCount(w.coeffDeg_);
    w.buf_.assign(static_cast<std::size_t>(2 * halfWidth + 1) * w.stride_, Complex{});
    return w;
}

WienerElement WienerElement::unit(const InstanceSpec& spec) {
    WienerElement w = zero(spec, 0);
    w.setCoeff(0, AlgebraElement::unit(spec));
    return w;
}

WienerElement WienerElement::fromCoefficients(const InstanceSpec& spec,
                                              const std::map<int, AlgebraElement>& coeffs) {
    int half = 0;
    for (const auto& [n, c] : coeffs) half = std::max(half, std::abs(n));
    WienerElement w = zero(spec, half);
    for (const auto& [n, c] : coeffs) w.setCoeff(n, c);
    return w;
}

std::span<const Complex> WienerElement::block(int n) const {
    return {buf_.data() + static_cast<std::size_t>(n + half_) * stride_,
            static_cast<std::size_t>(stride_)};
}

std::span<Complex> WienerElement::blockRef(int n) {
    return {buf_.data() + static_cast<std::size_t>(n + half_) * stride_,
            static_cast<std::size_t>(stride_)};
}

AlgebraElement WienerElement::coeff(int n) const {
    AlgebraElement e = AlgebraElement::zero(spec_, coeffDeg_);
    if (std::abs(n) <= half_) {
        const auto b = block(n);
        for (int i = 0; i < stride_; ++i) e.coeffRef(i) = b[i];
    }
    return e;
}

void WienerElement::setCoeff(int n, const AlgebraElement& value) {
    if (std::abs(n) > half_)
        throw precondition_error("setCoeff: index outside the stored half-width");
    if (!(value.spec() == spec_)) throw instance_mismatch("setCoeff: instance mismatch");
    if (!value.tailFree())
        throw precondition_error("setCoeff: coefficient tails must be folded into the "
                                 "Wiener-level tail bound");
    AlgebraElement v = value;
    if (isSeries(spec_.kind()) && value.truncationDegree() > coeffDeg_) {
        // extend the shared coefficient degree
        WienerElement wider = zero(spec_, half_, value.truncationDegree());
        for (int m = -half_; m <= half_; ++m) {
            const auto src = block(m);
            auto dst = wider.blockRef(m);
            std::copy(src.begin(), src.end(), dst.begin());
        }
        wider.tail_ = tail_;
        wider.mulCap_ = mulCap_;
        *this = std::move(wider);
    } else if (isSeries(spec_.kind()) && value.truncationDegree() < coeffDeg_) {
        AlgebraElement ext = AlgebraElement::zero(spec_, coeffDeg_);
        for (int i = 0; i < value.coeffCount(); ++i) ext.coeffRef(i) = value.coeff(i);
        v = ext;
    }
    auto dst = blockRef(n);
    for (int i = 0; i < stride_; ++i) dst[i] = v.coeff(i);
}

Complex WienerElement::scalarCoeff(int n) const {
    if (spec_.kind() != InstanceKind::Matrix || spec_.dim() != 1)
        throw precondition_error("scalarCoeff: only available for the 1x1 matrix instance");
    return std::abs(n) <= half_ ? block(n)[0] : Complex{};
}

double WienerElement::coeffNorm(int n, const Rational& g) const {
    if (std::abs(n) > half_) return 0.0;
    return BlockNorm(spec_, coeffDeg_, g)(block(n).data());
}

double WienerElement::coeffNormSum(const Rational& g) const {
    const BlockNorm bn(spec_, coeffDeg_, g);
    double s = 0.0;
    for (int n = -half_; n <= half_; ++n) {
        const auto b = block(n);
        if (!blockIsZero(b.data(), stride_)) s += bn(b.data());
    }
    return s;
}

double WienerElement::tailBound(const Rational& g) const {
    if (tail_.empty()) return 0.0;
    spec_.requireGrade(g);
    const auto it = tail_.find(g);
    if (it != tail_.end()) return it->second;
    double best = kInf;
    for (const auto& [g0, v] : tail_)
        if (std::isfinite(v) && spec_.gradeLeq(g0, g)) best = std::min(best, v);
    return best;
}

void WienerElement::setTailBound(const Rational& g, double v) {
    spec_.requireGrade(g);
    if (v < 0.0) throw precondition_error("tail bound must be nonnegative");
    tail_[g] = v;
}

void WienerElement::addTailBound(const Rational& g, double v) {
    const double prior = tailBound(g);
    setTailBound(g, (std::isfinite(prior) ? prior : 0.0) + v);
}

AlgebraElement WienerElement::evaluate(double t) const {
    AlgebraElement out = AlgebraElement::zero(spec_, coeffDeg_);
    for (int n = -half_; n <= half_; ++n) {
        const auto b = block(n);
        if (blockIsZero(b.data(), stride_)) continue;
        const Complex phase = std::polar(1.0, n * t);
        for (int i = 0; i < stride_; ++i) out.coeffRef(i) += phase * b[i];
    }
    for (const auto& [g, v] : tail_) out.setTailBound(g, v);
    return out;
}

WienerElement& WienerElement::operator+=(const WienerElement& o) {
    requireCompatible(*this, o);
    if (o.half_ > half_ || o.coeffDeg_ > coeffDeg_) {
        WienerElement wider =
            zero(spec_, std::max(half_, o.half_), std::max(coeffDeg_, o.coeffDeg_));
        for (int n = -half_; n <= half_; ++n) {
            const auto src = block(n);
            auto dst = wider.blockRef(n);
            std::copy(src.begin(), src.end(), dst.begin());
        }
        wider.tail_ = tail_;
        wider.mulCap_ = mulCap_;
        *this = std::move(wider);
    }
    for (int n = -o.half_; n <= o.half_; ++n) {
        const auto src = o.block(n);
        auto dst = blockRef(n);
        for (int i = 0; i < o.stride_; ++i) dst[i] += src[i];
    }
    if (!tail_.empty() || !o.tail_.empty()) {
        std::map<Rational, double> merged;
        auto consider = [&](const Rational& g) {
            const double mine = tailBound(g);
            const double theirs = o.tailBound(g);
            if (std::isfinite(mine) && std::isfinite(theirs) && mine + theirs > 0.0)
                merged[g] = mine + theirs;
        };
        for (const auto& [g, v] : tail_) consider(g);
        for (const auto& [g, v] : o.tail_) consider(g);
        tail_ = std::move(merged);
    }
    mulCap_ = std::max(mulCap_, o.mulCap_);
    return *this;
}

WienerElement& WienerElement::operator-=(const WienerElement& o) {
    return *this += o.scaled(-1.0);
}

WienerElement WienerElement::scaled(Complex z) const {
    WienerElement w = *this;
    for (auto& v : w.buf_) v *= z;
    for (auto& [g, v] : w.tail_) v *= std::abs(z);
    return w;
}

WienerElement WienerElement::phaseTwisted(double t0) const {
    WienerElement w = *this;
    for (int n = -half_; n <= half_; ++n) {
        const Complex phase = std::polar(1.0, n * t0);
        auto b = w.blockRef(n);
        for (int i = 0; i < stride_; ++i) b[i] *= phase;
    }
    return w;
}

WienerElement WienerElement::filtered(bool (*keep)(int)) const {
    WienerElement w = *this;
    for (int n = -half_; n <= half_; ++n) {
        if (keep(n)) continue;
        auto b = w.blockRef(n);
        std::fill(b.begin(), b.end(), Complex{});
    }
    return w;
}

WienerElement WienerElement::truncatedToHalfWidth(int halfWidth) const {
    if (halfWidth >= half_) return *this;
    WienerElement w = zero(spec_, halfWidth, coeffDeg_);
    for (int n = -halfWidth; n <= halfWidth; ++n) {
        const auto src = block(n);
        auto dst = w.blockRef(n);
        std::copy(src.begin(), src.end(), dst.begin());
    }
    w.tail_ = tail_;
    w.mulCap_ = mulCap_;
    for (const auto& g : spec_.grades()) {
        const BlockNorm bn(spec_, coeffDeg_, g);
        double dropped = 0.0;
        for (int n = -half_; n <= half_; ++n) {
            if (std::abs(n) <= halfWidth) continue;
            const auto b = block(n);
            if (!blockIsZero(b.data(), stride_)) dropped += bn(b.data());
        }
        if (dropped > 0.0) w.addTailBound(g, dropped);
    }
    return w;
}

double WienerElement::maxAbsCoeff() const {
    double m = 0.0;
    for (const auto& v : buf_) m = std::max(m, std::abs(v));
    return m;
}

double WienerElement::unitNorm(const Rational& g) const {
    return AlgebraElement::unit(spec_).norm(g);
}

void WienerElement::requireCompatible(const WienerElement& a, const WienerElement& b) {
    if (!(a.spec_ == b.spec_))
        throw instance_mismatch("Wiener elements belong to different instances");
}

// Core convolution. capHalfWidth < 0 means "no index cap".
WienerElement wienerMultiplyImpl(const WienerElement& a, const WienerElement& b, int capHalfWidth,
                                 bool accrueTails) {
    WienerElement::requireCompatible(a, b);
    const InstanceSpec& spec = a.spec_;
    const bool series = isSeries(spec.kind());
    const int nFull = a.half_ + b.half_;
    const int degFull = series ? a.coeffDeg_ + b.coeffDeg_ : 0;

    WienerElement full = WienerElement::zero(spec, nFull, degFull);

    const int sa = a.stride_, sb = b.stride_, so = full.stride_;
    const int wa = 2 * a.half_ + 1, wb = 2 * b.half_ + 1;
    const Complex* A = a.buf_.data();
    const Complex* B = b.buf_.data();
    Complex* O = full.buf_.data();

    if (spec.kind() == InstanceKind::Matrix && spec.dim() == 1) {
        for (int i = 0; i < wa; ++i) {
            const Complex av = A[i];
            if (av == Complex{}) continue;
            Complex* out = O + i;
            for (int j = 0; j < wb; ++j) out[j] += av * B[j];
        }
    } else if (spec.kind() == InstanceKind::Matrix) {
        const int d = spec.dim();
        for (int i = 0; i < wa; ++i) {
            const Complex* Ab = A + static_cast<std::size_t>(i) * sa;
            if (blockIsZero(Ab, sa)) continue;
            for (int j = 0; j < wb; ++j) {
                const Complex* Bb = B + static_cast<std::size_t>(j) * sb;
                if (blockIsZero(Bb, sb)) continue;
                Complex* Ob = O + static_cast<std::size_t>(i + j) * so;
                for (int r = 0; r < d; ++r)
                    for (int c = 0; c < d; ++c) {
                        Complex s{};
                        for (int k = 0; k < d; ++k) s += Ab[r * d + k] * Bb[k * d + c];
                        Ob[r * d + c] += s;
                    }
            }
        }
    } else {
        for (int i = 0; i < wa; ++i) {
            const Complex* Ab = A + static_cast<std::size_t>(i) * sa;
            if (blockIsZero(Ab, sa)) continue;
            for (int j = 0; j < wb; ++j) {
                const Complex* Bb = B + static_cast<std::size_t>(j) * sb;
                if (blockIsZero(Bb, sb)) continue;
                accumulateProduct(spec, Ab, a.coeffDeg_, Bb, b.coeffDeg_,
                                  O + static_cast<std::size_t>(i + j) * so, degFull);
            }
        }
    }

    const int nOut = capHalfWidth < 0 ? nFull : std::min(nFull, capHalfWidth);
    const int degOut = series ? std::min(spec.degree(), degFull) : 0;

    WienerElement out = WienerElement::zero(spec, nOut, degOut);
    for (int n = -nOut; n <= nOut; ++n) {
        const auto src = full.block(n);
        auto dst = out.blockRef(n);
        std::copy(src.begin(), src.begin() + out.stride_, dst.begin());
    }
    out.mulCap_ = std::max(a.mulCap_, b.mulCap_);
    if (!accrueTails) return out;

    std::vector<Rational> gradeSet = spec.grades();
    for (const auto& [g, v] : a.tail_) gradeSet.push_back(g);
    for (const auto& [g, v] : b.tail_) gradeSet.push_back(g);
    std::sort(gradeSet.begin(), gradeSet.end());
    gradeSet.erase(std::unique(gradeSet.begin(), gradeSet.end()), gradeSet.end());

    const bool haveInputTails = !a.tail_.empty() || !b.tail_.empty();
    for (const auto& g : gradeSet) {
        double t = 0.0;
        // mass dropped with the index cap
        if (nOut < nFull) {
            const BlockNorm bn(spec, degFull, g);
            for (int n = -nFull; n <= nFull; ++n) {
                if (std::abs(n) <= nOut) continue;
                const auto bptr = full.block(n);
                if (!blockIsZero(bptr.data(), full.stride_)) t += bn(bptr.data());
            }
        }
        // mass dropped when re-truncating coefficient degrees
        if (degOut < degFull) {
            for (int n = -nOut; n <= nOut; ++n) {
                const auto bptr = full.block(n);
                if (blockIsZero(bptr.data(), full.stride_)) continue;
                AlgebraElement tmp = AlgebraElement::fromCoefficients(
                    spec, degFull, std::vector<Complex>(bptr.begin(), bptr.end()));
                t += tmp.truncatedTo(degOut).tailBound(g);
            }
        }
        if (haveInputTails) {
            Rational p(0);
            double A2 = 0.0;
            if (!spec.ladderPairFor(g, p, A2)) continue;
            const double ta = a.tailBound(p);
            const double tb = b.tailBound(g);
            if (!std::isfinite(ta) || !std::isfinite(tb)) continue;
            t += A2 * (ta * (b.coeffNormSum(g) + tb) + a.coeffNormSum(p) * tb);
        }
        if (t > 0.0 && std::isfinite(t)) out.tail_[g] = t;
    }
    return out;
}

WienerElement WienerElement::mulRep(const WienerElement& o) const {
    return wienerMultiplyImpl(*this, o, std::max(mulCap_, o.mulCap_), false);
}

WienerElement WienerElement::mulResidual(const WienerElement& o) const {
    return wienerMultiplyImpl(*this, o, -1, false);
}

double wienerNorm(const WienerElement& a, const Rational& g) { return a.norm(g); }

WienerElement wienerMultiply(const WienerElement& a, const WienerElement& b, int capHalfWidth) {
    return wienerMultiplyImpl(a, b, capHalfWidth < 0 ? a.mulCap() : capHalfWidth, true);
}

WienerElement randomWienerElement(const InstanceSpec& spec, Rng& rng, int halfWidth,
                                  double decay) {
    WienerElement w = WienerElement::zero(spec, halfWidth);
    for (int n = -halfWidth; n <= halfWidth; ++n) {
        const AlgebraElement e = randomElement(spec, rng);
        const double damp = std::pow(decay, std::abs(n));
        auto dst = w.blockRef(n);
        for (int i = 0; i < w.stride(); ++i) dst[i] = e.coeff(i) * damp;
    }
    return w;
}

namespace {

// Neumann-condition search shared by the scan and the pointwise inverse:
// find a declared grade pair (alpha, h(alpha)) with
// A_{h(alpha),alpha} ||1 - value/c0||_alpha < 1.
bool neumannConditionSearch(const AlgebraElement& value, Complex c0, Rational& gradeOut,
                            double& kappaOut) {
    const InstanceSpec& spec = value.spec();
    const AlgebraElement u =
        AlgebraElement::unit(spec) - value.scaled(Complex{1.0, 0.0} / c0);
    double bestKappa = kInf;
    for (const auto& g : spec.grades()) {
        const Rational beta = spec.ladderH(g);
        if (!spec.validGrade(beta)) continue;
        double kappa;
        try {
            kappa = spec.ladderConstant(beta, g) * u.norm(g);
        } catch (const ladder_error&) {
            continue;
        }
        if (kappa < bestKappa) {
            bestKappa = kappa;
            gradeOut = g;
        }
        if (kappa < 1.0) {
            kappaOut = kappa;
            return true;
        }
    }
    kappaOut = bestKappa;
    return false;
}

}  // namespace

ScanReport invertibilityScan(const WienerElement& a, int gridSize) {
    if (gridSize < 2 * a.halfWidth() + 1)
        throw precondition_error("invertibilityScan: grid must have at least 2N+1 points");
    ScanReport rep;
    rep.gridSize = gridSize;
    rep.minMargin = kInf;
    rep.allInvertible = true;

    const InstanceSpec& spec = a.spec();
    for (int gidx = 0; gidx < gridSize; ++gidx) {
        const double t = -M_PI + 2.0 * M_PI * gidx / gridSize;
        const AlgebraElement v = a.evaluate(t);
        ScanPoint pt;
        pt.t = t;
        if (spec.kind() == InstanceKind::Matrix) {
            const int d = spec.dim();
            Eigen::MatrixXcd m(d, d);
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) m(r, c) = v.coeff(r * d + c);
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
            const double smax = svd.singularValues()(0);
            const double smin = svd.singularValues()(d - 1);
            pt.margin = smin;
            pt.grade = Rational(0);
            pt.status = (smin <= 1e-12 * std::max(1.0, smax)) ? PointInvertibility::Singular
                                                              : PointInvertibility::Invertible;
        } else {
            const Complex c0 = v.coeff(0);
            if (std::abs(c0) <= 1e-12 * std::max(1.0, v.maxAbsCoeff())) {
                pt.status = PointInvertibility::Singular;
                pt.margin = 0.0;
            } else {
                Rational grade(0);
                double kappa = kInf;
                if (neumannConditionSearch(v, c0, grade, kappa)) {
                    pt.status = PointInvertibility::Invertible;
                    pt.margin = 1.0 - kappa;
                    pt.grade = grade;
                } else {
                    pt.status = PointInvertibility::Unknown;
                    pt.margin = std::isfinite(kappa) ? 1.0 - kappa : 0.0;
                }
            }
        }
        if (pt.status != PointInvertibility::Invertible) {
            rep.allInvertible = false;
            if (pt.status == PointInvertibility::Singular) ++rep.singularCount;
        }
        rep.minMargin = std::min(rep.minMargin, pt.margin);
        rep.points.push_back(pt);
    }
    return rep;
}

AlgebraElement pointwiseLeftInverse(const AlgebraElement& value, const Rational& alpha) {
    const InstanceSpec& spec = value.spec();
    if (spec.kind() == InstanceKind::Matrix) {
        const int d = spec.dim();
        Eigen::MatrixXcd m(d, d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) m(r, c) = value.coeff(r * d + c);
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(m);
        if (!lu.isInvertible())
            throw numerical_error("pointwiseLeftInverse: matrix value is singular");
        const Eigen::MatrixXcd inv = lu.inverse();
        AlgebraElement out = AlgebraElement::zero(spec);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) out.coeffRef(r * d + c) = inv(r, c);
        return out;
    }
    const Complex c0 = value.coeff(0);
    if (std::abs(c0) <= 1e-12 * std::max(1.0, value.maxAbsCoeff()))
        throw numerical_error("pointwiseLeftInverse: constant term is numerically zero");
    Rational grade = alpha;
    double kappa = kInf;
    if (!neumannConditionSearch(value, c0, grade, kappa))
        throw numerical_error("pointwiseLeftInverse: no certified Neumann condition found");
    const AlgebraElement u =
        AlgebraElement::unit(spec) - value.scaled(Complex{1.0, 0.0} / c0);
    const auto inv = neumannInverse(u, grade, spec.ladderH(grade), 1e-12);
    return inv.inverse.scaled(Complex{1.0, 0.0} / c0);
}

}  // namespace gradedalg
