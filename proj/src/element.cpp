#include "gradedalg/element.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace gradedalg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool isSeries(InstanceKind k) { return k != InstanceKind::Matrix; }

double kondratievWeight(const std::vector<int>& gamma, double p) {
    double w = 1.0;
    for (std::size_t k = 0; k < gamma.size(); ++k)
        if (gamma[k] > 0) w *= std::pow(2.0 * (static_cast<double>(k) + 1.0), -p * gamma[k]);
    return w;
}

}  // namespace

void accumulateProduct(const InstanceSpec& spec, const Complex* a, int degA, const Complex* b,
                       int degB, Complex* out, int degOut) {
    switch (spec.kind()) {
        case InstanceKind::Matrix: {
            const int n = spec.dim();
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    Complex s{};
                    for (int k = 0; k < n; ++k) s += a[i * n + k] * b[k * n + j];
                    out[i * n + j] += s;
                }
            return;
        }
        case InstanceKind::Germs: {
            for (int i = 0; i <= std::min(degA, degOut); ++i) {
                if (a[i] == Complex{}) continue;
                const int jmax = std::min(degB, degOut - i);
                for (int j = 0; j <= jmax; ++j) out[i + j] += a[i] * b[j];
            }
            return;
        }
        case InstanceKind::Kondratiev: {
            const MultiIndexTable& ta = spec.table(degA);
            const MultiIndexTable& tb = spec.table(degB);
            const MultiIndexTable& to = spec.table(degOut);
            const int vars = spec.vars();
            std::vector<int> sum(vars);
            for (int ra = 0; ra < ta.size(); ++ra) {
                if (a[ra] == Complex{}) continue;
                const auto& ga = ta.at(ra);
                const int da = MultiIndexTable::totalDegree(ga);
                if (da > degOut) break;  // graded order: all later ranks are larger
                for (int rb = 0; rb < tb.size(); ++rb) {
                    if (b[rb] == Complex{}) continue;
                    const auto& gb = tb.at(rb);
                    if (da + MultiIndexTable::totalDegree(gb) > degOut) continue;
                    for (int k = 0; k < vars; ++k) sum[k] = ga[k] + gb[k];
                    out[to.rank(sum)] += a[ra] * b[rb];
                }
            }
            return;
        }
    }
}

AlgebraElement AlgebraElement::zero(const InstanceSpec& spec) { return zero(spec, spec.degree()); }

AlgebraElement AlgebraElement::zero(const InstanceSpec& spec, int deg) {
    AlgebraElement e;
    e.spec_ = spec;
    e.deg_ = isSeries(spec.kind()) ? deg : 0;
    e.c_.assign(spec.coeffCount(e.deg_), Complex{});
    return e;
}

AlgebraElement AlgebraElement::unit(const InstanceSpec& spec) {
    AlgebraElement e = zero(spec);
    switch (spec.kind()) {
        case InstanceKind::Matrix:
            for (int i = 0; i < spec.dim(); ++i) e.c_[i * spec.dim() + i] = 1.0;
            break;
        case InstanceKind::Germs:
        case InstanceKind::Kondratiev:
            e.c_[0] = 1.0;  // constant term / vacuum multi-index has rank 0
            break;
    }
    return e;
}

AlgebraElement AlgebraElement::scalar(const InstanceSpec& spec, Complex z) {
    return unit(spec).scaled(z);
}

AlgebraElement AlgebraElement::fromCoefficients(const InstanceSpec& spec, int deg,
                                                std::vector<Complex> coeffs) {
    AlgebraElement e = zero(spec, deg);
    if (static_cast<int>(coeffs.size()) != e.coeffCount())
        throw precondition_error("fromCoefficients: expected " + std::to_string(e.coeffCount()) +
                                 " coefficients, got " + std::to_string(coeffs.size()));
    e.c_ = std::move(coeffs);
    return e;
}

double AlgebraElement::truncationNorm(const Rational& g) const {
    spec_.requireGrade(g);
    switch (spec_.kind()) {
        case InstanceKind::Matrix: {
            const int n = spec_.dim();
            if (n == 1) return std::abs(c_[0]);
            Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
                m(c_.data(), n, n);
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
            return svd.singularValues()(0);
        }
        case InstanceKind::Germs: {
            const double r = g.value();
            double s = 0.0;
            for (int i = 0; i <= deg_; ++i)
                if (c_[i] != Complex{}) s += std::abs(c_[i]) * std::pow(r, i);
            return s;
        }
        case InstanceKind::Kondratiev: {
            const MultiIndexTable& tab = spec_.table(deg_);
            const double p = g.value();
            double s = 0.0;
            for (int r = 0; r < tab.size(); ++r)
                if (c_[r] != Complex{}) s += std::norm(c_[r]) * kondratievWeight(tab.at(r), p);
            return std::sqrt(s);
        }
    }
    return 0.0;
}

double AlgebraElement::tailBound(const Rational& g) const {
    if (tail_.empty()) return 0.0;
    spec_.requireGrade(g);
    const auto it = tail_.find(g);
    if (it != tail_.end()) return it->second;
    // Norms are monotone along the ladder (weights <= 1 in the transport
    // direction), so a declared bound moves to any larger grade unchanged.
    double best = kInf;
    for (const auto& [g0, v] : tail_) {
        if (!std::isfinite(v)) continue;
        if (spec_.gradeLeq(g0, g)) best = std::min(best, v);
    }
    return best;
}

void AlgebraElement::setTailBound(const Rational& g, double v) {
    spec_.requireGrade(g);
    if (v < 0.0) throw precondition_error("tail bound must be nonnegative");
    tail_[g] = v;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    requireSameInstance(*this, o);
    if (o.deg_ > deg_) {
        // extend: both germs and Kondratiev layouts are prefix-compatible
        std::vector<Complex> ext(spec_.coeffCount(o.deg_), Complex{});
        std::copy(c_.begin(), c_.end(), ext.begin());
        c_ = std::move(ext);
        deg_ = o.deg_;
    }
    for (int i = 0; i < o.coeffCount(); ++i) c_[i] += o.c_[i];
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
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
    return *this += o.scaled(-1.0);
}

AlgebraElement AlgebraElement::scaled(Complex z) const {
    AlgebraElement e = *this;
    for (auto& v : e.c_) v *= z;
    for (auto& [g, v] : e.tail_) v *= std::abs(z);
    return e;
}

double AlgebraElement::massBeyond(int deg, const Rational& g) const {
    if (spec_.kind() == InstanceKind::Matrix || deg >= deg_) return 0.0;
    if (spec_.kind() == InstanceKind::Germs) {
        const double r = g.value();
        double s = 0.0;
        for (int i = deg + 1; i <= deg_; ++i)
            if (c_[i] != Complex{}) s += std::abs(c_[i]) * std::pow(r, i);
        return s;
    }
    const MultiIndexTable& tab = spec_.table(deg_);
    const double p = g.value();
    double s = 0.0;
    for (int r = spec_.coeffCount(deg); r < tab.size(); ++r)
        if (c_[r] != Complex{}) s += std::norm(c_[r]) * kondratievWeight(tab.at(r), p);
    return std::sqrt(s);
}

AlgebraElement AlgebraElement::product(const AlgebraElement& a, const AlgebraElement& b,
                                       int degOut, bool accrueTails) {
    requireSameInstance(a, b);
    const InstanceSpec& spec = a.spec_;
    const bool series = isSeries(spec.kind());
    const int degFull = series ? a.deg_ + b.deg_ : 0;

    AlgebraElement full = zero(spec, degFull);
    accumulateProduct(spec, a.c_.data(), a.deg_, b.c_.data(), b.deg_, full.c_.data(), degFull);

    AlgebraElement out = zero(spec, series ? std::min(degOut, degFull) : 0);
    std::copy(full.c_.begin(), full.c_.begin() + out.coeffCount(), out.c_.begin());

    if (!accrueTails) return out;

    const bool haveInputTails = !a.tail_.empty() || !b.tail_.empty();
    const bool discards = series && degOut < degFull;
    if (!haveInputTails && !discards) return out;

    std::vector<Rational> gradeSet = spec.grades();
    for (const auto& [g, v] : a.tail_) gradeSet.push_back(g);
    for (const auto& [g, v] : b.tail_) gradeSet.push_back(g);
    std::sort(gradeSet.begin(), gradeSet.end());
    gradeSet.erase(std::unique(gradeSet.begin(), gradeSet.end()), gradeSet.end());

    for (const auto& g : gradeSet) {
        double t = discards ? full.massBeyond(out.deg_, g) : 0.0;
        if (haveInputTails) {
            Rational p(0);
            double A = 0.0;
            if (!spec.ladderPairFor(g, p, A)) continue;  // no honest bound here
            const double ta = a.tailBound(p);
            const double tb = b.tailBound(g);
            if (!std::isfinite(ta) || !std::isfinite(tb)) continue;
            t += A * (ta * (b.truncationNorm(g) + tb) + a.truncationNorm(p) * tb);
        }
        if (t > 0.0 && std::isfinite(t)) out.tail_[g] = t;
    }
    return out;
}

AlgebraElement AlgebraElement::mulFull(const AlgebraElement& a, const AlgebraElement& b) {
    const int degFull =
        isSeries(a.spec_.kind()) ? a.deg_ + b.deg_ : 0;
    return product(a, b, degFull, true);
}

AlgebraElement AlgebraElement::mulTruncated(const AlgebraElement& a, const AlgebraElement& b,
                                            int deg) {
    return product(a, b, deg, true);
}

AlgebraElement AlgebraElement::mulQuotient(const AlgebraElement& a, const AlgebraElement& b,
                                           int deg) {
    return product(a, b, deg, false);
}

AlgebraElement AlgebraElement::truncatedTo(int deg) const {
    if (!isSeries(spec_.kind()) || deg >= deg_) return *this;
    AlgebraElement out = zero(spec_, deg);
    std::copy(c_.begin(), c_.begin() + out.coeffCount(), out.c_.begin());
    out.tail_ = tail_;
    for (const auto& g : spec_.grades()) {
        const double extra = massBeyond(deg, g);
        if (extra > 0.0) {
            const double prior = out.tailBound(g);
            out.tail_[g] = (std::isfinite(prior) ? prior : 0.0) + extra;
        }
    }
    return out;
}

double AlgebraElement::maxAbsCoeff() const {
    double m = 0.0;
    for (const auto& v : c_) m = std::max(m, std::abs(v));
    return m;
}

void AlgebraElement::requireSameInstance(const AlgebraElement& a, const AlgebraElement& b) {
    if (!(a.spec_ == b.spec_))
        throw instance_mismatch("elements belong to different instances (" +
                                kindName(a.spec_.kind()) + " vs " + kindName(b.spec_.kind()) +
                                ")");
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
    return AlgebraElement::mulTruncated(a, b, a.spec().degree());
}

double unitNorm(const InstanceSpec& spec, const Rational& g) {
    return AlgebraElement::unit(spec).norm(g);
}

}  // namespace gradedalg
