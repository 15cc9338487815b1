#include "gradedalg/operators.hpp"

#include <algorithm>
#include <cmath>

namespace gradedalg {

namespace {

// Weights w(i) such that the instance coefficient norm at grade g is
// sum_i |x_i| w(i) (germs) or sqrt(sum_i |x_i|^2 w(i)) (kondratiev).
std::vector<double> coefficientWeights(const InstanceSpec& spec, int deg, const Rational& g) {
    spec.requireGrade(g);
    std::vector<double> w(spec.coeffCount(deg), 1.0);
    switch (spec.kind()) {
        case InstanceKind::Matrix:
            break;
        case InstanceKind::Germs: {
            const double r = g.value();
            for (int i = 0; i <= deg; ++i) w[i] = std::pow(r, i);
            break;
        }
        case InstanceKind::Kondratiev: {
            const MultiIndexTable& tab = spec.table(deg);
            const double p = g.value();
            for (int i = 0; i < tab.size(); ++i) {
                double v = 1.0;
                const auto& gamma = tab.at(i);
                for (std::size_t k = 0; k < gamma.size(); ++k)
                    if (gamma[k] > 0)
                        v *= std::pow(2.0 * (static_cast<double>(k) + 1.0), -p * gamma[k]);
                w[i] = v;
            }
            break;
        }
    }
    return w;
}

// Largest singular value by power iteration on M^H M, deterministic start.
double largestSingularValue(const std::vector<Complex>& m, int dim, double tol) {
    std::vector<Complex> v(dim, Complex{1.0 / std::sqrt(static_cast<double>(dim)), 0.0});
    std::vector<Complex> mv(dim), w(dim);
    double prev = 0.0;
    for (int it = 0; it < 20000; ++it) {
        for (int i = 0; i < dim; ++i) {
            Complex s{};
            for (int j = 0; j < dim; ++j) s += m[static_cast<std::size_t>(i) * dim + j] * v[j];
            mv[i] = s;
        }
        for (int j = 0; j < dim; ++j) {
            Complex s{};
            for (int i = 0; i < dim; ++i)
                s += std::conj(m[static_cast<std::size_t>(i) * dim + j]) * mv[i];
            w[j] = s;
        }
        double nw = 0.0;
        for (const auto& x : w) nw += std::norm(x);
        nw = std::sqrt(nw);
        if (nw == 0.0) return 0.0;
        const double sigma = std::sqrt(nw);
        for (int j = 0; j < dim; ++j) v[j] = w[j] / nw;
        if (it > 2 && std::abs(sigma - prev) <= tol * std::max(1.0, sigma)) return sigma;
        prev = sigma;
    }
    return prev;
}

}  // namespace

AdmissibleOperator::AdmissibleOperator(InstanceSpec spec, int deg) : spec_(std::move(spec)) {
    deg_ = deg < 0 ? spec_.degree() : deg;
    dim_ = spec_.coeffCount(deg_);
    m_.assign(static_cast<std::size_t>(dim_) * dim_, Complex{});
}

AdmissibleOperator AdmissibleOperator::zero(const InstanceSpec& spec, int deg) {
    return AdmissibleOperator(spec, deg);
}

AdmissibleOperator AdmissibleOperator::identity(const InstanceSpec& spec, int deg) {
    return scaling(spec, Complex{1.0, 0.0}, deg);
}

AdmissibleOperator AdmissibleOperator::scaling(const InstanceSpec& spec, Complex lambda, int deg) {
    AdmissibleOperator T(spec, deg);
    for (int i = 0; i < T.dim_; ++i) T.entryRef(i, i) = lambda;
    return T;
}

AdmissibleOperator AdmissibleOperator::dense(const InstanceSpec& spec,
                                             std::vector<Complex> rowMajor, int deg) {
    AdmissibleOperator T(spec, deg);
    if (rowMajor.size() != T.m_.size())
        throw precondition_error("AdmissibleOperator::dense: expected " +
                                 std::to_string(T.m_.size()) + " entries");
    T.m_ = std::move(rowMajor);
    return T;
}

AlgebraElement AdmissibleOperator::apply(const AlgebraElement& x) const {
    if (!(x.spec() == spec_) || x.coeffCount() != dim_)
        throw instance_mismatch("AdmissibleOperator::apply: element does not match the operator");
    AlgebraElement y = AlgebraElement::zero(spec_, deg_);
    for (int i = 0; i < dim_; ++i) {
        Complex s{};
        for (int j = 0; j < dim_; ++j) s += entry(i, j) * x.coeff(j);
        y.coeffRef(i) = s;
    }
    return y;
}

AdmissibleOperator AdmissibleOperator::compose(const AdmissibleOperator& other) const {
    if (!(spec_ == other.spec_) || dim_ != other.dim_)
        throw instance_mismatch("AdmissibleOperator::compose: mismatched operators");
    AdmissibleOperator out(spec_, deg_);
    for (int i = 0; i < dim_; ++i)
        for (int k = 0; k < dim_; ++k) {
            const Complex aik = entry(i, k);
            if (aik == Complex{}) continue;
            for (int j = 0; j < dim_; ++j) out.entryRef(i, j) += aik * other.entry(k, j);
        }
    return out;
}

AdmissibleOperator AdmissibleOperator::plus(const AdmissibleOperator& other) const {
    if (!(spec_ == other.spec_) || dim_ != other.dim_)
        throw instance_mismatch("AdmissibleOperator::plus: mismatched operators");
    AdmissibleOperator out = *this;
    for (std::size_t i = 0; i < m_.size(); ++i) out.m_[i] += other.m_[i];
    return out;
}

AdmissibleOperator AdmissibleOperator::scaledBy(Complex z) const {
    AdmissibleOperator out = *this;
    for (auto& v : out.m_) v *= z;
    return out;
}

double AdmissibleOperator::maxAbsEntry() const {
    double m = 0.0;
    for (const auto& v : m_) m = std::max(m, std::abs(v));
    return m;
}

double operatorNorm(const AdmissibleOperator& T, const Rational& alpha, const Rational& beta) {
    const InstanceSpec& spec = T.spec();
    const int dim = T.dim();
    const std::vector<double> wIn = coefficientWeights(spec, T.truncationDegree(), alpha);
    const std::vector<double> wOut = coefficientWeights(spec, T.truncationDegree(), beta);

    if (spec.kind() == InstanceKind::Germs) {
        // l1 -> l1 weighted operator norm: max over columns
        double best = 0.0;
        for (int j = 0; j < dim; ++j) {
            double col = 0.0;
            for (int i = 0; i < dim; ++i) col += std::abs(T.entry(i, j)) * wOut[i];
            best = std::max(best, col / wIn[j]);
        }
        return best;
    }

    // l2-type structure: largest singular value of D_out^{1/2} T D_in^{-1/2}
    std::vector<Complex> scaled(static_cast<std::size_t>(dim) * dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            scaled[static_cast<std::size_t>(i) * dim + j] =
                T.entry(i, j) * std::sqrt(wOut[i]) / std::sqrt(wIn[j]);
    return largestSingularValue(scaled, dim, 1e-8);
}

OperatorNeumannResult operatorNeumann(const AdmissibleOperator& T, const Rational& alpha,
                                      double tol, int maxTerms) {
    const double kappa = operatorNorm(T, alpha, alpha);
    if (!(kappa < 1.0))
        throw contraction_error("operatorNeumann: ||T||^alpha_alpha = " + std::to_string(kappa) +
                                    " is not below 1",
                                kappa);
    AdmissibleOperator sum = AdmissibleOperator::identity(T.spec(), T.truncationDegree());
    AdmissibleOperator power = sum;
    int n = 0;
    while (kappa > 0.0 && std::pow(kappa, n + 1) / (1.0 - kappa) >= tol) {
        if (++n > maxTerms) throw budget_exhausted("operatorNeumann: term budget exhausted");
        power = power.compose(T);
        sum = sum.plus(power);
    }

    OperatorNeumannResult out{sum, {}, 0.0, n + 1};
    const AdmissibleOperator residualOp =
        AdmissibleOperator::identity(T.spec(), T.truncationDegree())
            .plus(T.scaledBy(-1.0))
            .compose(sum)
            .plus(AdmissibleOperator::identity(T.spec(), T.truncationDegree()).scaledBy(-1.0));
    out.residual = operatorNorm(residualOp, alpha, alpha);
    if (out.residual > tol)
        throw numerical_error("operatorNeumann: residual above tolerance after certified stop");

    out.normBound.grade = alpha;
    out.normBound.bound = 1.0 / (1.0 - kappa);
    out.normBound.formula = CertificateFormula::OperatorNeumann;
    out.normBound.alpha = alpha;
    out.normBound.beta = alpha;
    out.normBound.constants = {{"operator_norm", kappa}};
    return out;
}

}  // namespace gradedalg
