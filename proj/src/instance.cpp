#include "gradedalg/instance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace gradedalg {

std::string kindName(InstanceKind k) {
    switch (k) {
        case InstanceKind::Matrix: return "matrix";
        case InstanceKind::Germs: return "germs";
        case InstanceKind::Kondratiev: return "kondratiev";
    }
    return "?";
}

InstanceKind kindFromName(const std::string& name) {
    if (name == "matrix") return InstanceKind::Matrix;
    if (name == "germs") return InstanceKind::Germs;
    if (name == "kondratiev") return InstanceKind::Kondratiev;
    throw precondition_error("unknown instance kind '" + name + "'");
}

const MultiIndexTable& multiIndexTable(int vars, int degree) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<MultiIndexTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{vars, degree}];
    if (!slot) slot = std::make_unique<MultiIndexTable>(vars, degree);
    return *slot;
}

VageValue vageConstant(const Rational& p, const Rational& q, int vars, int degree) {
    const Rational diff = q - p;
    if (diff < Rational(2))
        throw ladder_error("vage constant diverges: q - p = " + diff.str() + " < 2");
    const double m = diff.value();

    const MultiIndexTable& tab = multiIndexTable(vars, degree);
    double truncated = 0.0;
    for (int r = 0; r < tab.size(); ++r) {
        const auto& gamma = tab.at(r);
        double w = 1.0;
        for (std::size_t k = 0; k < gamma.size(); ++k)
            if (gamma[k] > 0) w *= std::pow(2.0 * (static_cast<double>(k) + 1.0), -m * gamma[k]);
        truncated += w;
    }

    // Full sum factorizes as prod_k (1 - (2k)^-m)^-1; run the partial
    // product until the logarithmic tail estimate is negligible.
    double logProd = 0.0;
    for (int k = 1; k <= 100000000; ++k) {
        const double x = std::pow(2.0 * k, -m);
        logProd -= std::log1p(-x);
        // sum_{j>k} (2j)^-m <= integral bound (2k)^-m * k/(m-1)
        const double tail = std::pow(2.0 * k, -m) * k / (m - 1.0);
        if (tail < 1e-15 && k > 8) break;
    }
    return VageValue{std::sqrt(truncated), std::exp(0.5 * logProd)};
}

InstanceSpec InstanceSpec::matrix(int n) {
    if (n < 1) throw precondition_error("matrix instance: n must be >= 1");
    InstanceSpec s;
    s.kind_ = InstanceKind::Matrix;
    s.dim_ = n;
    s.grades_ = {Rational(0)};
    return s;
}

InstanceSpec InstanceSpec::germs(int degree, std::vector<Rational> radii) {
    if (degree < 0) throw precondition_error("germs instance: degree must be >= 0");
    InstanceSpec s;
    s.kind_ = InstanceKind::Germs;
    s.degree_ = degree;
    if (radii.empty()) throw precondition_error("germs instance: empty grade list");
    for (const auto& r : radii)
        if (!(Rational(0) < r)) throw precondition_error("germs instance: radii must be positive");
    // ascending grade order = descending radius
    std::sort(radii.begin(), radii.end(), [](const Rational& a, const Rational& b) { return b < a; });
    s.grades_ = std::move(radii);
    return s;
}

InstanceSpec InstanceSpec::kondratiev(int vars, int degree, int maxGrade) {
    InstanceSpec s;
    s.kind_ = InstanceKind::Kondratiev;
    s.vars_ = vars;
    s.degree_ = degree;
    if (maxGrade < 2) throw precondition_error("kondratiev instance: maxGrade must be >= 2");
    for (int p = 0; p <= maxGrade; ++p) s.grades_.push_back(Rational(p));
    multiIndexTable(vars, degree);  // validate parameters eagerly
    return s;
}

bool InstanceSpec::validGrade(const Rational& g) const {
    switch (kind_) {
        case InstanceKind::Matrix: return g == Rational(0);
        case InstanceKind::Germs: return Rational(0) < g;
        case InstanceKind::Kondratiev: return g.isInteger() && !(g < Rational(0));
    }
    return false;
}

void InstanceSpec::requireGrade(const Rational& g) const {
    if (!validGrade(g))
        throw ladder_error("grade " + g.str() + " is not valid for the " + kindName(kind_) +
                           " instance");
}

bool InstanceSpec::gradeLeq(const Rational& alpha, const Rational& beta) const {
    requireGrade(alpha);
    requireGrade(beta);
    if (kind_ == InstanceKind::Germs) return beta <= alpha;  // smaller radius = larger space
    return alpha <= beta;
}

Rational InstanceSpec::ladderH(const Rational& alpha) const {
    requireGrade(alpha);
    if (kind_ == InstanceKind::Kondratiev) return alpha + Rational(2);
    return alpha;
}

double InstanceSpec::ladderConstant(const Rational& beta, const Rational& alpha) const {
    if (!gradeLeq(ladderH(alpha), beta))
        throw ladder_error("A_{beta,alpha} undefined: beta = " + beta.str() + " < h(" +
                           alpha.str() + ") = " + ladderH(alpha).str());
    if (kind_ == InstanceKind::Kondratiev)
        return vageConstant(alpha, beta, vars_, degree_).limit;
    return 1.0;
}

bool InstanceSpec::ladderPairFor(const Rational& beta, Rational& alphaOut,
                                 double& constantOut) const {
    if (!validGrade(beta)) return false;
    if (kind_ == InstanceKind::Kondratiev) {
        const Rational p = beta - Rational(2);
        if (p < Rational(0)) return false;
        alphaOut = p;
        constantOut = ladderConstant(beta, p);
        return true;
    }
    alphaOut = beta;  // germs and matrix levels are Banach algebras themselves
    constantOut = 1.0;
    return true;
}

int InstanceSpec::coeffCount(int deg) const {
    switch (kind_) {
        case InstanceKind::Matrix: return dim_ * dim_;
        case InstanceKind::Germs: return deg + 1;
        case InstanceKind::Kondratiev: return table(deg).size();
    }
    return 0;
}

const MultiIndexTable& InstanceSpec::table(int deg) const {
    if (kind_ != InstanceKind::Kondratiev)
        throw precondition_error("multi-index table only exists for the Kondratiev instance");
    return multiIndexTable(vars_, deg);
}

}  // namespace gradedalg
