#include "gradedalg/validate.hpp"

#include <algorithm>

#include "gradedalg/random.hpp"

namespace gradedalg {

ValidationReport validateStrongInequality(const InstanceSpec& spec, const Rational& alpha,
                                          const Rational& beta, int samples, std::uint64_t seed) {
    if (!spec.gradeLeq(spec.ladderH(alpha), beta))
        throw ladder_error("validateStrongInequality: beta = " + beta.str() + " < h(alpha) = " +
                           spec.ladderH(alpha).str() + ", inequality not claimed there");
    if (samples < 1) throw precondition_error("validateStrongInequality: samples must be >= 1");

    ValidationReport rep;
    rep.kind = spec.kind();
    rep.alpha = alpha;
    rep.beta = beta;
    rep.constant = spec.ladderConstant(beta, alpha);
    rep.samples = samples;
    rep.seed = seed;

    Rng rng(seed);
    for (int s = 0; s < samples; ++s) {
        const AlgebraElement a = randomElementWithNorm(spec, rng, alpha, 1.0);
        const AlgebraElement b = randomElementWithNorm(spec, rng, beta, 1.0);
        const AlgebraElement ab = AlgebraElement::mulFull(a, b);
        const AlgebraElement ba = AlgebraElement::mulFull(b, a);
        const double denom = a.norm(alpha) * b.norm(beta);
        const double ratio = std::max(ab.norm(beta), ba.norm(beta)) / denom;
        if (ratio > rep.worstRatio) {
            rep.worstRatio = ratio;
            rep.worstSample = s;
        }
    }
    rep.pass = rep.worstRatio <= rep.constant * (1.0 + rep.slack);
    return rep;
}

}  // namespace gradedalg
