#include "gradedalg/random.hpp"

namespace gradedalg {

AlgebraElement randomElement(const InstanceSpec& spec, Rng& rng, int deg) {
    if (deg < 0) deg = spec.degree();
    AlgebraElement e = AlgebraElement::zero(spec, deg);
    for (int i = 0; i < e.coeffCount(); ++i) e.coeffRef(i) = rng.unitDisk();
    return e;
}

AlgebraElement randomElementWithNorm(const InstanceSpec& spec, Rng& rng, const Rational& g,
                                     double targetNorm, int deg) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        AlgebraElement e = randomElement(spec, rng, deg);
        const double n = e.norm(g);
        if (n > 1e-12) return e.scaled(targetNorm / n);
    }
    throw numerical_error("randomElementWithNorm: degenerate draws");
}

}  // namespace gradedalg
