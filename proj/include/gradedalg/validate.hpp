#pragma once

#include <cstdint>

#include "gradedalg/element.hpp"

namespace gradedalg {

struct ValidationReport {
    InstanceKind kind;
    Rational alpha{0};
    Rational beta{0};
    double constant = 0.0;   // A_{beta,alpha}
    int samples = 0;
    std::uint64_t seed = 0;
    double worstRatio = 0.0;
    int worstSample = -1;
    double slack = 1e-10;
    bool pass = false;
};

// Randomized check of ||ab||_beta <= A_{beta,alpha} ||a||_alpha ||b||_beta
// (both product orders). Draws are deterministic in the seed; products are
// computed exactly (degrees add), so the ratio reflects the true truncated
// representations.
ValidationReport validateStrongInequality(const InstanceSpec& spec, const Rational& alpha,
                                          const Rational& beta, int samples, std::uint64_t seed);

}  // namespace gradedalg
