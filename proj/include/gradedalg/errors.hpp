#pragma once

#include <stdexcept>
#include <string>

namespace gradedalg {

// Precondition-level failures: bad grades, instance mismatches, parameter
// domains. CLI maps these to exit code 2.
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The grade pair does not satisfy beta >= h(alpha), or a grade is invalid
// for the instance.
class ladder_error : public precondition_error {
public:
    using precondition_error::precondition_error;
};

class instance_mismatch : public precondition_error {
public:
    using precondition_error::precondition_error;
};

// A Neumann-type contraction condition failed; carries the offending product.
class contraction_error : public precondition_error {
public:
    contraction_error(const std::string& what, double offending)
        : precondition_error(what), offendingProduct(offending) {}
    double offendingProduct;
};

// Numerical failure after exhausting budgets (residual above tolerance,
// iteration caps, failed searches). CLI maps these to exit code 3.
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class budget_exhausted : public numerical_error {
public:
    using numerical_error::numerical_error;
};

}  // namespace gradedalg
