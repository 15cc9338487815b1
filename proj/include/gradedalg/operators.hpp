#pragma once

#include <vector>

#include "gradedalg/certificate.hpp"
#include "gradedalg/element.hpp"

namespace gradedalg {

// A linear self-map of the truncated coefficient space of one instance,
// stored densely. Level-to-level norms ||T||^alpha_beta are computed against
// the instance's weighted coefficient norms:
//   germs       weighted l1; exact column formula
//   kondratiev  weighted l2; power iteration to 1e-8
//   matrix      Frobenius structure on the entry space (power iteration);
//               coincides with the operator structure for n = 1
class AdmissibleOperator {
public:
    static AdmissibleOperator zero(const InstanceSpec& spec, int deg = -1);
    static AdmissibleOperator identity(const InstanceSpec& spec, int deg = -1);
    static AdmissibleOperator scaling(const InstanceSpec& spec, Complex lambda, int deg = -1);
    static AdmissibleOperator dense(const InstanceSpec& spec, std::vector<Complex> rowMajor,
                                    int deg = -1);

    const InstanceSpec& spec() const { return spec_; }
    int truncationDegree() const { return deg_; }
    int dim() const { return dim_; }

    Complex entry(int i, int j) const { return m_[static_cast<std::size_t>(i) * dim_ + j]; }
    Complex& entryRef(int i, int j) { return m_[static_cast<std::size_t>(i) * dim_ + j]; }

    AlgebraElement apply(const AlgebraElement& x) const;

    // this o other
    AdmissibleOperator compose(const AdmissibleOperator& other) const;
    AdmissibleOperator plus(const AdmissibleOperator& other) const;
    AdmissibleOperator scaledBy(Complex z) const;

    double maxAbsEntry() const;

private:
    AdmissibleOperator(InstanceSpec spec, int deg);

    InstanceSpec spec_;
    int deg_ = 0;
    int dim_ = 0;
    std::vector<Complex> m_;  // row major, dim_ x dim_
};

// ||T||^alpha_beta on the truncated coefficient space. Power-iteration
// tolerance 1e-8 where iteration is used.
double operatorNorm(const AdmissibleOperator& T, const Rational& alpha, const Rational& beta);

struct OperatorNeumannResult {
    AdmissibleOperator inverse;
    NormCertificate normBound;  // ||S||^alpha_alpha <= 1/(1 - ||T||)
    double residual = 0.0;      // ||(I-T)S - I||^alpha_alpha
    int terms = 0;
};

// S = (I - T)^{-1} as a Neumann sum, requiring ||T||^alpha_alpha < 1.
OperatorNeumannResult operatorNeumann(const AdmissibleOperator& T, const Rational& alpha,
                                      double tol, int maxTerms = 100000);

}  // namespace gradedalg
