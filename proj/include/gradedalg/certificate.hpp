#pragma once

#include <map>
#include <string>

#include "gradedalg/rational.hpp"

namespace gradedalg {

// Which bound produced a certificate. Closed enumeration; the tags are part
// of the serialized report format.
enum class CertificateFormula { PowerSeries, NeumannInverse, LeftInversePerturbation, OperatorNeumann };

std::string formulaTag(CertificateFormula f);
CertificateFormula formulaFromTag(const std::string& tag);

// A grade together with a proven upper bound on some norm at that grade.
// `constants` records the ingredients the formula was evaluated with.
struct NormCertificate {
    Rational grade{0};
    double bound = 0.0;
    CertificateFormula formula = CertificateFormula::NeumannInverse;
    Rational alpha{0};
    Rational beta{0};
    std::map<std::string, double> constants;
};

}  // namespace gradedalg
