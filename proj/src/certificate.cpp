#include "gradedalg/certificate.hpp"

#include "gradedalg/errors.hpp"

namespace gradedalg {

std::string formulaTag(CertificateFormula f) {
    switch (f) {
        case CertificateFormula::PowerSeries: return "prop-power";
        case CertificateFormula::NeumannInverse: return "prop-invert";
        case CertificateFormula::LeftInversePerturbation: return "prop-left-invert";
        case CertificateFormula::OperatorNeumann: return "prop-invso";
    }
    return "?";
}

CertificateFormula formulaFromTag(const std::string& tag) {
    if (tag == "prop-power") return CertificateFormula::PowerSeries;
    if (tag == "prop-invert") return CertificateFormula::NeumannInverse;
    if (tag == "prop-left-invert") return CertificateFormula::LeftInversePerturbation;
    if (tag == "prop-invso") return CertificateFormula::OperatorNeumann;
    throw precondition_error("unknown certificate formula tag '" + tag + "'");
}

}  // namespace gradedalg
