#pragma once

#include <string>

#include <json.hpp>

#include "gradedalg/certificate.hpp"
#include "gradedalg/factorization.hpp"
#include "gradedalg/validate.hpp"
#include "gradedalg/wiener.hpp"

namespace gradedalg {

using Json = nlohmann::json;

// Element files:
//   { "instance": "matrix" | "germs" | "kondratiev",
//     "params":   matrix {"n": 2} | germs {"degree": D, "grades": ["1","1/2"]}
//                 | kondratiev {"vars": K, "degree": D, "max_grade": P},
//     "coefficients": { key: [re, im], ... },
//     "tail_bounds": { grade: real, ... } }
// Coefficient keys: matrix "r,c"; germs "n"; kondratiev comma-joined
// exponents "g1,g2,...,gK". Wiener files add "type": "wiener",
// "half_width": N and nest per-index coefficient maps.
Json instanceToJson(const InstanceSpec& spec);
InstanceSpec instanceFromJson(const Json& j);

Json elementToJson(const AlgebraElement& e);
AlgebraElement elementFromJson(const Json& j);

Json wienerToJson(const WienerElement& w);
WienerElement wienerFromJson(const Json& j);

Json certificateToJson(const NormCertificate& c);
Json validationReportToJson(const ValidationReport& r);
Json scanReportToJson(const ScanReport& r);
Json factorizationResultToJson(const FactorizationResult& r);
Json membershipToJson(const MembershipReport& m);

std::string gradeKey(const Rational& g);

Json loadJsonFile(const std::string& path);
void writeJsonFile(const std::string& path, const Json& j);

// FNV-1a hash of a file's bytes, as a hex string; used for report
// reproducibility checks.
std::string fileHash(const std::string& path);

}  // namespace gradedalg
