#pragma once

#include <utility>
#include <vector>

#include "gradedalg/localization.hpp"

namespace gradedalg {

// One local left inverse in original circle coordinates: b' inverts the
// symbol on (t0 - eps, t0 + eps).
struct LocalPatch {
    double t0 = 0.0;
    double eps = 0.0;
    WienerElement leftInverse;
};

class cover_error : public precondition_error {
public:
    cover_error(const std::string& what, std::vector<std::pair<double, double>> arcs)
        : precondition_error(what), uncoveredArcs(std::move(arcs)) {}
    std::vector<std::pair<double, double>> uncoveredArcs;
};

struct PatchOptions {
    Rational grade{0};       // working grade of the residual checks
    bool gradeSet = false;   // defaulted to the instance's first grade otherwise
    double tol = 1e-6;       // windowed residual target for ||a'a - 1||
    int outputHalfWidth = 256;
    int residualWindow = 192;
    double pointwiseTol = 1e-5;  // per-patch check of b'_i(t) a(t) = 1 on its interval
    int grid = 2048;             // grid for pointwise checks / ragged normalization
    int raggedCoefficientWindow = 1024;
};

struct PatchReport {
    bool uniformTiling = false;
    double partitionError = 0.0;     // max | sum phi_i(t) - 1 | over the grid
    double windowResidual = 0.0;     // sum_{|n|<=window} ||(a'a - 1)_n|| at the grade
    int window = 0;
    double pointwiseResidual = 0.0;  // max_t ||a'(t)a(t) - 1|| over the grid
    double patchCheckWorst = 0.0;    // worst per-patch pointwise residual on its interval
    double truncationBudget = 0.0;   // recorded out-of-window kernel mass
};

// Glue local left inverses into a global one with a subordinate partition of
// unity built from trapezoid bumps. Uniformly spaced centers use the exact
// tiling (equal trapezoids at spacing 3s sum to one identically); ragged
// covers fall back to grid normalization with a recorded partition error.
std::pair<WienerElement, PatchReport> patchGlobalInverse(const WienerElement& a,
                                                         const std::vector<LocalPatch>& locals,
                                                         const PatchOptions& opts = {});

struct WienerInvertOptions {
    LocalizationOptions localization;
    PatchOptions patch;
    double tol = 1e-6;          // final windowed residual target
    double localTol = 1e-9;     // local-inverse residual target
    LocalInverseOptions local;  // iterate caps for the local series
    int scanGrid = -1;          // defaults to a power of two >= 4(2N+1)
    int initialCenters = 8;
    int maxRefinements = 6;
};

struct WienerInvertResult {
    WienerElement inverse;
    ScanReport scan;
    std::vector<LocalizationCertificate> certificates;
    PatchReport patch;
    int centers = 0;
};

// Full constructive pipeline: pointwise invertibility scan, localization at
// uniformly refined centers, local Neumann inverses, and patching.
WienerInvertResult wienerLeftInverse(const WienerElement& a,
                                     const WienerInvertOptions& opts = {});

}  // namespace gradedalg
