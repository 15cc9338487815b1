#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gradedalg/errors.hpp"
#include "gradedalg/multi_index.hpp"
#include "gradedalg/rational.hpp"

namespace gradedalg {

enum class InstanceKind { Matrix, Germs, Kondratiev };

std::string kindName(InstanceKind k);
InstanceKind kindFromName(const std::string& name);

// Shared, immutable multi-index table; cached per (vars, degree).
const MultiIndexTable& multiIndexTable(int vars, int degree);

struct VageValue {
    double truncated;  // sum restricted to the (vars, degree) window
    double limit;      // closed-form infinite-product value
};

// Truncated and closed-form values of ( sum_gamma (2N)^{-m gamma} )^{1/2}
// with m = q - p. Diverges for m < 2; throws ladder_error there.
VageValue vageConstant(const Rational& p, const Rational& q, int vars, int degree);

// One concrete graded instance: the coefficient representation, the grade
// set, and the ladder data (h, A_{beta,alpha}).
//
//   Matrix      n x n complex matrices, operator norm, singleton grade {0},
//               h = id, A = 1.
//   Germs       power series truncated at `degree`; grade r > 0 with
//               ||f||_r = sum |f_n| r^n; order alpha <= beta iff
//               r_alpha >= r_beta; h(r) = r, A = 1.
//   Kondratiev  coefficients over multi-indices (vars, degree); grade p >= 0
//               integer, ||a||_p^2 = sum |a_gamma|^2 (2N)^{-p gamma};
//               h(p) = p + 2, A_{q,p} = Vage constant.
class InstanceSpec {
public:
    static InstanceSpec matrix(int n);
    static InstanceSpec germs(int degree, std::vector<Rational> radii = defaultRadii());
    static InstanceSpec kondratiev(int vars, int degree, int maxGrade = 6);

    InstanceKind kind() const { return kind_; }
    int dim() const { return dim_; }
    int degree() const { return degree_; }
    int vars() const { return vars_; }

    // Declared ladder positions, ascending in the grade order. Used for
    // sampling, reporting and grade search; validGrade() accepts more.
    const std::vector<Rational>& grades() const { return grades_; }

    bool validGrade(const Rational& g) const;
    void requireGrade(const Rational& g) const;

    // Directed order on grades: alpha <= beta iff X_alpha is contained in
    // X_beta. For germs this reverses the radius order.
    bool gradeLeq(const Rational& alpha, const Rational& beta) const;

    // h(alpha): the first grade whose spaces absorb X_alpha.
    Rational ladderH(const Rational& alpha) const;

    // A_{beta,alpha}; requires beta >= h(alpha).
    double ladderConstant(const Rational& beta, const Rational& alpha) const;

    // Largest declared alpha with h(alpha) <= beta, together with
    // A_{beta,alpha}. Used when transporting tail bounds through products.
    bool ladderPairFor(const Rational& beta, Rational& alphaOut, double& constantOut) const;

    // Dimension of the truncated coefficient space at truncation `deg`
    // (ignored by the matrix instance).
    int coeffCount(int deg) const;
    int coeffCount() const { return coeffCount(degree_); }

    const MultiIndexTable& table(int deg) const;

    bool operator==(const InstanceSpec& o) const {
        return kind_ == o.kind_ && dim_ == o.dim_ && degree_ == o.degree_ &&
               vars_ == o.vars_ && grades_ == o.grades_;
    }

    static std::vector<Rational> defaultRadii() {
        return {Rational(1), Rational(1, 2), Rational(1, 4)};
    }

private:
    InstanceKind kind_ = InstanceKind::Matrix;
    int dim_ = 1;     // matrix: n
    int degree_ = 0;  // germs/kondratiev: D
    int vars_ = 0;    // kondratiev: K
    std::vector<Rational> grades_;
};

}  // namespace gradedalg
