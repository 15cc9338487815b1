#pragma once

#include <cstdint>
#include <random>

#include "gradedalg/element.hpp"

namespace gradedalg {

// Deterministic sampling. mt19937_64 output is pinned by the standard; the
// [0,1) mapping below avoids the implementation-defined distributions so
// identical seeds give identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    int uniformInt(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Complex unitDisk() {
        for (;;) {
            const double x = uniform(-1.0, 1.0);
            const double y = uniform(-1.0, 1.0);
            if (x * x + y * y <= 1.0) return {x, y};
        }
    }

private:
    std::mt19937_64 gen_;
};

// Coefficients i.i.d. complex uniform on the unit disk.
AlgebraElement randomElement(const InstanceSpec& spec, Rng& rng, int deg = -1);

// Random element rescaled to the given norm at grade g.
AlgebraElement randomElementWithNorm(const InstanceSpec& spec, Rng& rng, const Rational& g,
                                     double targetNorm, int deg = -1);

}  // namespace gradedalg
