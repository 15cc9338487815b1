#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "gradedalg/errors.hpp"

namespace gradedalg {

// Enumeration of multi-indices gamma in N^K with total degree <= D, in
// graded-lexicographic order (by total degree, then lexicographic). This
// fixes a deterministic serialization order for Kondratiev coefficients.
class MultiIndexTable {
public:
    MultiIndexTable(int vars, int degree) : vars_(vars), degree_(degree) {
        if (vars < 1 || vars > 8)
            throw precondition_error("MultiIndexTable: vars must be in [1,8]");
        if (degree < 0 || degree > 255)
            throw precondition_error("MultiIndexTable: degree must be in [0,255]");
        std::vector<int> gamma(vars, 0);
        for (int total = 0; total <= degree; ++total)
            emit(gamma, 0, total);
        for (std::size_t i = 0; i < indices_.size(); ++i)
            rank_.emplace(pack(indices_[i]), static_cast<int>(i));
    }

    int vars() const { return vars_; }
    int degree() const { return degree_; }
    int size() const { return static_cast<int>(indices_.size()); }

    const std::vector<int>& at(int rank) const { return indices_[rank]; }

    // Rank of gamma, or -1 when gamma lies outside the table.
    int rank(const std::vector<int>& gamma) const {
        const auto it = rank_.find(pack(gamma));
        return it == rank_.end() ? -1 : it->second;
    }

    static int totalDegree(const std::vector<int>& gamma) {
        int s = 0;
        for (int g : gamma) s += g;
        return s;
    }

private:
    void emit(std::vector<int>& gamma, int pos, int remaining) {
        if (pos == vars_ - 1) {
            gamma[pos] = remaining;
            indices_.push_back(gamma);
            return;
        }
        // Lexicographic: larger leading exponent first.
        for (int g = remaining; g >= 0; --g) {
            gamma[pos] = g;
            emit(gamma, pos + 1, remaining - g);
        }
        gamma[pos] = 0;
    }

    static std::uint64_t pack(const std::vector<int>& gamma) {
        std::uint64_t key = 0;
        for (std::size_t k = 0; k < gamma.size(); ++k)
            key |= static_cast<std::uint64_t>(gamma[k] & 0xff) << (8 * k);
        return key;
    }

    int vars_;
    int degree_;
    std::vector<std::vector<int>> indices_;
    std::unordered_map<std::uint64_t, int> rank_;
};

}  // namespace gradedalg
