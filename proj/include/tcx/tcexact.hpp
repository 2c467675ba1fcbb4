#pragma once

#include <array>
#include <complex>
#include <vector>

#include "tcx/core.hpp"
#include "tcx/manifolds.hpp"

namespace tcx {

// Closed-form solution of the TC totally symmetric two-excitation block.
// Index 0, 1, 2 correspond to 2+, 2-, 1+1-.
struct CubicSolution {
    double p2 = 0.0;
    double q3 = 0.0;
    std::complex<double> rho;
    std::array<double, 3> f{};
    std::array<double, 3> frequencies{};
    std::array<std::vector<double>, 3> eigenvectors;  // over (2_0, 1_0 1_A, 1_A^2)
    std::array<bool, 3> numeric_fallback{};

    static constexpr std::array<StateLabel, 3> labels{StateLabel::TwoPlus, StateLabel::TwoMinus,
                                                      StateLabel::OnePlusOneMinus};
};

// Requires the TC model, N >= 2 and g > 0.
CubicSolution tc_exact(const SystemParams& p);

}  // namespace tcx
