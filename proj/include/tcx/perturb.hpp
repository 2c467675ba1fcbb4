#pragma once

#include <vector>

#include "tcx/core.hpp"
#include "tcx/manifolds.hpp"

namespace tcx {

enum class PtBranch { Auto, Resonant, NonResonant };

struct PtCorrection {
    StateLabel label = StateLabel::Unknown;
    Irrep irrep = Irrep::A;
    double order0 = 0.0;  // harmonic frequency
    double shift = 0.0;   // first-order shift
    // over canonical_basis(2, irrep); empty from pt_frequencies
    std::vector<double> order0_vector;
    std::vector<double> order1_vector;
    bool resonant = false;

    double frequency() const { return order0 + shift; }
};

// First-order frequency rows present at this N (2DA needs N >= 2, B rows N >= 2, 2DB N >= 3, 1C2 N >= 4).
// Accepts Harmonic and Anharmonic models.
std::vector<PtCorrection> pt_frequencies(const SystemParams& p, PtBranch branch = PtBranch::Auto);
std::vector<PtCorrection> pt_vectors(const SystemParams& p, PtBranch branch = PtBranch::Auto);

const PtCorrection* find_correction(const std::vector<PtCorrection>& v, StateLabel s);

// order0 + order1, renormalized.
std::vector<double> perturbed_vector(const PtCorrection& c);

// |detuning| < 1e-10 rabi
bool is_resonant(const DerivedQuantities& d);

}  // namespace tcx
