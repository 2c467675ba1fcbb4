#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcx/core.hpp"
#include "tcx/linalg.hpp"

namespace tcx {

enum class Irrep { A, B, C };
std::string irrep_name(Irrep r);

// Symmetrized basis members of manifolds 1 and 2.
enum class BasisState {
    Photon1,        // 1_0
    SingleA,        // 1_A
    SingleB,        // 1_B
    Photon2,        // 2_0
    PhotonSingleA,  // 1_0 1_A
    PairA,          // 1_A^2
    DoubleA,        // 2_A
    PhotonSingleB,  // 1_0 1_B
    PairB,          // 1_B^2
    DoubleB,        // 2_B
    PairC           // 1_C^2
};
std::string basis_label(BasisState b);
int photon_number(BasisState b);

// Full-length ordering per (manifold, irrep) before any row is dropped.
std::vector<BasisState> canonical_basis(int manifold, Irrep irrep);

enum class StateLabel {
    OnePlus, OneMinus, OneB,
    TwoPlus, TwoMinus, OnePlusOneMinus, TwoDA,
    OnePlusOneB, OneMinusOneB, TwoDB,
    PairC,
    Unknown
};
std::string state_label_name(StateLabel s);
std::optional<StateLabel> parse_state_label(const std::string& s);
Irrep irrep_of(StateLabel s);

struct Block {
    int manifold = 2;
    Irrep irrep = Irrep::A;
    std::vector<BasisState> basis;
    Matrix matrix;
    double multiplicity = 1.0;
};

std::vector<Block> build_blocks_m1(const SystemParams& p);
std::vector<Block> build_blocks_m2(const SystemParams& p);
std::vector<Block> build_blocks(const SystemParams& p, int manifold);

EigenSystem eigensolve_block(const Block& b);

struct SpectrumEntry {
    int manifold = 2;
    Irrep irrep = Irrep::A;
    std::size_t block = 0;
    double frequency = 0.0;
    double multiplicity = 1.0;
    std::vector<BasisState> basis;
    std::vector<double> eigenvector;
    StateLabel label = StateLabel::Unknown;
    double photon_content = 0.0;
};

struct LabeledSpectrum {
    int manifold = 2;
    std::vector<Block> blocks;
    std::vector<SpectrumEntry> entries;  // block order, ascending frequency within a block

    const SpectrumEntry* find(StateLabel s) const;
    double total_multiplicity() const;
};

LabeledSpectrum solve_manifold(const SystemParams& p, int manifold);

double photon_content(const std::vector<BasisState>& basis, const std::vector<double>& v);
double photon_content(const SpectrumEntry& e);

// Anharmonic with chi != 0 at |detuning| < 1e-10 rabi: the resonant zeroth-order pair replaces 1+1- and 2DA.
bool uses_resonant_references(const SystemParams& p);

// Reference vector over canonical_basis(manifold, irrep_of(label)).
// Harmonic normal-mode states, or the resonance-adapted pair when `resonant` is set.
std::vector<double> reference_vector(StateLabel label, const DerivedQuantities& d, double n, bool resonant);

// Restricts a canonical-basis vector to `basis` rows (no renormalization).
std::vector<double> restrict_to(const std::vector<double>& full, int manifold, Irrep irrep,
                                const std::vector<BasisState>& basis);

struct Reference {
    StateLabel label;
    std::vector<double> vec;  // normalized, over the block basis
};

// Reference states for a block as the labeling uses them (model and size aware).
std::vector<Reference> block_references(const SystemParams& p, const Block& b);

// Maximizes the summed weight |<ref|v>|^2 over injective maps vectors -> references.
struct Assignment {
    std::vector<int> ref_of;  // per vector
    double score = 0.0;
    double runner_up = -1.0;  // best score among other maps, -1 if none
};
Assignment best_assignment(const std::vector<std::vector<double>>& weight);

}  // namespace tcx
