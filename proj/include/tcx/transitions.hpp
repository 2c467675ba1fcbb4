#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcx/core.hpp"
#include "tcx/manifolds.hpp"

namespace tcx {

// Dipole amplitudes are in units of mu10. Photon amplitudes are <Phi_1| a0 |Psi_2> = <Psi_2| a0^dagger |Phi_1>.
enum class TransitionOp { Dipole, Photon };
std::string transition_op_name(TransitionOp op);

// 2: dipole A, 3: dipole B, 4: photon A, 5: photon B
enum class AmpTable { II = 2, III = 3, IV = 4, V = 5 };
TransitionOp table_op(AmpTable t);
Irrep table_irrep(AmpTable t);

struct TransitionReport {
    int table_id = 0;  // 0 for ground -> manifold 1
    TransitionOp op = TransitionOp::Dipole;
    StateLabel bra = StateLabel::Unknown;
    StateLabel ket = StateLabel::Unknown;  // Unknown stands for the ground state
    std::string model;
    std::optional<double> base;        // harmonic (or TC) row
    std::optional<double> correction;  // first-order anharmonic part, including the direct mu12 term
    std::optional<double> closed_form;
    std::optional<double> numeric;
    std::optional<double> discrepancy;
    std::string note;  // "n/a" for rows absent in the model, "delta=0 row" for replacement rows

    std::string row_label() const;
};

std::vector<TransitionReport> ground_transitions(const SystemParams& p);

// Closed-form cells of one table for params.model. TC rows are the printed large-N forms.
std::vector<TransitionReport> table_amplitudes(const SystemParams& p, AmpTable t);

// Same cells with numeric values from the labeled eigenvectors and the discrepancy against table_amplitudes.
std::vector<TransitionReport> numeric_amplitudes(const SystemParams& p, AmpTable t);

// TC only: exact closed forms (cubic eigenvectors for A, B-block Hopfield coefficients for B) vs numerics.
std::vector<TransitionReport> tc_exact_amplitudes(const SystemParams& p, AmpTable t);

// Operator matrix (rows: manifold-2 block basis, cols: manifold-1 block basis) for one irrep.
Matrix transition_matrix(const SystemParams& p, TransitionOp op, const Block& m2, const Block& m1);

// table_id 1 rows: base = harmonic frequency, correction = first-order shift, numeric = labeled eigenvalue.
// TC uses gamma = -1, chi = 0 for the correction and marks 2DA/2DB n/a.
std::vector<TransitionReport> table1_rows(const SystemParams& p);

// Largest |<Psi_2|op|Phi_1>| between different irreps, from eigenvectors embedded in the localized
// basis (N <= 8). Also returns the largest same-irrep mismatch vs the reduced path.
struct SelectionRuleReport {
    double max_cross_irrep = 0.0;
    double max_reduced_mismatch = 0.0;
};
SelectionRuleReport selection_rule_check(const SystemParams& p, TransitionOp op);

}  // namespace tcx
