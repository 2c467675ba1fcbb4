#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tcx/core.hpp"
#include "tcx/manifolds.hpp"

namespace tcx {

enum class SweepVar { N, Detuning, Chi };
std::string sweep_var_name(SweepVar v);
std::optional<SweepVar> parse_sweep_var(const std::string& s);

enum class CouplingMode { FixCollective, FixSingle };

struct SweepSpec {
    SweepVar variable = SweepVar::Chi;
    double from = 0.0;
    double to = 1.0;
    std::size_t points = 2;
    bool log_grid = false;
    SystemParams base;
    CouplingMode coupling = CouplingMode::FixCollective;
    double collective_g = 0.07;  // sqrt(N) g, used in FixCollective mode
    int manifold = 2;

    void validate() const;  // ContractError on a malformed spec
};

std::vector<double> sweep_grid(const SweepSpec& s);
// chi sweeps use the Morse gamma; N values are rounded to the nearest integer
SystemParams params_at(const SweepSpec& s, double value);

struct TrackedCurve {
    Irrep irrep = Irrep::A;
    std::size_t block = 0;
    StateLabel label = StateLabel::Unknown;  // identity carried from the first point
    std::vector<double> frequency;           // per grid point, NaN where the state is absent
    std::vector<double> photon_content;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<double> grid;
    std::vector<LabeledSpectrum> spectra;  // labels continued along the sweep
    std::vector<TrackedCurve> curves;
    std::vector<std::string> warnings;

    const TrackedCurve* curve(StateLabel s) const;
};

// Spectra are computed independently per point (OpenMP when parallel), then tracked in one serial pass.
SweepResult run_sweep(const SweepSpec& s, bool parallel = true);

// Relabels spectra[i] by overlap continuity with spectra[i-1]; returns warnings.
std::vector<std::string> track_labels(std::vector<LabeledSpectrum>& spectra, const std::vector<double>& grid);

struct GapCurve {
    StateLabel label = StateLabel::Unknown;
    std::vector<double> n;
    std::vector<double> gap;  // |w_TC - w_HO|

    double loglog_slope(double n_lo, double n_hi) const;  // least squares over n in [n_lo, n_hi]
};

// TC vs HO per labeled state, sqrt(N) g and detuning taken from `base` (collective coupling fixed).
std::vector<GapCurve> tc_ho_gap(const std::vector<double>& n_values, const SystemParams& base, double collective_g,
                                bool parallel = true);

enum class ResonanceType { RabiVsChi, NegativeDetuningPair, Other };
std::string resonance_type_name(ResonanceType t);

struct CrossingReport {
    bool found = false;
    double location = 0.0;  // swept chi
    double min_gap = 0.0;
    std::pair<StateLabel, StateLabel> diabatic{StateLabel::Unknown, StateLabel::Unknown};  // upper, lower branch near the minimum
    std::pair<std::string, std::string> adiabatic;  // e.g. 2_X / 2_Y or 2_R / 2_S
    std::size_t branch_upper = 0;                   // index counted from the top of the A block
    ResonanceType type = ResonanceType::Other;
    std::string note;
};

// All interior avoided crossings in the A block of manifold 2 along a chi sweep, in increasing chi.
std::vector<CrossingReport> find_crossings(const SweepSpec& s, bool parallel = true);
// The crossing between two diabatic identities, or found = false.
CrossingReport find_crossing(const SweepSpec& s, std::pair<StateLabel, StateLabel> pair, bool parallel = true);

// Adiabatic branch names of the A block at detuning d, ordered from the top: 2+ then R,S,T (d < 0) or X,Y.
std::vector<std::string> adiabatic_names(double detuning, std::size_t dim);

}  // namespace tcx
