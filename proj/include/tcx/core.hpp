#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tcx {

// Thrown when a caller breaks a documented precondition.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Near-degenerate input where a formula has no finite value on the requested branch.
class DegeneracyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Problem size beyond what a dense brute-force path supports.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ModelKind { TavisCummings, Harmonic, Anharmonic };

struct EmitterModel {
    ModelKind kind = ModelKind::Harmonic;
    double chi = 0.0;    // mechanical anharmonicity
    double gamma = 0.0;  // electrical anharmonicity

    static EmitterModel tavis_cummings() { return {ModelKind::TavisCummings, 0.0, 0.0}; }
    static EmitterModel harmonic() { return {ModelKind::Harmonic, 0.0, 0.0}; }
    static EmitterModel anharmonic(double chi, double gamma) { return {ModelKind::Anharmonic, chi, gamma}; }

    bool has_second_level() const { return kind != ModelKind::TavisCummings; }
    // chi and gamma seen by the Hamiltonian; zero for harmonic, unused for TC
    double eff_chi() const { return kind == ModelKind::Anharmonic ? chi : 0.0; }
    double eff_gamma() const { return kind == ModelKind::Anharmonic ? gamma : 0.0; }
};

std::string model_name(const EmitterModel& m);

struct SystemParams {
    std::uint64_t n_emitters = 1;
    double omega_cav = 1.0;
    double omega_10 = 1.0;
    double g = 0.0;
    EmitterModel model{};

    double n() const { return static_cast<double>(n_emitters); }
    // 1 -> 2 transition frequency
    double omega_21() const { return omega_10 * (1.0 - model.eff_chi()); }
    // 1 -> 2 coupling; zero in the TC model
    double g_12() const;

    // throws ContractError naming the violated field
    void validate() const;
};

struct DerivedQuantities {
    double detuning = 0.0;
    double rabi = 0.0;
    double h_plus = 0.0;
    double h_minus = 0.0;
    bool degenerate = false;  // g == 0 and detuning == 0: h set to 1/sqrt2 by convention

    double omega_plus(const SystemParams& p) const;   // upper polariton
    double omega_minus(const SystemParams& p) const;  // lower polariton
};

DerivedQuantities derive(const SystemParams& p);

double morse_gamma(double chi);
EmitterModel build_morse_model(double chi);

// Both omegas and g scaled by s.
SystemParams scaled(const SystemParams& p, double s);

// Builds params with sqrt(N) g held at the given collective value.
SystemParams with_collective_coupling(SystemParams p, double collective_g);

}  // namespace tcx
