#include "tcx/core.hpp"

#include <cmath>
#include <sstream>

namespace tcx {

std::string model_name(const EmitterModel& m) {
    switch (m.kind) {
        case ModelKind::TavisCummings: return "tc";
        case ModelKind::Harmonic: return "ho";
        case ModelKind::Anharmonic: return "anh";
    }
    return "?";
}

double SystemParams::g_12() const {
    if (!model.has_second_level()) return 0.0;
    return std::sqrt(2.0) * g * (1.0 + model.eff_gamma());
}

void SystemParams::validate() const {
    if (n_emitters < 1) throw ContractError("n_emitters must be >= 1");
    if (!(omega_10 > 0.0) || !std::isfinite(omega_10)) throw ContractError("omega_10 must be finite and > 0");
    if (!std::isfinite(omega_cav)) throw ContractError("omega_cav must be finite");
    if (!(g >= 0.0) || !std::isfinite(g)) throw ContractError("g must be finite and >= 0");
    if (model.kind == ModelKind::Anharmonic) {
        if (!std::isfinite(model.chi) || !std::isfinite(model.gamma))
            throw ContractError("chi and gamma must be finite");
    }
}

double DerivedQuantities::omega_plus(const SystemParams& p) const {
    return 0.5 * (p.omega_cav + p.omega_10) + 0.5 * rabi;
}

double DerivedQuantities::omega_minus(const SystemParams& p) const {
    return 0.5 * (p.omega_cav + p.omega_10) - 0.5 * rabi;
}

DerivedQuantities derive(const SystemParams& p) {
    p.validate();
    DerivedQuantities d;
    d.detuning = p.omega_cav - p.omega_10;
    const double coll = std::sqrt(p.n()) * p.g;  // sqrt(N) g
    d.rabi = std::hypot(d.detuning, 2.0 * coll);
    if (d.rabi == 0.0) {
        d.degenerate = true;
        d.h_plus = d.h_minus = std::sqrt(0.5);
        return d;
    }
    // the larger one from the sqrt formula, the smaller from 2 h+ h- = 2 sqrt(N) g / Omega
    const double big = std::sqrt(0.5 * (1.0 + std::abs(d.detuning) / d.rabi));
    const double small = coll / d.rabi / big;
    if (d.detuning >= 0.0) {
        d.h_plus = big;
        d.h_minus = small;
    } else {
        d.h_plus = small;
        d.h_minus = big;
    }
    return d;
}

double morse_gamma(double chi) {
    if (!(chi >= 0.0)) {
        std::ostringstream os;
        os << "morse_gamma: chi = " << chi << " below lower bound 0";
        throw std::domain_error(os.str());
    }
    if (!(chi < 4.0)) {
        std::ostringstream os;
        os << "morse_gamma: chi = " << chi << " not below upper bound 4";
        throw std::domain_error(os.str());
    }
    if (chi == 0.0) return 0.0;
    const double arg = (1.0 + chi) * (16.0 - chi * chi) / (2.0 * (2.0 + chi));
    return 0.5 * std::sqrt(arg) - 1.0;
}

EmitterModel build_morse_model(double chi) { return EmitterModel::anharmonic(chi, morse_gamma(chi)); }

SystemParams scaled(const SystemParams& p, double s) {
    SystemParams q = p;
    q.omega_cav *= s;
    q.omega_10 *= s;
    q.g *= s;
    return q;
}

SystemParams with_collective_coupling(SystemParams p, double collective_g) {
    p.g = collective_g / std::sqrt(p.n());
    return p;
}

}  // namespace tcx
