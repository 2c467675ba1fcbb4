#include "tcx/tcexact.hpp"

#include <cmath>

namespace tcx {

CubicSolution tc_exact(const SystemParams& p) {
    if (p.model.kind != ModelKind::TavisCummings) throw ContractError("tc_exact: model must be Tavis-Cummings");
    if (p.n_emitters < 2) throw ContractError("tc_exact: needs N >= 2 (the 1_A^2 row is absent at N = 1)");
    if (!(p.g > 0.0)) throw ContractError("tc_exact: needs g > 0");
    const DerivedQuantities d = derive(p);
    const double n = p.n();
    const double om = d.rabi;
    const double gr = p.g / om;

    CubicSolution s;
    s.p2 = (1.0 - 2.0 * gr * gr) / 3.0;
    s.q3 = gr * gr * d.detuning / om;
    const double p6 = s.p2 * s.p2 * s.p2;
    double disc = p6 - s.q3 * s.q3;
    if (disc < 0.0) {
        if (disc < -1e-12 * std::max(p6, 1e-300)) throw std::logic_error("tc_exact: negative discriminant p^6 - q^6");
        disc = 0.0;
    }
    // principal branch: arg(rho^3) in [0, pi] so arg(rho) in [0, pi/3]
    const double mod = std::sqrt(s.p2);
    const double arg = std::atan2(std::sqrt(disc), s.q3) / 3.0;
    s.rho = std::polar(mod, arg);
    const double re = s.rho.real(), im = s.rho.imag();
    const double r3 = std::sqrt(3.0);
    s.f = {2.0 * re, -re - r3 * im, -re + r3 * im};

    const double hp2 = d.h_plus * d.h_plus, hm2 = d.h_minus * d.h_minus;
    const double hh = d.h_plus * d.h_minus;

    bool need_numeric = false;
    for (int k = 0; k < 3; ++k) {
        s.frequencies[k] = p.omega_cav + p.omega_10 + s.f[k] * om;
        const double phi = s.f[k] - hp2 + hm2;
        std::vector<double> v{2.0 * std::sqrt(n - 1.0) * hp2 * hm2, std::sqrt(2.0 * (n - 1.0)) * hh * phi,
                              std::sqrt(n) * (s.f[k] * phi - 2.0 * hp2 * hm2)};
        const double nv = norm(v);
        if (!(nv > 1e-8 * std::sqrt(n))) {
            s.numeric_fallback[k] = true;
            need_numeric = true;
            continue;
        }
        for (double& x : v) x /= nv;
        fix_sign(v);
        s.eigenvectors[k] = std::move(v);
    }
    if (need_numeric) {
        const Block a = build_blocks_m2(p).front();
        const EigenSystem es = eigensolve_block(a);
        // ascending order: 2-, 1+1-, 2+
        const int col_for[3] = {2, 0, 1};
        for (int k = 0; k < 3; ++k)
            if (s.numeric_fallback[k]) s.eigenvectors[k] = es.vectors.column(col_for[k]);
    }
    return s;
}

}  // namespace tcx
