#include "tcx/perturb.hpp"

#include <cmath>

namespace tcx {

bool is_resonant(const DerivedQuantities& d) { return std::abs(d.detuning) < 1e-10 * d.rabi; }

namespace {

struct Ctx {
    double n, a, b, cw, go, om;  // N, h+, h-, chi*w10, gamma*Omega, Omega
};

// 2+ (sg = +1) or 2- (sg = -1)
std::vector<double> vec_two(const Ctx& c, double sg) {
    const double n = c.n, a = c.a, b = c.b, cw = c.cw, go = c.go;
    const double hs = sg > 0 ? a : b, hm = sg > 0 ? b : a;
    const double hs2 = hs * hs, hm2 = hm * hm, ab2 = a * a * b * b;
    const double pre = hm2 / (2.0 * n * c.om);
    return {pre * ab2 * (sg * 3.0 * cw + 2.0 * (hm2 - 5.0 * hs2) * go),
            pre * std::sqrt(2.0) * a * b * ((2.0 * hm2 - hs2) * cw + sg * 2.0 * (hm2 + 2.0 * hs2 - 6.0 * ab2) * go),
            pre * hm2 * std::sqrt((n - 1.0) / n) *
                ((b * b - a * a + sg * 3.0 * ab2) / hs2 * cw + 2.0 * (2.0 * hs2 - hm2 - 6.0 * ab2) * go),
            pre / std::sqrt(n) *
                (-sg * (n + hm2 * (hs2 - hm2 - 3.0 * ab2)) / hs2 * cw + 2.0 * (n + hm2 * (2.0 * hs2 - hm2 - 6.0 * ab2)) * go)};
}

std::vector<double> vec_pm(const Ctx& c) {
    const double n = c.n, a = c.a, b = c.b, cw = c.cw, go = c.go;
    const double ab2 = a * a * b * b, dd = a * a - b * b;
    const double pre = 2.0 * a * b / (n * c.om);
    return {pre * (-std::sqrt(2.0) * ab2 * go), pre * a * b * (cw - dd * go),
            pre * std::sqrt(2.0 * (n - 1.0) / n) * ab2 * (2.0 / dd * cw - 3.0 * go),
            -pre / std::sqrt(2.0 * n) * ((n - 4.0 * ab2) / dd * cw - (n - 6.0 * ab2) * go)};
}

std::vector<double> vec_da(const Ctx& c) {
    const double n = c.n, a = c.a, b = c.b, cw = c.cw, go = c.go;
    const double ab2 = a * a * b * b;
    const double x = (1.0 - 5.0 * ab2) / (ab2 * (b * b - a * a)) * cw - 2.0 * go;
    const double pre = std::sqrt(n - 1.0) / (2.0 * n * c.om);
    return {pre * cw / (b * b - a * a), pre * std::sqrt(2.0) / (a * b) * cw, pre * std::sqrt((n - 1.0) / n) * x,
            pre * x / std::sqrt(n)};
}

std::vector<double> vec_da_resonant(const Ctx& c) {
    const double n = c.n, go = c.go;
    const double pre = std::sqrt(2.0 * n - 1.0) / (2.0 * n * c.om);
    return {-pre * go / std::sqrt(2.0), pre * c.cw, -pre * go * std::sqrt((n - 1.0) / (2.0 * n)),
            -pre * go / std::sqrt(2.0 * n)};
}

// 1+1B (sg = +1) or 1-1B (sg = -1)
std::vector<double> vec_b(const Ctx& c, double sg) {
    const double n = c.n, a = c.a, b = c.b, cw = c.cw, go = c.go;
    const double hs = sg > 0 ? a : b, hm = sg > 0 ? b : a;
    const double hs2 = hs * hs, hm2 = hm * hm;
    const double pre = std::sqrt(2.0) * hm / (n * c.om);
    const double q = n - 2.0 * hm2 * (3.0 * hs2 + hm2);
    return {pre * std::sqrt(2.0) * a * b * (cw - (a * a - b * b) * go),
            pre * hm2 * std::sqrt(2.0 * (n - 2.0) / n) * (sg * (2.0 * hs2 + hm2) / hs2 * cw - (3.0 * hs2 + hm2) * go),
            pre / std::sqrt(n) * (-sg * (n - 2.0 * hm2 * (2.0 * hs2 + hm2)) / hs2 * cw + q * go)};
}

std::vector<double> vec_db(const Ctx& c) {
    const double n = c.n, a = c.a, b = c.b, cw = c.cw, go = c.go;
    const double y = (a * a - b * b) / (a * b) * cw + a * b * go;
    const double pre = std::sqrt(2.0 * (n - 2.0)) / (a * b * n * c.om);
    return {pre * cw, -pre * std::sqrt((n - 2.0) / n) * y, -pre * std::sqrt(2.0 / n) * y};
}

std::vector<PtCorrection> compute(const SystemParams& p, PtBranch branch, bool with_vectors) {
    if (p.model.kind == ModelKind::TavisCummings)
        throw ContractError("perturbation theory needs the Harmonic or Anharmonic model");
    const DerivedQuantities d = derive(p);
    if (d.rabi == 0.0) throw DegeneracyError("perturbation theory undefined at zero Rabi frequency");
    bool resonant = false;
    switch (branch) {
        case PtBranch::Auto: resonant = is_resonant(d); break;
        case PtBranch::Resonant:
            if (!is_resonant(d)) throw ContractError("resonant branch requested away from zero detuning");
            resonant = true;
            break;
        case PtBranch::NonResonant:
            if (std::abs(d.h_plus - d.h_minus) < 1e-8)
                throw DegeneracyError("h+ and h- coincide: use the resonant branch");
            break;
    }
    const double n = p.n(), a = d.h_plus, b = d.h_minus;
    const double a2 = a * a, b2 = b * b;
    const double cw = p.model.eff_chi() * p.omega_10, go = p.model.eff_gamma() * d.rabi;
    const double wp = d.omega_plus(p), wm = d.omega_minus(p);
    const Ctx c{n, a, b, cw, go, d.rabi};
    const double kron = resonant ? 1.0 : 0.0;

    std::vector<PtCorrection> out;
    auto add = [&](StateLabel l, double w0, double shift, auto&& vec1) {
        PtCorrection pc;
        pc.label = l;
        pc.irrep = irrep_of(l);
        pc.order0 = w0;
        pc.shift = shift;
        pc.resonant = resonant;
        if (with_vectors) {
            pc.order0_vector = reference_vector(l, d, n, resonant && (l == StateLabel::OnePlusOneMinus || l == StateLabel::TwoDA));
            pc.order1_vector = vec1();
        }
        out.push_back(std::move(pc));
    };
    auto zeros = [](std::size_t k) { return [k] { return std::vector<double>(k, 0.0); }; };

    add(StateLabel::TwoPlus, 2.0 * wp, -(b2 * b2 / n) * (cw - 4.0 * a2 * go), [&] { return vec_two(c, 1.0); });
    add(StateLabel::TwoMinus, 2.0 * wm, -(a2 * a2 / n) * (cw + 4.0 * b2 * go), [&] { return vec_two(c, -1.0); });
    add(StateLabel::OnePlusOneMinus, p.omega_cav + p.omega_10,
        -(2.0 * a2 * b2 / n) * ((1.0 - kron) * cw - 2.0 * (a2 - b2) * go),
        [&] { return resonant ? std::vector<double>(4, 0.0) : vec_pm(c); });
    if (p.n_emitters >= 2) {
        add(StateLabel::TwoDA, 2.0 * p.omega_10, -(2.0 * n - 2.0 + kron) / (2.0 * n) * cw,
            [&] { return resonant ? vec_da_resonant(c) : vec_da(c); });
        add(StateLabel::OnePlusOneB, p.omega_10 + wp, -(2.0 * b2 / n) * (cw - 2.0 * a2 * go),
            [&] { return vec_b(c, 1.0); });
        add(StateLabel::OneMinusOneB, p.omega_10 + wm, -(2.0 * a2 / n) * (cw + 2.0 * b2 * go),
            [&] { return vec_b(c, -1.0); });
    }
    if (p.n_emitters >= 3) add(StateLabel::TwoDB, 2.0 * p.omega_10, -((n - 2.0) / n) * cw, [&] { return vec_db(c); });
    if (p.n_emitters >= 4) add(StateLabel::PairC, 2.0 * p.omega_10, 0.0, zeros(1));
    return out;
}

}  // namespace

std::vector<PtCorrection> pt_frequencies(const SystemParams& p, PtBranch branch) { return compute(p, branch, false); }

std::vector<PtCorrection> pt_vectors(const SystemParams& p, PtBranch branch) { return compute(p, branch, true); }

const PtCorrection* find_correction(const std::vector<PtCorrection>& v, StateLabel s) {
    for (const auto& c : v)
        if (c.label == s) return &c;
    return nullptr;
}

std::vector<double> perturbed_vector(const PtCorrection& c) {
    std::vector<double> v = c.order0_vector;
    for (std::size_t i = 0; i < v.size() && i < c.order1_vector.size(); ++i) v[i] += c.order1_vector[i];
    normalize(v);
    return v;
}

}  // namespace tcx
