#include "tcx/transitions.hpp"

#include <cmath>

#include "tcx/oracle.hpp"
#include "tcx/perturb.hpp"
#include "tcx/symbasis.hpp"
#include "tcx/tcexact.hpp"

namespace tcx {

std::string transition_op_name(TransitionOp op) { return op == TransitionOp::Dipole ? "dipole" : "photon"; }

TransitionOp table_op(AmpTable t) {
    return (t == AmpTable::II || t == AmpTable::III) ? TransitionOp::Dipole : TransitionOp::Photon;
}

Irrep table_irrep(AmpTable t) { return (t == AmpTable::II || t == AmpTable::IV) ? Irrep::A : Irrep::B; }

std::string TransitionReport::row_label() const {
    const std::string k = ket == StateLabel::Unknown ? "0" : state_label_name(ket);
    return state_label_name(bra) + "|" + k;
}

namespace {

using S = StateLabel;

std::vector<S> table_bras(AmpTable t) {
    if (table_irrep(t) == Irrep::A) return {S::TwoPlus, S::TwoMinus, S::OnePlusOneMinus, S::TwoDA};
    return {S::OnePlusOneB, S::OneMinusOneB, S::TwoDB};
}

std::vector<S> table_kets(AmpTable t) {
    if (table_irrep(t) == Irrep::A) return {S::OnePlus, S::OneMinus};
    return {S::OneB};
}

bool label_exists(const SystemParams& p, S s) {
    const bool tc = p.model.kind == ModelKind::TavisCummings;
    switch (s) {
        case S::TwoDA: return !tc && p.n_emitters >= 2;
        case S::OnePlusOneB:
        case S::OneMinusOneB:
        case S::OneB: return p.n_emitters >= 2;
        case S::TwoDB: return !tc && p.n_emitters >= 3;
        case S::PairC: return p.n_emitters >= 4;
        default: return true;
    }
}

struct Cell {
    std::optional<double> base, corr, closed;
    std::string note;
};

// Harmonic-limit cell.
double harmonic_cell(AmpTable t, S bra, S ket, double n, double a, double b) {
    const bool plus = ket == S::OnePlus;
    switch (t) {
        case AmpTable::II:
            switch (bra) {
                case S::TwoPlus: return plus ? std::sqrt(2.0 * n) * b : 0.0;
                case S::TwoMinus: return plus ? 0.0 : std::sqrt(2.0 * n) * a;
                case S::OnePlusOneMinus: return plus ? std::sqrt(n) * a : std::sqrt(n) * b;
                default: return 0.0;
            }
        case AmpTable::IV:
            switch (bra) {
                case S::TwoPlus: return plus ? std::sqrt(2.0) * a : 0.0;
                case S::TwoMinus: return plus ? 0.0 : -std::sqrt(2.0) * b;
                case S::OnePlusOneMinus: return plus ? -b : a;
                default: return 0.0;
            }
        case AmpTable::III:
            if (bra == S::OnePlusOneB) return b * std::sqrt(n);
            if (bra == S::OneMinusOneB) return a * std::sqrt(n);
            return 0.0;
        case AmpTable::V:
            if (bra == S::OnePlusOneB) return a;
            if (bra == S::OneMinusOneB) return -b;
            return 0.0;
    }
    return 0.0;
}

// Printed TC rows (large-N forms).
double tc_cell(AmpTable t, S bra, S ket, double n, double a, double b) {
    const bool plus = ket == S::OnePlus;
    const double rn = std::sqrt(n), rn1 = std::sqrt(n - 1.0), s2 = std::sqrt(2.0);
    const double a2 = a * a, b2 = b * b;
    switch (t) {
        case AmpTable::II:
            switch (bra) {
                case S::TwoPlus: return plus ? s2 * b * (a2 * rn + b2 * rn1) : s2 * a * b2 * (rn1 - rn);
                case S::TwoMinus: return plus ? s2 * a2 * b * (rn1 - rn) : s2 * a * (a2 * rn1 + b2 * rn);
                case S::OnePlusOneMinus:
                    return plus ? a * (a2 * rn + b2 * (2.0 * rn1 - rn)) : b * (a2 * (2.0 * rn1 - rn) + b2 * rn);
                default: return 0.0;
            }
        case AmpTable::III:
            if (bra == S::OnePlusOneB) return b * std::sqrt(n - 2.0);
            if (bra == S::OneMinusOneB) return a * std::sqrt(n - 2.0);
            return 0.0;
        default: return harmonic_cell(t, bra, ket, n, a, b);
    }
}

// First-order correction cells, nonresonant, mixing part only.
double correction_cell(AmpTable t, S bra, S ket, double n, double a, double b, double x, double g) {
    const bool plus = ket == S::OnePlus;
    const double a2 = a * a, b2 = b * b, dd = a2 - b2;
    const double s2 = std::sqrt(2.0), rn = std::sqrt(n);
    switch (t) {
        case AmpTable::II:
            switch (bra) {
                case S::TwoPlus:
                    return plus ? std::sqrt(2.0 / n) * a2 * b2 * b * (-x + (3.0 * a2 - b2) * g)
                                : -(a * b2 / std::sqrt(2.0 * n)) * ((a2 + 2.0 * b2) * x - 2.0 * (dd + 2.0 * a2 * b2) * g);
                case S::TwoMinus:
                    return plus ? (a2 * b / std::sqrt(2.0 * n)) * ((2.0 * a2 + b2) * x - 2.0 * (dd - 2.0 * a2 * b2) * g)
                                : std::sqrt(2.0 / n) * a2 * a * b2 * (x - (a2 - 3.0 * b2) * g);
                case S::OnePlusOneMinus:
                    return plus ? (2.0 * a * b2 * b2 / rn) * (x - (3.0 * a2 - b2) * g)
                                : (2.0 * a2 * a2 * b / rn) * (-x + (a2 - 3.0 * b2) * g);
                case S::TwoDA: {
                    const double f = std::sqrt((n - 1.0) / (2.0 * n));
                    return plus ? f * b * ((2.0 * a2 - b2) / (a2 * dd) * x - 2.0 * g)
                                : f * a * (-(a2 - 2.0 * b2) / (b2 * dd) * x - 2.0 * g);
                }
                default: return 0.0;
            }
        case AmpTable::IV:
            switch (bra) {
                case S::TwoPlus:
                    return plus ? (s2 * a * b2 * b2 / n) * (x - (3.0 * a2 - b2) * g)
                                : (a2 * b2 * b / (s2 * n)) * (-x + 4.0 * a2 * g);
                case S::TwoMinus:
                    return plus ? -(a2 * a * b2 / (s2 * n)) * (x + 4.0 * b2 * g)
                                : (s2 * a2 * a2 * b / n) * (x - (a2 - 3.0 * b2) * g);
                case S::OnePlusOneMinus:
                    return plus ? (2.0 * a2 * b2 * b / n) * (x - (3.0 * a2 - b2) * g)
                                : (2.0 * a2 * a * b2 / n) * (x - (a2 - 3.0 * b2) * g);
                case S::TwoDA: {
                    const double f = std::sqrt((n - 1.0) / 2.0) / n;
                    return plus ? -f * b2 / (a * dd) * x : f * a2 / (b * dd) * x;
                }
                default: return 0.0;
            }
        case AmpTable::III:
            switch (bra) {
                case S::OnePlusOneB: return -(2.0 * a * a * b / rn) * (x - dd * g);
                case S::OneMinusOneB: return (2.0 * b * a * b / rn) * (x - dd * g);
                case S::TwoDB: return -std::sqrt(2.0 * (n - 2.0) / n) * (dd / (a2 * b2) * x + g);
                default: return 0.0;
            }
        case AmpTable::V:
            switch (bra) {
                case S::OnePlusOneB: return (2.0 * b * a * b / n) * (x - dd * g);
                case S::OneMinusOneB: return (2.0 * a * a * b / n) * (x - dd * g);
                case S::TwoDB: return std::sqrt(2.0 * (n - 2.0)) / (n * a * b) * x;
                default: return 0.0;
            }
    }
    return 0.0;
}

// Zero-detuning replacement rows for 1+1- and 2DA (A tables).
double resonant_cell(AmpTable t, S bra, S ket, double n, double x, double g) {
    const bool plus = ket == S::OnePlus;
    if (t == AmpTable::II) {
        if (bra == S::OnePlusOneMinus) return -std::sqrt(n * (n - 1.0) / (2.0 * n - 1.0));
        const double z = std::sqrt(n / (2.0 * (2.0 * n - 1.0))), w = 0.5 * std::sqrt((2.0 * n - 1.0) / (2.0 * n));
        return plus ? z + w * (x - g) : z - w * (x + g);
    }
    if (bra == S::OnePlusOneMinus) {
        const double v = std::sqrt((n - 1.0) / (2.0 * n - 1.0));
        return plus ? v : -v;
    }
    const double z = 1.0 / std::sqrt(2.0 * (2.0 * n - 1.0)), w = std::sqrt((2.0 * n - 1.0) / 2.0) / (2.0 * n);
    return plus ? -z + w * (x - g) : z + w * (x + g);
}

// gamma part of mu12 = sqrt2 (1 + gamma) acting on the zeroth-order states
double direct_dipole_term(AmpTable t, S bra, S ket, const DerivedQuantities& d, double n, bool resonant, double g) {
    if (t != AmpTable::II && t != AmpTable::III) return 0.0;
    const std::vector<double> psi = reference_vector(bra, d, n, resonant);
    if (t == AmpTable::II) {
        const double phi_a = ket == S::OnePlus ? d.h_minus : d.h_plus;
        return std::sqrt(2.0) * g * psi[3] * phi_a;
    }
    return std::sqrt(2.0) * g * psi[2];
}

Cell closed_cell(const SystemParams& p, AmpTable t, S bra, S ket) {
    Cell c;
    if (!label_exists(p, bra) || !label_exists(p, ket)) {
        c.note = "n/a";
        return c;
    }
    const DerivedQuantities d = derive(p);
    const double n = p.n(), a = d.h_plus, b = d.h_minus;
    if (p.model.kind == ModelKind::TavisCummings) {
        c.base = tc_cell(t, bra, ket, n, a, b);
        c.corr = 0.0;
        c.closed = c.base;
        return c;
    }
    c.base = harmonic_cell(t, bra, ket, n, a, b);
    if (p.model.kind == ModelKind::Harmonic || (p.model.chi == 0.0 && p.model.gamma == 0.0)) {
        c.corr = 0.0;
        c.closed = c.base;
        return c;
    }
    if (d.rabi == 0.0) {
        c.note = "degenerate";
        return c;
    }
    const double x = p.model.chi * p.omega_10 / d.rabi, g = p.model.gamma;
    const bool zero_det = is_resonant(d);
    const bool adapted = uses_resonant_references(p);
    const bool special = bra == S::OnePlusOneMinus || bra == S::TwoDA;
    if (zero_det && !adapted && special && table_irrep(t) == Irrep::A) {
        c.note = "degenerate";  // chi = 0 at zero detuning leaves the pair unresolved at first order
        return c;
    }
    const double direct = direct_dipole_term(t, bra, ket, d, n, adapted && special, g);
    if (adapted && special && table_irrep(t) == Irrep::A) {
        c.closed = resonant_cell(t, bra, ket, n, x, g) + direct;
        c.corr = *c.closed - *c.base;
        c.note = "delta=0 row";
        return c;
    }
    c.corr = correction_cell(t, bra, ket, n, a, b, x, g) + direct;
    c.closed = *c.base + *c.corr;
    return c;
}

const Block* find_block(const LabeledSpectrum& s, Irrep r) {
    for (const auto& b : s.blocks)
        if (b.irrep == r) return &b;
    return nullptr;
}

// Eigenvector of a labeled state, sign-aligned with its reference.
std::optional<std::vector<double>> aligned_vector(const SystemParams& p, const LabeledSpectrum& s, S label) {
    const SpectrumEntry* e = s.find(label);
    if (!e) return std::nullopt;
    const Block& blk = s.blocks[e->block];
    std::vector<double> v = e->eigenvector;
    for (const auto& r : block_references(p, blk)) {
        if (r.label != label) continue;
        if (dot(v, r.vec) < 0.0)
            for (double& x : v) x = -x;
        break;
    }
    return v;
}

double sandwich(const std::vector<double>& v2, const Matrix& m, const std::vector<double>& v1) {
    return dot(v2, m.apply(v1));
}

TransitionReport make_report(const SystemParams& p, AmpTable t, S bra, S ket) {
    TransitionReport r;
    r.table_id = static_cast<int>(t);
    r.op = table_op(t);
    r.bra = bra;
    r.ket = ket;
    r.model = model_name(p.model);
    return r;
}

}  // namespace

Matrix transition_matrix(const SystemParams& p, TransitionOp op, const Block& m2, const Block& m1) {
    if (m2.manifold != 2 || m1.manifold != 1) throw ContractError("transition_matrix: needs a manifold-2 and a manifold-1 block");
    Matrix m(m2.basis.size(), m1.basis.size());
    if (m2.irrep != m1.irrep) return m;
    const double n = p.n();
    const double mu12 = p.model.has_second_level() ? std::sqrt(2.0) * (1.0 + p.model.eff_gamma()) : 0.0;
    using B = BasisState;
    auto value = [&](B row, B col) -> double {
        if (op == TransitionOp::Dipole) {
            if (row == B::PhotonSingleA && col == B::Photon1) return std::sqrt(n);
            if (row == B::PairA && col == B::SingleA) return std::sqrt(2.0 * (n - 1.0));
            if (row == B::DoubleA && col == B::SingleA) return mu12;
            if (row == B::PairB && col == B::SingleB) return std::sqrt(n - 2.0);
            if (row == B::DoubleB && col == B::SingleB) return mu12;
            return 0.0;
        }
        if (row == B::Photon2 && col == B::Photon1) return std::sqrt(2.0);
        if (row == B::PhotonSingleA && col == B::SingleA) return 1.0;
        if (row == B::PhotonSingleB && col == B::SingleB) return 1.0;
        return 0.0;
    };
    for (std::size_t i = 0; i < m2.basis.size(); ++i)
        for (std::size_t j = 0; j < m1.basis.size(); ++j) m(i, j) = value(m2.basis[i], m1.basis[j]);
    return m;
}

std::vector<TransitionReport> ground_transitions(const SystemParams& p) {
    const DerivedQuantities d = derive(p);
    const double rn = std::sqrt(p.n());
    const LabeledSpectrum s1 = solve_manifold(p, 1);
    std::vector<TransitionReport> out;
    for (TransitionOp op : {TransitionOp::Dipole, TransitionOp::Photon}) {
        for (S ket : {S::OnePlus, S::OneMinus, S::OneB}) {
            TransitionReport r;
            r.op = op;
            r.bra = ket;  // manifold-1 state
            r.ket = S::Unknown;
            r.model = model_name(p.model);
            if (!label_exists(p, ket)) {
                r.note = "n/a";
                out.push_back(r);
                continue;
            }
            double cf = 0.0;
            if (ket == S::OnePlus) cf = op == TransitionOp::Dipole ? rn * d.h_minus : d.h_plus;
            if (ket == S::OneMinus) cf = op == TransitionOp::Dipole ? rn * d.h_plus : -d.h_minus;
            r.base = cf;
            r.correction = 0.0;
            r.closed_form = cf;
            // mu|0> = sqrt(N)|1_A>, a0+|0> = |1_0>
            double num = 0.0;
            if (ket != S::OneB) {
                const auto v = aligned_vector(p, s1, ket);
                num = op == TransitionOp::Dipole ? rn * (*v)[1] : (*v)[0];
            }
            r.numeric = num;
            r.discrepancy = std::abs(num - cf);
            out.push_back(r);
        }
    }
    return out;
}

std::vector<TransitionReport> table_amplitudes(const SystemParams& p, AmpTable t) {
    std::vector<TransitionReport> out;
    for (S bra : table_bras(t))
        for (S ket : table_kets(t)) {
            TransitionReport r = make_report(p, t, bra, ket);
            Cell c = closed_cell(p, t, bra, ket);
            r.base = c.base;
            r.correction = c.corr;
            r.closed_form = c.closed;
            r.note = c.note;
            out.push_back(r);
        }
    return out;
}

std::vector<TransitionReport> numeric_amplitudes(const SystemParams& p, AmpTable t) {
    std::vector<TransitionReport> out = table_amplitudes(p, t);
    const LabeledSpectrum s1 = solve_manifold(p, 1), s2 = solve_manifold(p, 2);
    const Block* b1 = find_block(s1, table_irrep(t));
    const Block* b2 = find_block(s2, table_irrep(t));
    if (!b1 || !b2) return out;
    const Matrix m = transition_matrix(p, table_op(t), *b2, *b1);
    for (auto& r : out) {
        if (r.note == "n/a") continue;
        const auto v2 = aligned_vector(p, s2, r.bra);
        const auto v1 = aligned_vector(p, s1, r.ket);
        if (!v2 || !v1) continue;
        r.numeric = sandwich(*v2, m, *v1);
        if (r.closed_form) r.discrepancy = std::abs(*r.numeric - *r.closed_form);
    }
    return out;
}

std::vector<TransitionReport> tc_exact_amplitudes(const SystemParams& p, AmpTable t) {
    if (p.model.kind != ModelKind::TavisCummings) throw ContractError("tc_exact_amplitudes: model must be TC");
    std::vector<TransitionReport> out = numeric_amplitudes(p, t);
    const DerivedQuantities d = derive(p);
    const double n = p.n();
    const TransitionOp op = table_op(t);
    if (table_irrep(t) == Irrep::A) {
        const CubicSolution cs = tc_exact(p);
        const std::vector<double> k1p{d.h_plus, d.h_minus}, k1m{-d.h_minus, d.h_plus};
        // rows (2_0, 1_0 1_A, 1_A^2), cols (1_0, 1_A)
        Matrix m(3, 2);
        if (op == TransitionOp::Dipole) {
            m(1, 0) = std::sqrt(n);
            m(2, 1) = std::sqrt(2.0 * (n - 1.0));
        } else {
            m(0, 0) = std::sqrt(2.0);
            m(1, 1) = 1.0;
        }
        for (auto& r : out) {
            if (r.note == "n/a") continue;
            int idx = -1;
            for (int k = 0; k < 3; ++k)
                if (CubicSolution::labels[static_cast<std::size_t>(k)] == r.bra) idx = k;
            if (idx < 0) continue;
            std::vector<double> v = cs.eigenvectors[static_cast<std::size_t>(idx)];
            const auto ref = reference_vector(r.bra, d, n, false);
            if (v[0] * ref[0] + v[1] * ref[1] + v[2] * ref[2] < 0.0)
                for (double& x : v) x = -x;
            r.base = sandwich(v, m, r.ket == S::OnePlus ? k1p : k1m);
            r.correction = 0.0;
            r.closed_form = r.base;
            r.note = "exact";
            if (r.numeric) r.discrepancy = std::abs(*r.numeric - *r.closed_form);
        }
    } else {
        // 2x2 B block has the manifold-1 form with sqrt(N-2) g
        const double db = d.detuning;
        const double rb = std::hypot(db, 2.0 * std::sqrt(n - 2.0) * p.g);
        double hp = std::sqrt(0.5), hm = std::sqrt(0.5);
        if (rb > 0.0) {
            const double big = std::sqrt(0.5 * (1.0 + std::abs(db) / rb));
            const double small = std::sqrt(n - 2.0) * p.g / rb / big;
            hp = db >= 0.0 ? big : small;
            hm = db >= 0.0 ? small : big;
        }
        for (auto& r : out) {
            if (r.note == "n/a") continue;
            double v = 0.0;
            if (op == TransitionOp::Dipole) v = (r.bra == S::OnePlusOneB ? hm : hp) * std::sqrt(n - 2.0);
            else v = r.bra == S::OnePlusOneB ? hp : -hm;
            r.base = v;
            r.correction = 0.0;
            r.closed_form = v;
            r.note = "exact";
            if (r.numeric) r.discrepancy = std::abs(*r.numeric - v);
        }
    }
    return out;
}

std::vector<TransitionReport> table1_rows(const SystemParams& p) {
    const LabeledSpectrum s2 = solve_manifold(p, 2);
    SystemParams q = p;
    const bool tc = p.model.kind == ModelKind::TavisCummings;
    if (tc) q.model = EmitterModel::anharmonic(0.0, -1.0);
    std::vector<PtCorrection> pt;
    std::string note;
    try {
        pt = pt_frequencies(q);
    } catch (const DegeneracyError&) {
        note = "degenerate";
    }
    std::vector<TransitionReport> out;
    for (S l : {S::TwoPlus, S::TwoMinus, S::OnePlusOneMinus, S::TwoDA, S::OnePlusOneB, S::OneMinusOneB, S::TwoDB,
                S::PairC}) {
        TransitionReport r;
        r.table_id = 1;
        r.bra = l;
        r.model = model_name(p.model);
        if (!label_exists(p, l)) {
            r.note = "n/a";
            out.push_back(r);
            continue;
        }
        if (const PtCorrection* c = find_correction(pt, l)) {
            r.base = c->order0;
            r.correction = c->shift;
            r.closed_form = c->frequency();
            if (c->resonant && (l == S::OnePlusOneMinus || l == S::TwoDA)) r.note = "delta=0 row";
        } else {
            r.note = note;
        }
        if (const SpectrumEntry* e = s2.find(l)) {
            r.numeric = e->frequency;
            if (r.closed_form) r.discrepancy = std::abs(*r.numeric - *r.closed_form);
        }
        out.push_back(r);
    }
    return out;
}

namespace {

SymState sym_state_of(BasisState b) {
    using K = SymState::Kind;
    SymState s;
    s.k = 2;
    s.l = 4;
    switch (b) {
        case BasisState::Photon1: s.kind = K::Photon1; break;
        case BasisState::SingleA: s.kind = K::SingleA; break;
        case BasisState::SingleB: s.kind = K::SingleB; break;
        case BasisState::Photon2: s.kind = K::Photon2; break;
        case BasisState::PhotonSingleA: s.kind = K::PhotonSingleA; break;
        case BasisState::PairA: s.kind = K::PairA; break;
        case BasisState::DoubleA: s.kind = K::DoubleA; break;
        case BasisState::PhotonSingleB: s.kind = K::PhotonSingleB; break;
        case BasisState::PairB: s.kind = K::PairB; break;
        case BasisState::DoubleB: s.kind = K::DoubleB; break;
        case BasisState::PairC: s.kind = K::PairC; break;
    }
    return s;
}

CVector embed_entry(const SpectrumEntry& e, const FockBasis& fb) {
    CVector out(fb.size(), Complex(0.0));
    for (std::size_t i = 0; i < e.basis.size(); ++i) {
        if (e.eigenvector[i] == 0.0) continue;
        const CVector v = embed(sym_state_of(e.basis[i]), fb);
        for (std::size_t j = 0; j < v.size(); ++j) out[j] += e.eigenvector[i] * v[j];
    }
    return out;
}

}  // namespace

SelectionRuleReport selection_rule_check(const SystemParams& p, TransitionOp op) {
    if (p.n_emitters > 8) throw CapacityError("selection_rule_check: N > 8");
    const bool dbl = p.model.has_second_level();
    const FockBasis f1(1, p.n_emitters, dbl), f2(2, p.n_emitters, dbl);
    const LabeledSpectrum s1 = solve_manifold(p, 1), s2 = solve_manifold(p, 2);
    OperatorOptions opt;
    opt.mu12 = dbl ? std::sqrt(2.0) * (1.0 + p.model.eff_gamma()) : 0.0;
    const CollectiveOp cop = op == TransitionOp::Dipole ? CollectiveOp::DipoleRaise : CollectiveOp::PhotonCreate;
    SelectionRuleReport rep;
    for (const auto& e1 : s1.entries) {
        const CVector image = apply_collective_operator(cop, embed_entry(e1, f1), f1, f2, opt);
        for (const auto& e2 : s2.entries) {
            const CVector v2 = embed_entry(e2, f2);
            Complex amp = 0.0;
            for (std::size_t j = 0; j < v2.size(); ++j) amp += std::conj(v2[j]) * image[j];
            if (e1.irrep != e2.irrep) {
                rep.max_cross_irrep = std::max(rep.max_cross_irrep, std::abs(amp));
            } else {
                const Matrix m = transition_matrix(p, op, s2.blocks[e2.block], s1.blocks[e1.block]);
                const double red = sandwich(e2.eigenvector, m, e1.eigenvector);
                rep.max_reduced_mismatch = std::max(rep.max_reduced_mismatch, std::abs(amp - red));
            }
        }
    }
    return rep;
}

}  // namespace tcx
