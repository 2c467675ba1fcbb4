#include "tcx/manifolds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace tcx {

std::string irrep_name(Irrep r) {
    switch (r) {
        case Irrep::A: return "A";
        case Irrep::B: return "B";
        case Irrep::C: return "C";
    }
    return "?";
}

std::string basis_label(BasisState b) {
    switch (b) {
        case BasisState::Photon1: return "1_0";
        case BasisState::SingleA: return "1_A";
        case BasisState::SingleB: return "1_B";
        case BasisState::Photon2: return "2_0";
        case BasisState::PhotonSingleA: return "1_0 1_A";
        case BasisState::PairA: return "1_A^2";
        case BasisState::DoubleA: return "2_A";
        case BasisState::PhotonSingleB: return "1_0 1_B";
        case BasisState::PairB: return "1_B^2";
        case BasisState::DoubleB: return "2_B";
        case BasisState::PairC: return "1_C^2";
    }
    return "?";
}

int photon_number(BasisState b) {
    switch (b) {
        case BasisState::Photon2: return 2;
        case BasisState::Photon1:
        case BasisState::PhotonSingleA:
        case BasisState::PhotonSingleB: return 1;
        default: return 0;
    }
}

std::vector<BasisState> canonical_basis(int manifold, Irrep irrep) {
    using B = BasisState;
    if (manifold == 1) {
        if (irrep == Irrep::A) return {B::Photon1, B::SingleA};
        if (irrep == Irrep::B) return {B::SingleB};
        return {};
    }
    if (irrep == Irrep::A) return {B::Photon2, B::PhotonSingleA, B::PairA, B::DoubleA};
    if (irrep == Irrep::B) return {B::PhotonSingleB, B::PairB, B::DoubleB};
    return {B::PairC};
}

std::string state_label_name(StateLabel s) {
    switch (s) {
        case StateLabel::OnePlus: return "1+";
        case StateLabel::OneMinus: return "1-";
        case StateLabel::OneB: return "1B";
        case StateLabel::TwoPlus: return "2+";
        case StateLabel::TwoMinus: return "2-";
        case StateLabel::OnePlusOneMinus: return "1+1-";
        case StateLabel::TwoDA: return "2DA";
        case StateLabel::OnePlusOneB: return "1+1B";
        case StateLabel::OneMinusOneB: return "1-1B";
        case StateLabel::TwoDB: return "2DB";
        case StateLabel::PairC: return "1C2";
        case StateLabel::Unknown: return "?";
    }
    return "?";
}

std::optional<StateLabel> parse_state_label(const std::string& s) {
    for (int i = 0; i <= static_cast<int>(StateLabel::PairC); ++i) {
        auto l = static_cast<StateLabel>(i);
        if (state_label_name(l) == s) return l;
    }
    return std::nullopt;
}

Irrep irrep_of(StateLabel s) {
    switch (s) {
        case StateLabel::OneB:
        case StateLabel::OnePlusOneB:
        case StateLabel::OneMinusOneB:
        case StateLabel::TwoDB: return Irrep::B;
        case StateLabel::PairC: return Irrep::C;
        default: return Irrep::A;
    }
}

namespace {

Block make_block(int manifold, Irrep irrep, std::vector<BasisState> basis, double mult) {
    Block b;
    b.manifold = manifold;
    b.irrep = irrep;
    b.basis = std::move(basis);
    b.matrix = Matrix(b.basis.size(), b.basis.size());
    b.multiplicity = mult;
    return b;
}

int index_of(const Block& b, BasisState s) {
    auto it = std::find(b.basis.begin(), b.basis.end(), s);
    return it == b.basis.end() ? -1 : static_cast<int>(it - b.basis.begin());
}

void set_diag(Block& b, BasisState s, double v) {
    const int i = index_of(b, s);
    if (i >= 0) b.matrix(i, i) = v;
}

void set_coupling(Block& b, BasisState s, BasisState t, double v) {
    const int i = index_of(b, s), j = index_of(b, t);
    if (i >= 0 && j >= 0) b.matrix(i, j) = b.matrix(j, i) = v;
}

}  // namespace

std::vector<Block> build_blocks_m1(const SystemParams& p) {
    p.validate();
    const double n = p.n();
    std::vector<Block> out;
    Block a = make_block(1, Irrep::A, {BasisState::Photon1, BasisState::SingleA}, 1.0);
    set_diag(a, BasisState::Photon1, p.omega_cav);
    set_diag(a, BasisState::SingleA, p.omega_10);
    set_coupling(a, BasisState::Photon1, BasisState::SingleA, std::sqrt(n) * p.g);
    out.push_back(std::move(a));
    if (p.n_emitters >= 2) {
        Block b = make_block(1, Irrep::B, {BasisState::SingleB}, n - 1.0);
        set_diag(b, BasisState::SingleB, p.omega_10);
        out.push_back(std::move(b));
    }
    return out;
}

std::vector<Block> build_blocks_m2(const SystemParams& p) {
    p.validate();
    using S = BasisState;
    const double n = p.n();
    const bool two = p.model.has_second_level();
    const double w0 = p.omega_cav, w10 = p.omega_10;
    const double w_double = w10 + p.omega_21();
    std::vector<Block> out;

    std::vector<S> abasis{S::Photon2, S::PhotonSingleA};
    if (p.n_emitters >= 2) abasis.push_back(S::PairA);
    if (two) abasis.push_back(S::DoubleA);
    Block a = make_block(2, Irrep::A, abasis, 1.0);
    set_diag(a, S::Photon2, 2.0 * w0);
    set_diag(a, S::PhotonSingleA, w0 + w10);
    set_diag(a, S::PairA, 2.0 * w10);
    set_diag(a, S::DoubleA, w_double);
    set_coupling(a, S::Photon2, S::PhotonSingleA, std::sqrt(2.0 * n) * p.g);
    set_coupling(a, S::PhotonSingleA, S::PairA, std::sqrt(2.0 * (n - 1.0)) * p.g);
    set_coupling(a, S::PhotonSingleA, S::DoubleA, p.g_12());
    out.push_back(std::move(a));

    if (p.n_emitters >= 2) {
        std::vector<S> bbasis{S::PhotonSingleB};
        if (p.n_emitters >= 3) bbasis.push_back(S::PairB);
        if (two) bbasis.push_back(S::DoubleB);
        Block b = make_block(2, Irrep::B, bbasis, n - 1.0);
        set_diag(b, S::PhotonSingleB, w0 + w10);
        set_diag(b, S::PairB, 2.0 * w10);
        set_diag(b, S::DoubleB, w_double);
        set_coupling(b, S::PhotonSingleB, S::PairB, std::sqrt(n - 2.0) * p.g);
        set_coupling(b, S::PhotonSingleB, S::DoubleB, p.g_12());
        out.push_back(std::move(b));
    }
    if (p.n_emitters >= 4) {
        Block c = make_block(2, Irrep::C, {S::PairC}, n * (n - 3.0) / 2.0);
        set_diag(c, S::PairC, 2.0 * w10);
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<Block> build_blocks(const SystemParams& p, int manifold) {
    if (manifold == 1) return build_blocks_m1(p);
    if (manifold == 2) return build_blocks_m2(p);
    throw ContractError("manifold must be 1 or 2");
}

EigenSystem eigensolve_block(const Block& b) {
    if (b.matrix.rows() != b.basis.size()) throw ContractError("block dimension does not match its basis");
    return jacobi_eigen(b.matrix);
}

double photon_content(const std::vector<BasisState>& basis, const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) s += photon_number(basis[i]) * v[i] * v[i];
    return s;
}

double photon_content(const SpectrumEntry& e) { return photon_content(e.basis, e.eigenvector); }

bool uses_resonant_references(const SystemParams& p) {
    if (p.model.kind != ModelKind::Anharmonic || p.model.chi == 0.0 || p.n_emitters < 2) return false;
    const DerivedQuantities d = derive(p);
    return std::abs(d.detuning) < 1e-10 * d.rabi;
}

std::vector<double> reference_vector(StateLabel label, const DerivedQuantities& d, double n, bool resonant) {
    const double hp = d.h_plus, hm = d.h_minus;
    const double s2 = std::sqrt(2.0);
    const double rn = std::sqrt((n - 1.0) / n), in = 1.0 / std::sqrt(n);
    switch (label) {
        case StateLabel::OnePlus: return {hp, hm};
        case StateLabel::OneMinus: return {-hm, hp};
        case StateLabel::OneB: return {1.0};
        case StateLabel::TwoPlus: return {hp * hp, s2 * hp * hm, hm * hm * rn, hm * hm * in};
        case StateLabel::TwoMinus: return {hm * hm, -s2 * hp * hm, hp * hp * rn, hp * hp * in};
        case StateLabel::OnePlusOneMinus:
            if (resonant) {
                const double z = std::sqrt(2.0 * n - 1.0);
                return {std::sqrt(n - 1.0) / z, 0.0, -std::sqrt(n) / z, 0.0};
            }
            return {-s2 * hp * hm, hp * hp - hm * hm, s2 * hp * hm * rn, s2 * hp * hm * in};
        case StateLabel::TwoDA:
            if (resonant) {
                const double z = std::sqrt(2.0 * n * (2.0 * n - 1.0));
                return {-std::sqrt(n) / z, 0.0, -std::sqrt(n - 1.0) / z, std::sqrt((2.0 * n - 1.0) / (2.0 * n))};
            }
            return {0.0, 0.0, -in, rn};
        case StateLabel::OnePlusOneB: {
            const double rb = std::sqrt(std::max(n - 2.0, 0.0) / n), tb = std::sqrt(2.0 / n);
            return {hp, hm * rb, hm * tb};
        }
        case StateLabel::OneMinusOneB: {
            const double rb = std::sqrt(std::max(n - 2.0, 0.0) / n), tb = std::sqrt(2.0 / n);
            return {-hm, hp * rb, hp * tb};
        }
        case StateLabel::TwoDB: return {0.0, -std::sqrt(2.0 / n), std::sqrt(std::max(n - 2.0, 0.0) / n)};
        case StateLabel::PairC: return {1.0};
        case StateLabel::Unknown: break;
    }
    throw ContractError("reference_vector: unknown label");
}

std::vector<double> restrict_to(const std::vector<double>& full, int manifold, Irrep irrep,
                                const std::vector<BasisState>& basis) {
    const auto canon = canonical_basis(manifold, irrep);
    std::vector<double> out(basis.size(), 0.0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        auto it = std::find(canon.begin(), canon.end(), basis[i]);
        if (it == canon.end()) throw ContractError("restrict_to: basis state outside the canonical basis");
        out[i] = full[static_cast<std::size_t>(it - canon.begin())];
    }
    return out;
}

std::vector<Reference> block_references(const SystemParams& p, const Block& b) {
    std::vector<StateLabel> labels;
    const bool tc = !p.model.has_second_level();
    if (b.manifold == 1) {
        if (b.irrep == Irrep::A) labels = {StateLabel::OnePlus, StateLabel::OneMinus};
        else labels = {StateLabel::OneB};
    } else if (b.irrep == Irrep::A) {
        labels = {StateLabel::TwoPlus, StateLabel::TwoMinus, StateLabel::OnePlusOneMinus};
        if (!tc) labels.push_back(StateLabel::TwoDA);
    } else if (b.irrep == Irrep::B) {
        labels = {StateLabel::OnePlusOneB, StateLabel::OneMinusOneB};
        if (!tc) labels.push_back(StateLabel::TwoDB);
    } else {
        labels = {StateLabel::PairC};
    }
    const DerivedQuantities d = derive(p);
    const bool resonant = uses_resonant_references(p);
    std::vector<Reference> refs;
    for (StateLabel l : labels) {
        auto v = restrict_to(reference_vector(l, d, p.n(), resonant), b.manifold, b.irrep, b.basis);
        if (norm(v) < 1e-12) continue;  // state absent at this N
        normalize(v);
        refs.push_back({l, std::move(v)});
    }
    return refs;
}

Assignment best_assignment(const std::vector<std::vector<double>>& weight) {
    Assignment best;
    const std::size_t m = weight.size();
    if (m == 0) {
        best.score = 0.0;
        return best;
    }
    const std::size_t r = weight[0].size();
    std::vector<int> cur(m, -1);
    std::vector<bool> used(r, false);
    double best_score = -1.0, second = -1.0;
    std::vector<int> best_map;
    std::function<void(std::size_t, double)> rec = [&](std::size_t i, double acc) {
        if (i == m) {
            if (acc > best_score) {
                second = best_score;
                best_score = acc;
                best_map = cur;
            } else if (acc > second) {
                second = acc;
            }
            return;
        }
        for (std::size_t j = 0; j < r; ++j) {
            if (used[j]) continue;
            used[j] = true;
            cur[i] = static_cast<int>(j);
            rec(i + 1, acc + weight[i][j]);
            used[j] = false;
        }
    };
    rec(0, 0.0);
    best.ref_of = best_map.empty() ? std::vector<int>(m, -1) : best_map;
    best.score = best_score;
    best.runner_up = second;
    return best;
}

namespace {

// Replaces each exactly degenerate cluster of eigenvectors by the orthonormalized
// projections of the references onto it, so labels do not depend on rounding.
void canonicalize_clusters(EigenSystem& es, const std::vector<Reference>& refs, double tol) {
    const std::size_t n = es.values.size();
    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start + 1;
        while (end < n && es.values[end] - es.values[end - 1] <= tol) ++end;
        const std::size_t k = end - start;
        if (k > 1) {
            std::vector<std::vector<double>> cols;
            for (std::size_t j = start; j < end; ++j) cols.push_back(es.vectors.column(j));
            std::vector<std::pair<double, std::vector<double>>> proj;
            for (const auto& ref : refs) {
                std::vector<double> pv(n, 0.0);
                for (const auto& c : cols) {
                    const double w = dot(c, ref.vec);
                    for (std::size_t i = 0; i < n; ++i) pv[i] += w * c[i];
                }
                proj.emplace_back(norm(pv), pv);
            }
            std::stable_sort(proj.begin(), proj.end(), [](auto& x, auto& y) { return x.first > y.first; });
            std::vector<std::vector<double>> basis;
            for (auto& [w, pv] : proj) {
                if (basis.size() == k) break;
                if (w < 1e-6) break;
                for (const auto& q : basis) {
                    const double c = dot(q, pv);
                    for (std::size_t i = 0; i < n; ++i) pv[i] -= c * q[i];
                }
                if (norm(pv) < 1e-6) continue;
                normalize(pv);
                basis.push_back(pv);
            }
            if (basis.size() == k) {
                for (std::size_t j = 0; j < k; ++j) {
                    fix_sign(basis[j]);
                    for (std::size_t i = 0; i < n; ++i) es.vectors(i, start + j) = basis[j][i];
                }
            }
        }
        start = end;
    }
}

}  // namespace

LabeledSpectrum solve_manifold(const SystemParams& p, int manifold) {
    LabeledSpectrum out;
    out.manifold = manifold;
    out.blocks = build_blocks(p, manifold);
    for (std::size_t bi = 0; bi < out.blocks.size(); ++bi) {
        const Block& b = out.blocks[bi];
        EigenSystem es = eigensolve_block(b);
        const auto refs = block_references(p, b);
        const double scale = std::max(1.0, b.matrix.frobenius_norm());
        canonicalize_clusters(es, refs, 1e-12 * scale);

        const std::size_t dim = es.values.size();
        std::vector<std::vector<double>> w(dim, std::vector<double>(refs.size(), 0.0));
        for (std::size_t j = 0; j < dim; ++j) {
            const auto v = es.vectors.column(j);
            for (std::size_t r = 0; r < refs.size(); ++r) {
                const double o = dot(v, refs[r].vec);
                w[j][r] = o * o;
            }
        }
        Assignment as;
        if (refs.size() >= dim) as = best_assignment(w);
        for (std::size_t j = 0; j < dim; ++j) {
            SpectrumEntry e;
            e.manifold = manifold;
            e.irrep = b.irrep;
            e.block = bi;
            e.frequency = es.values[j];
            e.multiplicity = b.multiplicity;
            e.basis = b.basis;
            e.eigenvector = es.vectors.column(j);
            if (!as.ref_of.empty() && as.ref_of[j] >= 0) e.label = refs[static_cast<std::size_t>(as.ref_of[j])].label;
            e.photon_content = photon_content(e);
            out.entries.push_back(std::move(e));
        }
    }
    return out;
}

const SpectrumEntry* LabeledSpectrum::find(StateLabel s) const {
    for (const auto& e : entries)
        if (e.label == s) return &e;
    return nullptr;
}

double LabeledSpectrum::total_multiplicity() const {
    double s = 0.0;
    for (const auto& e : entries) s += e.multiplicity;
    return s;
}

}  // namespace tcx
