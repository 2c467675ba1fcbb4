#include "tcx/symbasis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace tcx {

std::string flavor_name(Flavor f) { return f == Flavor::Fourier ? "fourier" : "schur-weyl"; }

std::vector<Pair> emitter_pairs(int n) {
    std::vector<Pair> out;
    for (int m = 1; m <= n; ++m)
        for (int q = m + 1; q <= n; ++q) out.emplace_back(m, q);
    return out;
}

namespace {

constexpr double pi = std::numbers::pi;

// Schur-Weyl alpha_n^(k), n 1-based
double sw_alpha(int n, int k) {
    if (n < k) return -1.0;
    if (n == k) return k - 1.0;
    return 0.0;
}

Complex fourier1(int n_emit, int k, int site) {
    return std::polar(1.0 / std::sqrt(static_cast<double>(n_emit)), 2.0 * pi * (k - 1) * site / n_emit);
}

}  // namespace

CoefficientSet1 coeffs1(int n, int k, Flavor flavor) {
    if (n < 2) throw ContractError("coeffs1: needs N >= 2");
    if (k < 2 || k > n) throw std::out_of_range("coeffs1: k out of range [2, N]");
    CoefficientSet1 s{n, k, flavor, CVector(static_cast<std::size_t>(n))};
    for (int i = 1; i <= n; ++i) {
        s.c[i - 1] = flavor == Flavor::Fourier ? fourier1(n, k, i)
                                               : Complex(sw_alpha(i, k) / std::sqrt(k * (k - 1.0)));
    }
    return s;
}

CoefficientSet2B coeffs2B(int n, int k, Flavor flavor) {
    if (n < 3) throw ContractError("coeffs2B: 1_B^2 states do not exist for N < 3");
    if (k < 2 || k > n) throw std::out_of_range("coeffs2B: k out of range [2, N]");
    CoefficientSet2B s;
    s.n = n;
    s.k = k;
    s.flavor = flavor;
    s.pairs = emitter_pairs(n);
    const CoefficientSet1 one = coeffs1(n, k, flavor);
    const double r = std::sqrt(n - 2.0);
    for (auto [m, q] : s.pairs) {
        Complex v;
        if (flavor == Flavor::Fourier) {
            const double th = pi * (k - 1) / n;
            v = std::polar(2.0 / std::sqrt(n * (n - 2.0)), th * (m + q)) * std::cos(th * (m - q));
        } else {
            double a = 0.0;
            if (m < k && q < k) a = -2.0;
            else if (m < k && q == k) a = k - 2.0;
            else if (m < k && q > k) a = -1.0;
            else if (m == k && q > k) a = k - 1.0;
            v = a / std::sqrt((n - 2.0) * k * (k - 1.0));
        }
        const Complex constructive = (one.c[m - 1] + one.c[q - 1]) / r;
        s.constructive_deviation = std::max(s.constructive_deviation, std::abs(v - constructive));
        s.c.push_back(v);
    }
    return s;
}

std::vector<Pair> c_labels(int n) {
    std::vector<Pair> out;
    for (int l = 4; l <= n; ++l)
        for (int k = 2; k < l; ++k) out.emplace_back(k, l);
    return out;
}

CoefficientSet2C coeffs2C(int n, int k, int l, Flavor flavor) {
    if (n < 4) throw ContractError("coeffs2C: C states need N >= 4");
    if (l < 4 || l > n || k < 2 || k >= l) throw std::out_of_range("coeffs2C: (k, l) outside 2 <= k < l, 4 <= l <= N");
    CoefficientSet2C s;
    s.n = n;
    s.k = k;
    s.l = l;
    s.flavor = flavor;
    s.pairs = emitter_pairs(n);
    if (flavor == Flavor::Fourier) {
        if (n != 4) throw ContractError("coeffs2C: Fourier C members are only available for N = 4");
        for (auto [m, q] : s.pairs) {
            const double cs = std::cos(pi * (m - q) / 2.0);
            if (k == 2) {
                s.c.push_back(std::polar(1.0 / (2.0 * std::sqrt(3.0)), pi * (m + q)) * (cs - 1.0));
            } else {
                s.c.push_back(-0.5 * (std::polar(1.0, 1.5 * pi * (m + q)) + std::polar(1.0, 0.5 * pi * (m + q)) * cs));
            }
        }
        return s;
    }
    const double norm = std::sqrt(k * (k - 1.0) * (l - 2.0) * (l - 3.0));
    for (auto [m, q] : s.pairs) {
        const double a = sw_alpha(m, k) * sw_alpha(q, l) + sw_alpha(q, k) * sw_alpha(m, l) -
                         2.0 * (sw_alpha(m, k) * (q == l) + sw_alpha(q, k) * (m == l));
        s.c.push_back(a / norm);
    }
    return s;
}

int SymState::manifold() const {
    switch (kind) {
        case Kind::Ground: return 0;
        case Kind::Photon1:
        case Kind::SingleA:
        case Kind::SingleB: return 1;
        default: return 2;
    }
}

std::string SymState::name() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Ground: return "0";
        case Kind::Photon1: return "1_0";
        case Kind::SingleA: return "1_A";
        case Kind::SingleB: os << "1_B(" << k << ")"; break;
        case Kind::Photon2: return "2_0";
        case Kind::PhotonSingleA: return "1_0 1_A";
        case Kind::PhotonSingleB: os << "1_0 1_B(" << k << ")"; break;
        case Kind::PairA: return "1_A^2";
        case Kind::PairB: os << "1_B(" << k << ")^2"; break;
        case Kind::PairC: os << "1_C(" << k << "," << l << ")^2"; break;
        case Kind::DoubleA: return "2_A";
        case Kind::DoubleB: os << "2_B(" << k << ")"; break;
    }
    return os.str();
}

CVector embed(const SymState& s, const FockBasis& basis) {
    if (s.manifold() != basis.manifold()) throw ContractError("embed: state and basis belong to different manifolds");
    const int n = static_cast<int>(basis.n());
    CVector v(basis.size(), Complex(0.0));
    auto put = [&](int photons, std::vector<std::pair<int, int>> ex, Complex a) {
        Configuration c;
        c.photons = photons;
        c.levels.assign(static_cast<std::size_t>(n), 0);
        for (auto [i, lv] : ex) c.levels[static_cast<std::size_t>(i - 1)] = lv;
        const long idx = basis.index(c);
        if (idx < 0) throw ContractError("embed: " + s.name() + " needs a basis member that is absent");
        v[static_cast<std::size_t>(idx)] += a;
    };
    using K = SymState::Kind;
    const double rn = 1.0 / std::sqrt(static_cast<double>(n));
    switch (s.kind) {
        case K::Ground: put(0, {}, 1.0); break;
        case K::Photon1: put(1, {}, 1.0); break;
        case K::Photon2: put(2, {}, 1.0); break;
        case K::SingleA:
        case K::PhotonSingleA: {
            const int ph = s.kind == K::SingleA ? 0 : 1;
            for (int i = 1; i <= n; ++i) put(ph, {{i, 1}}, rn);
            break;
        }
        case K::SingleB:
        case K::PhotonSingleB: {
            const int ph = s.kind == K::SingleB ? 0 : 1;
            const auto c = coeffs1(n, s.k, s.flavor);
            for (int i = 1; i <= n; ++i) put(ph, {{i, 1}}, c.c[static_cast<std::size_t>(i - 1)]);
            break;
        }
        case K::DoubleA:
            for (int i = 1; i <= n; ++i) put(0, {{i, 2}}, rn);
            break;
        case K::DoubleB: {
            const auto c = coeffs1(n, s.k, s.flavor);
            for (int i = 1; i <= n; ++i) put(0, {{i, 2}}, c.c[static_cast<std::size_t>(i - 1)]);
            break;
        }
        case K::PairA: {
            if (n < 2) throw ContractError("embed: 1_A^2 needs N >= 2");
            const double a = 1.0 / std::sqrt(n * (n - 1.0) / 2.0);
            for (auto [m, q] : emitter_pairs(n)) put(0, {{m, 1}, {q, 1}}, a);
            break;
        }
        case K::PairB: {
            const auto c = coeffs2B(n, s.k, s.flavor);
            for (std::size_t i = 0; i < c.pairs.size(); ++i) put(0, {{c.pairs[i].first, 1}, {c.pairs[i].second, 1}}, c.c[i]);
            break;
        }
        case K::PairC: {
            const auto c = coeffs2C(n, s.k, s.l, s.flavor);
            for (std::size_t i = 0; i < c.pairs.size(); ++i) put(0, {{c.pairs[i].first, 1}, {c.pairs[i].second, 1}}, c.c[i]);
            break;
        }
    }
    return v;
}

namespace {

Complex cdot(const CVector& a, const CVector& b) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

// Rayleigh quotient and eigen-residual norm
std::pair<double, double> measure(CollectiveOp op, const CVector& v, const FockBasis& b) {
    const CVector av = apply_collective_operator(op, v, b);
    const double lam = cdot(v, av).real() / cdot(v, v).real();
    double r = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) r += std::norm(av[i] - lam * v[i]);
    return {lam, std::sqrt(r)};
}

}  // namespace

SuLabelReport su_label_check(int n, const SymState& s) {
    if (n < 1 || n > 8) throw CapacityError("su_label_check: N must be in [1, 8]");
    using K = SymState::Kind;
    const double nn = n;
    SuLabelReport rep;
    rep.state = s.name();
    double j = 0.0, m = 0.0, y = nn / 3.0;
    switch (s.kind) {
        case K::Ground: j = nn / 2; m = -nn / 2; break;
        case K::SingleA: j = nn / 2; m = 1 - nn / 2; break;
        case K::SingleB: j = nn / 2 - 1; m = 1 - nn / 2; break;
        case K::PairA: j = nn / 2; m = 2 - nn / 2; break;
        case K::PairB: j = nn / 2 - 1; m = 2 - nn / 2; break;
        case K::PairC: j = nn / 2 - 2; m = 2 - nn / 2; break;
        case K::DoubleA:
        case K::DoubleB: j = (nn - 1) / 2; m = (1 - nn) / 2; y = nn / 3 - 1; break;
        default: throw ContractError("su_label_check: photonic states carry no emitter labels");
    }
    rep.expected_j_j1 = j * (j + 1);
    rep.expected_m = m;
    rep.expected_y = y;
    const FockBasis basis(s.manifold(), static_cast<std::uint64_t>(n), true);
    const CVector v = embed(s, basis);
    const auto [jj, r1] = measure(CollectiveOp::JSquared0, v, basis);
    const auto [mm, r2] = measure(CollectiveOp::JZero0, v, basis);
    const auto [yy, r3] = measure(CollectiveOp::Hypercharge, v, basis);
    rep.j_j1 = jj;
    rep.m = mm;
    rep.y = yy;
    rep.residual = std::max({r1, r2, r3});
    rep.pass = rep.residual <= 1e-10 && std::abs(jj - rep.expected_j_j1) <= 1e-10 &&
               std::abs(mm - rep.expected_m) <= 1e-10 && std::abs(yy - rep.expected_y) <= 1e-10;
    return rep;
}

}  // namespace tcx
