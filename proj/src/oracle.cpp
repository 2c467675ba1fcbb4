#include "tcx/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "tcx/manifolds.hpp"

namespace tcx {

int Configuration::excitations() const {
    int s = photons;
    for (int l : levels) s += l;
    return s;
}

std::uint64_t Configuration::key() const {
    std::uint64_t k = static_cast<std::uint64_t>(photons);
    for (std::size_t i = 0; i < levels.size(); ++i) k |= static_cast<std::uint64_t>(levels[i]) << (3 + 2 * i);
    return k;
}

Configuration Configuration::from_key(std::uint64_t key, std::size_t n) {
    Configuration c;
    c.photons = static_cast<int>(key & 7u);
    c.levels.resize(n);
    for (std::size_t i = 0; i < n; ++i) c.levels[i] = static_cast<int>((key >> (3 + 2 * i)) & 3u);
    return c;
}

FockBasis::FockBasis(int manifold, std::uint64_t n, bool with_double)
    : manifold_(manifold), n_(n), with_double_(with_double) {
    if (manifold < 0 || manifold > 2) throw ContractError("FockBasis: manifold must be 0, 1 or 2");
    if (n < 1 || n > 30) throw CapacityError("FockBasis: N must be in [1, 30]");
    const std::size_t nn = static_cast<std::size_t>(n);
    auto push = [&](int photons, std::vector<std::pair<std::size_t, int>> ex) {
        Configuration c;
        c.photons = photons;
        c.levels.assign(nn, 0);
        for (auto [i, l] : ex) c.levels[i] = l;
        index_.emplace(c.key(), members_.size());
        members_.push_back(std::move(c));
    };
    if (manifold == 0) {
        push(0, {});
    } else if (manifold == 1) {
        push(1, {});
        for (std::size_t i = 0; i < nn; ++i) push(0, {{i, 1}});
    } else {
        push(2, {});
        for (std::size_t i = 0; i < nn; ++i) push(1, {{i, 1}});
        for (std::size_t i = 0; i < nn; ++i)
            for (std::size_t j = i + 1; j < nn; ++j) push(0, {{i, 1}, {j, 1}});
        if (with_double)
            for (std::size_t i = 0; i < nn; ++i) push(0, {{i, 2}});
    }
}

std::string FockBasis::label(std::size_t idx) const {
    const Configuration& c = members_[idx];
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
        if (!first) os << ' ';
        first = false;
    };
    if (c.photons > 0) {
        sep();
        os << c.photons << "_0";
    }
    for (std::size_t i = 0; i < c.levels.size(); ++i)
        if (c.levels[i] > 0) {
            sep();
            os << c.levels[i] << '_' << (i + 1);
        }
    if (first) os << "0";
    return os.str();
}

long FockBasis::index(const Configuration& c) const {
    if (c.levels.size() != n_) return -1;
    auto it = index_.find(c.key());
    return it == index_.end() ? -1 : static_cast<long>(it->second);
}

namespace {

using Sparse = std::map<std::uint64_t, Complex>;

struct Ops {
    std::size_t n;

    void add(Sparse& s, std::uint64_t k, Complex a) const {
        if (a != Complex(0.0)) s[k] += a;
    }

    // sum_i coef |to><from| on emitter i
    Sparse emitter(const Sparse& in, int from, int to, double coef) const {
        Sparse out;
        for (const auto& [k, a] : in) {
            Configuration c = Configuration::from_key(k, n);
            for (std::size_t i = 0; i < n; ++i) {
                if (c.levels[i] != from) continue;
                c.levels[i] = to;
                add(out, c.key(), coef * a);
                c.levels[i] = from;
            }
        }
        return out;
    }

    Sparse photon(const Sparse& in, bool create) const {
        Sparse out;
        for (const auto& [k, a] : in) {
            Configuration c = Configuration::from_key(k, n);
            if (create) {
                if (c.photons >= 7) throw CapacityError("photon count overflow");
                c.photons += 1;
                add(out, c.key(), std::sqrt(static_cast<double>(c.photons)) * a);
            } else if (c.photons > 0) {
                const double f = std::sqrt(static_cast<double>(c.photons));
                c.photons -= 1;
                add(out, c.key(), f * a);
            }
        }
        return out;
    }

    // diagonal: sum_i (w_upper n_upper - w_lower n_lower) style via a level weight table
    Sparse diag(const Sparse& in, double w0, double w1, double w2) const {
        Sparse out;
        for (const auto& [k, a] : in) {
            Configuration c = Configuration::from_key(k, n);
            double s = 0.0;
            for (int l : c.levels) s += (l == 0 ? w0 : l == 1 ? w1 : w2);
            add(out, k, s * a);
        }
        return out;
    }

    static Sparse axpy(const Sparse& x, Complex alpha, const Sparse& y) {
        Sparse out = x;
        for (const auto& [k, a] : y) out[k] += alpha * a;
        return out;
    }

    Sparse apply(CollectiveOp op, const Sparse& s, double mu12) const {
        switch (op) {
            case CollectiveOp::JPlus0: return emitter(s, 0, 1, 1.0);
            case CollectiveOp::JMinus0: return emitter(s, 1, 0, 1.0);
            case CollectiveOp::JZero0: return diag(s, -0.5, 0.5, 0.0);
            case CollectiveOp::JPlus1: return emitter(s, 1, 2, 1.0);
            case CollectiveOp::JMinus1: return emitter(s, 2, 1, 1.0);
            case CollectiveOp::JZero1: return diag(s, 0.0, -0.5, 0.5);
            case CollectiveOp::JSquared0: {
                const Sparse jz = apply(CollectiveOp::JZero0, s, mu12);
                const Sparse jz2 = apply(CollectiveOp::JZero0, jz, mu12);
                const Sparse pm = apply(CollectiveOp::JPlus0, apply(CollectiveOp::JMinus0, s, mu12), mu12);
                const Sparse mp = apply(CollectiveOp::JMinus0, apply(CollectiveOp::JPlus0, s, mu12), mu12);
                return axpy(jz2, 0.5, axpy(pm, 1.0, mp));
            }
            case CollectiveOp::Hypercharge: {
                // (2/3)([J-^(1), J+^(1)] - J0^(0))
                const Sparse mp = apply(CollectiveOp::JMinus1, apply(CollectiveOp::JPlus1, s, mu12), mu12);
                const Sparse pm = apply(CollectiveOp::JPlus1, apply(CollectiveOp::JMinus1, s, mu12), mu12);
                const Sparse jz = apply(CollectiveOp::JZero0, s, mu12);
                Sparse r = axpy(axpy(mp, -1.0, pm), -1.0, jz);
                for (auto& [k, a] : r) a *= 2.0 / 3.0;
                return r;
            }
            case CollectiveOp::DipoleRaise: return axpy(emitter(s, 0, 1, 1.0), 1.0, emitter(s, 1, 2, mu12));
            case CollectiveOp::DipoleLower: return axpy(emitter(s, 1, 0, 1.0), 1.0, emitter(s, 2, 1, mu12));
            case CollectiveOp::PhotonCreate: return photon(s, true);
            case CollectiveOp::PhotonAnnihilate: return photon(s, false);
        }
        throw ContractError("unknown operator");
    }
};

}  // namespace

std::string op_name(CollectiveOp op) {
    switch (op) {
        case CollectiveOp::JPlus0: return "J+(0)";
        case CollectiveOp::JMinus0: return "J-(0)";
        case CollectiveOp::JZero0: return "J0(0)";
        case CollectiveOp::JPlus1: return "J+(1)";
        case CollectiveOp::JMinus1: return "J-(1)";
        case CollectiveOp::JZero1: return "J0(1)";
        case CollectiveOp::JSquared0: return "J^2(0)";
        case CollectiveOp::Hypercharge: return "Y";
        case CollectiveOp::DipoleRaise: return "mu+";
        case CollectiveOp::DipoleLower: return "mu-";
        case CollectiveOp::PhotonCreate: return "a0+";
        case CollectiveOp::PhotonAnnihilate: return "a0";
    }
    return "?";
}

CVector apply_collective_operator(CollectiveOp op, const CVector& v, const FockBasis& from, const FockBasis& to,
                                  const OperatorOptions& opt) {
    if (v.size() != from.size()) throw ContractError("apply_collective_operator: vector length mismatch");
    if (from.n() != to.n()) throw ContractError("apply_collective_operator: bases for different N");
    Ops ops{static_cast<std::size_t>(from.n())};
    Sparse s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != Complex(0.0)) s[from.member(i).key()] += v[i];
    const Sparse r = ops.apply(op, s, opt.mu12);
    CVector out(to.size(), Complex(0.0));
    for (const auto& [k, a] : r) {
        const long idx = to.index(Configuration::from_key(k, ops.n));
        if (idx < 0) {
            if (std::abs(a) > 1e-14)
                throw ContractError("operator " + op_name(op) + " maps outside the target manifold basis");
            continue;
        }
        out[static_cast<std::size_t>(idx)] += a;
    }
    return out;
}

CVector apply_collective_operator(CollectiveOp op, const CVector& v, const FockBasis& basis,
                                  const OperatorOptions& opt) {
    return apply_collective_operator(op, v, basis, basis, opt);
}

FullHamiltonian build_full(const SystemParams& p, int manifold) {
    p.validate();
    if (p.n_emitters > 10) throw CapacityError("build_full: N > 10 exceeds the dense oracle cap");
    if (manifold != 1 && manifold != 2) throw ContractError("build_full: manifold must be 1 or 2");
    FockBasis basis(manifold, p.n_emitters, p.model.has_second_level());
    const std::size_t dim = basis.size();
    Matrix h(dim, dim);
    const double level_energy[3] = {0.0, p.omega_10, p.omega_10 + p.omega_21()};
    const double g01 = p.g, g12 = p.g_12();
    for (std::size_t col = 0; col < dim; ++col) {
        Configuration c = basis.member(col);
        double e = p.omega_cav * c.photons;
        for (int l : c.levels) e += level_energy[l];
        h(col, col) = e;
        // a_0 sigma^+ terms (photon absorbed by emitter i); the transpose fills the rest
        if (c.photons == 0) continue;
        const double bose = std::sqrt(static_cast<double>(c.photons));
        for (std::size_t i = 0; i < c.levels.size(); ++i) {
            const int l = c.levels[i];
            if (l == 2) continue;
            const double gi = (l == 0) ? g01 : g12;
            if (gi == 0.0) continue;
            Configuration d = c;
            d.photons -= 1;
            d.levels[i] = l + 1;
            const long row = basis.index(d);
            if (row < 0) continue;  // |2_i> absent in TC
            h(static_cast<std::size_t>(row), col) += gi * bose;
            h(col, static_cast<std::size_t>(row)) += gi * bose;
        }
    }
    return {std::move(basis), std::move(h)};
}

CVector apply_full(const FullHamiltonian& h, const CVector& v) {
    const std::size_t n = h.matrix.rows();
    CVector out(n, Complex(0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i] += h.matrix(i, j) * v[j];
    return out;
}

std::vector<Cluster> cluster_values(const std::vector<double>& sorted, double tol) {
    std::vector<Cluster> out;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i + 1;
        double sum = sorted[i];
        while (j < sorted.size() && sorted[j] - sorted[j - 1] <= tol) sum += sorted[j++];
        out.push_back({sum / static_cast<double>(j - i), static_cast<double>(j - i)});
        i = j;
    }
    return out;
}

std::string ModelSpec::name() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::TC: return "tc";
        case Kind::HO: return "ho";
        case Kind::MorseFixed: os << "morse(" << chi << ")"; return os.str();
        case Kind::MorseRandom: return "morse(random)";
    }
    return "?";
}

namespace {

std::vector<double> expanded_reduced(const LabeledSpectrum& s) {
    std::vector<double> out;
    for (const auto& e : s.entries) {
        const auto k = static_cast<std::size_t>(std::llround(e.multiplicity));
        for (std::size_t i = 0; i < k; ++i) out.push_back(e.frequency);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

CertificationReport certify(const SystemParams& p) {
    if (p.n_emitters > 8) throw CapacityError("certify: N > 8");
    CertificationReport rep;
    rep.params = p;
    const double n = p.n();
    rep.mult_b = n - 1.0;
    rep.mult_c = p.n_emitters >= 4 ? n * (n - 3.0) / 2.0 : 0.0;
    const double tol_dev = 1e-9 * p.omega_10, tol_cluster = 1e-8 * p.omega_10;
    std::ostringstream fail;

    for (int m = 1; m <= 2; ++m) {
        const LabeledSpectrum red = solve_manifold(p, m);
        for (const auto& b : red.blocks) {
            const double want = b.irrep == Irrep::A ? 1.0 : b.irrep == Irrep::B ? rep.mult_b : rep.mult_c;
            if (b.multiplicity != want) fail << "manifold " << m << " irrep " << irrep_name(b.irrep) << " multiplicity "
                                             << b.multiplicity << " expected " << want << "; ";
        }
        const std::vector<double> rv = expanded_reduced(red);
        const FullHamiltonian full = build_full(p, m);
        const EigenSystem es = jacobi_eigen(full.matrix);
        if (rv.size() != es.values.size()) {
            fail << "manifold " << m << " state count " << rv.size() << " vs full " << es.values.size() << "; ";
            continue;
        }
        for (std::size_t i = 0; i < rv.size(); ++i)
            rep.max_deviation = std::max(rep.max_deviation, std::abs(rv[i] - es.values[i]));
        const auto cf = cluster_values(es.values, tol_cluster);
        const auto cr = cluster_values(rv, tol_cluster);
        if (m == 2) {
            rep.full_dim_m2 = es.values.size();
            rep.reduced_count_m2 = red.total_multiplicity();
            rep.clusters_full_m2 = cf;
            rep.clusters_reduced_m2 = cr;
        }
        if (cf.size() != cr.size()) {
            fail << "manifold " << m << " cluster count " << cr.size() << " vs full " << cf.size() << "; ";
            continue;
        }
        for (std::size_t i = 0; i < cf.size(); ++i) {
            if (cf[i].count != cr[i].count || std::abs(cf[i].value - cr[i].value) > tol_dev) {
                fail << "manifold " << m << " cluster at " << cf[i].value << " (x" << cf[i].count << ") vs reduced "
                     << cr[i].value << " (x" << cr[i].count << "); ";
                break;
            }
        }
    }
    if (rep.max_deviation > tol_dev) fail << "max deviation " << rep.max_deviation << " above 1e-9; ";
    rep.failure = fail.str();
    rep.pass = rep.failure.empty();
    return rep;
}

namespace {

EmitterModel model_from(const ModelSpec& m, std::mt19937_64& rng) {
    switch (m.kind) {
        case ModelSpec::Kind::TC: return EmitterModel::tavis_cummings();
        case ModelSpec::Kind::HO: return EmitterModel::harmonic();
        case ModelSpec::Kind::MorseFixed: return build_morse_model(m.chi);
        case ModelSpec::Kind::MorseRandom: {
            std::uniform_real_distribution<double> u(0.0, 0.3);
            return build_morse_model(u(rng));
        }
    }
    return EmitterModel::harmonic();
}

double min_cluster_gap(const SystemParams& p) {
    double gap = 1e300;
    for (int m = 1; m <= 2; ++m) {
        const auto v = expanded_reduced(solve_manifold(p, m));
        const auto c = cluster_values(v, 1e-8 * p.omega_10);
        for (std::size_t i = 1; i < c.size(); ++i) gap = std::min(gap, c[i].value - c[i - 1].value);
    }
    return gap;
}

CertificationRun run_one(std::uint64_t n, const ModelSpec& model, std::size_t model_idx, int draw, std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(model_idx),
                      static_cast<std::uint32_t>(draw)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> ud(-0.3, 0.3), ug(0.01, 0.2);
    CertificationRun run;
    run.n = n;
    run.model = model;
    run.draw = draw;
    SystemParams p;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        p = SystemParams{};
        p.n_emitters = n;
        p.omega_10 = 1.0;
        p.omega_cav = 1.0 + ud(rng);
        p.g = ug(rng) / std::sqrt(static_cast<double>(n));
        p.model = model_from(model, rng);
        if (min_cluster_gap(p) >= 1e-6) break;
        ++run.redraws;
    }
    run.report = certify(p);
    return run;
}

}  // namespace

std::vector<CertificationRun> certify_grid(std::uint64_t n_max, const std::vector<ModelSpec>& models, int draws,
                                           std::uint64_t seed, bool parallel) {
    if (n_max < 1 || n_max > 8) throw CapacityError("certify_grid: n_max must be in [1, 8]");
    if (draws < 1) throw ContractError("certify_grid: draws must be >= 1");
    const std::size_t per_n = models.size() * static_cast<std::size_t>(draws);
    const std::size_t total = static_cast<std::size_t>(n_max) * per_n;
    std::vector<CertificationRun> out(total);
    auto job = [&](std::size_t t) {
        const std::uint64_t n = t / per_n + 1;
        const std::size_t rest = t % per_n;
        const std::size_t mi = rest / static_cast<std::size_t>(draws);
        const int d = static_cast<int>(rest % static_cast<std::size_t>(draws));
        try {
            out[t] = run_one(n, models[mi], mi, d, seed);
        } catch (const std::exception& e) {
            out[t].n = n;
            out[t].model = models[mi];
            out[t].draw = d;
            out[t].report.failure = e.what();
        }
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long t = 0; t < static_cast<long>(total); ++t) job(static_cast<std::size_t>(t));
    } else {
        for (std::size_t t = 0; t < total; ++t) job(t);
    }
    return out;
}

}  // namespace tcx
