#include "tcx/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

namespace tcx {

std::string sweep_var_name(SweepVar v) {
    switch (v) {
        case SweepVar::N: return "n";
        case SweepVar::Detuning: return "detuning";
        case SweepVar::Chi: return "chi";
    }
    return "?";
}

std::optional<SweepVar> parse_sweep_var(const std::string& s) {
    if (s == "n") return SweepVar::N;
    if (s == "detuning") return SweepVar::Detuning;
    if (s == "chi") return SweepVar::Chi;
    return std::nullopt;
}

void SweepSpec::validate() const {
    if (points < 2) throw ContractError("sweep: points must be >= 2");
    if (!std::isfinite(from) || !std::isfinite(to)) throw ContractError("sweep: non-finite range");
    if (from == to) throw ContractError("sweep: zero-width range");
    if (manifold != 1 && manifold != 2) throw ContractError("sweep: manifold must be 1 or 2");
    if (log_grid && (from <= 0.0 || to <= 0.0)) throw ContractError("sweep: log grid needs positive endpoints");
    if (coupling == CouplingMode::FixCollective && !(collective_g >= 0.0)) throw ContractError("sweep: collective_g < 0");
    switch (variable) {
        case SweepVar::N:
            if (std::min(from, to) < 1.0) throw ContractError("sweep: N must be >= 1");
            break;
        case SweepVar::Chi:
            if (std::min(from, to) < 0.0 || std::max(from, to) > 2.0)
                throw ContractError("sweep: chi outside the Morse domain [0, 2]");
            break;
        case SweepVar::Detuning: break;
    }
    base.validate();
}

std::vector<double> sweep_grid(const SweepSpec& s) {
    s.validate();
    std::vector<double> g(s.points);
    const double m = static_cast<double>(s.points - 1);
    for (std::size_t i = 0; i < s.points; ++i) {
        const double t = static_cast<double>(i) / m;
        g[i] = s.log_grid ? std::exp(std::log(s.from) + t * (std::log(s.to) - std::log(s.from))) : s.from + t * (s.to - s.from);
    }
    g.front() = s.from;
    g.back() = s.to;
    return g;
}

SystemParams params_at(const SweepSpec& s, double value) {
    SystemParams p = s.base;
    switch (s.variable) {
        case SweepVar::N: p.n_emitters = static_cast<std::uint64_t>(std::llround(value)); break;
        case SweepVar::Detuning: p.omega_cav = p.omega_10 + value; break;
        case SweepVar::Chi: p.model = build_morse_model(value); break;
    }
    if (s.coupling == CouplingMode::FixCollective) p = with_collective_coupling(p, s.collective_g);
    return p;
}

const TrackedCurve* SweepResult::curve(StateLabel s) const {
    for (const auto& c : curves)
        if (c.label == s) return &c;
    return nullptr;
}

namespace {

const Block* block_of(const LabeledSpectrum& s, Irrep r, std::size_t* index = nullptr) {
    for (std::size_t i = 0; i < s.blocks.size(); ++i)
        if (s.blocks[i].irrep == r) {
            if (index) *index = i;
            return &s.blocks[i];
        }
    return nullptr;
}

std::vector<std::size_t> entries_of(const LabeledSpectrum& s, std::size_t block) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < s.entries.size(); ++i)
        if (s.entries[i].block == block) out.push_back(i);
    return out;
}

template <class F>
void for_each_point(std::size_t n, bool parallel, F&& f) {
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long i = 0; i < static_cast<long>(n); ++i) {
        try {
            f(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(tcx_sweep_err)
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

}  // namespace

std::vector<std::string> track_labels(std::vector<LabeledSpectrum>& spectra, const std::vector<double>& grid) {
    std::vector<std::string> warnings;
    for (std::size_t i = 1; i < spectra.size(); ++i) {
        LabeledSpectrum& cur = spectra[i];
        const LabeledSpectrum& prev = spectra[i - 1];
        for (std::size_t bi = 0; bi < cur.blocks.size(); ++bi) {
            std::size_t pbi = 0;
            const Block* pb = block_of(prev, cur.blocks[bi].irrep, &pbi);
            if (!pb || pb->basis != cur.blocks[bi].basis) continue;  // new or resized block keeps its reference labels
            const auto ci = entries_of(cur, bi), pi = entries_of(prev, pbi);
            std::vector<std::vector<double>> w(ci.size(), std::vector<double>(pi.size()));
            for (std::size_t j = 0; j < ci.size(); ++j)
                for (std::size_t k = 0; k < pi.size(); ++k) {
                    const double o = dot(cur.entries[ci[j]].eigenvector, prev.entries[pi[k]].eigenvector);
                    w[j][k] = o * o;
                }
            Assignment as = best_assignment(w);
            if (as.runner_up >= 0.0 && as.score - as.runner_up < 1e-6) {
                std::ostringstream os;
                os.precision(17);
                os << "tracking ambiguity at " << grid[i] << " in irrep " << irrep_name(cur.blocks[bi].irrep)
                   << "; resolved by frequency proximity";
                warnings.push_back(os.str());
                double span = 1.0;
                for (std::size_t j = 0; j < ci.size(); ++j)
                    for (std::size_t k = 0; k < pi.size(); ++k)
                        span = std::max(span, 1.0 + std::abs(cur.entries[ci[j]].frequency - prev.entries[pi[k]].frequency));
                for (std::size_t j = 0; j < ci.size(); ++j)
                    for (std::size_t k = 0; k < pi.size(); ++k)
                        w[j][k] = span - std::abs(cur.entries[ci[j]].frequency - prev.entries[pi[k]].frequency);
                as = best_assignment(w);
            }
            for (std::size_t j = 0; j < ci.size(); ++j)
                cur.entries[ci[j]].label = prev.entries[pi[static_cast<std::size_t>(as.ref_of[j])]].label;
        }
    }
    return warnings;
}

SweepResult run_sweep(const SweepSpec& s, bool parallel) {
    SweepResult r;
    r.spec = s;
    r.grid = sweep_grid(s);
    r.spectra.resize(r.grid.size());
    for_each_point(r.grid.size(), parallel, [&](std::size_t i) { r.spectra[i] = solve_manifold(params_at(s, r.grid[i]), s.manifold); });
    r.warnings = track_labels(r.spectra, r.grid);

    std::map<StateLabel, std::size_t> slot;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < r.spectra.size(); ++i) {
        for (const auto& e : r.spectra[i].entries) {
            if (e.label == StateLabel::Unknown) continue;
            auto it = slot.find(e.label);
            if (it == slot.end()) {
                TrackedCurve c;
                c.irrep = e.irrep;
                c.block = e.block;
                c.label = e.label;
                c.frequency.assign(r.grid.size(), nan);
                c.photon_content.assign(r.grid.size(), nan);
                it = slot.emplace(e.label, r.curves.size()).first;
                r.curves.push_back(std::move(c));
            }
            r.curves[it->second].frequency[i] = e.frequency;
            r.curves[it->second].photon_content[i] = e.photon_content;
        }
    }
    return r;
}

double GapCurve::loglog_slope(double n_lo, double n_hi) const {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i] < n_lo || n[i] > n_hi || !(gap[i] > 0.0)) continue;
        const double x = std::log(n[i]), y = std::log(gap[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2) return std::numeric_limits<double>::quiet_NaN();
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

std::vector<GapCurve> tc_ho_gap(const std::vector<double>& n_values, const SystemParams& base, double collective_g,
                                bool parallel) {
    const std::size_t m = n_values.size();
    std::vector<LabeledSpectrum> tc(m), ho(m);
    for_each_point(m, parallel, [&](std::size_t i) {
        SystemParams p = base;
        p.n_emitters = static_cast<std::uint64_t>(std::llround(n_values[i]));
        p = with_collective_coupling(p, collective_g);
        p.model = EmitterModel::tavis_cummings();
        tc[i] = solve_manifold(p, 2);
        p.model = EmitterModel::harmonic();
        ho[i] = solve_manifold(p, 2);
    });
    std::vector<GapCurve> out;
    for (StateLabel l : {StateLabel::TwoPlus, StateLabel::TwoMinus, StateLabel::OnePlusOneMinus, StateLabel::OnePlusOneB,
                         StateLabel::OneMinusOneB, StateLabel::PairC}) {
        GapCurve c;
        c.label = l;
        for (std::size_t i = 0; i < m; ++i) {
            const SpectrumEntry* a = tc[i].find(l);
            const SpectrumEntry* b = ho[i].find(l);
            if (!a || !b) continue;
            c.n.push_back(n_values[i]);
            c.gap.push_back(std::abs(a->frequency - b->frequency));
        }
        if (!c.n.empty()) out.push_back(std::move(c));
    }
    return out;
}

std::string resonance_type_name(ResonanceType t) {
    switch (t) {
        case ResonanceType::RabiVsChi: return "rabi-vs-chi";
        case ResonanceType::NegativeDetuningPair: return "negative-detuning-1+1-";
        case ResonanceType::Other: return "other";
    }
    return "?";
}

std::vector<std::string> adiabatic_names(double detuning, std::size_t dim) {
    std::vector<std::string> n;
    if (dim == 4) {
        if (detuning < 0.0) return {"2+", "2_R", "2_S", "2_T"};
        return {"2+", "1+1-", "2_X", "2_Y"};
    }
    for (std::size_t i = 0; i < dim; ++i) n.push_back("2_a" + std::to_string(i));
    return n;
}

namespace {

// A block of manifold 2, states ordered from the top.
struct APoint {
    std::vector<double> energy;
    std::vector<StateLabel> dominant;
    std::vector<double> dominant_weight;
    std::vector<std::map<StateLabel, double>> weights;
};

APoint a_point(const SystemParams& p) {
    APoint out;
    for (const Block& b : build_blocks_m2(p)) {
        if (b.irrep != Irrep::A) continue;
        const EigenSystem es = eigensolve_block(b);
        const auto refs = block_references(p, b);
        const std::size_t dim = es.values.size();
        for (std::size_t jj = 0; jj < dim; ++jj) {
            const std::size_t j = dim - 1 - jj;
            const auto v = es.vectors.column(j);
            out.energy.push_back(es.values[j]);
            std::map<StateLabel, double> w;
            StateLabel best = StateLabel::Unknown;
            double bw = -1.0;
            for (const auto& r : refs) {
                const double o = dot(v, r.vec);
                w[r.label] = o * o;
                if (o * o > bw) {
                    bw = o * o;
                    best = r.label;
                }
            }
            out.dominant.push_back(best);
            out.dominant_weight.push_back(bw);
            out.weights.push_back(std::move(w));
        }
    }
    return out;
}

double a_gap(const SystemParams& p, std::size_t k) {
    const APoint a = a_point(p);
    return a.energy[k] - a.energy[k + 1];
}

double golden_min(const std::function<double(double)>& f, double lo, double hi, double* fmin) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi)); ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2);
        }
    }
    const double x = f1 < f2 ? x1 : x2;
    *fmin = std::min(f1, f2);
    return x;
}

ResonanceType classify(StateLabel a, StateLabel b) {
    auto has = [&](StateLabel s) { return a == s || b == s; };
    if (has(StateLabel::TwoDA) && has(StateLabel::TwoMinus)) return ResonanceType::RabiVsChi;
    if (has(StateLabel::TwoDA) && has(StateLabel::OnePlusOneMinus)) return ResonanceType::NegativeDetuningPair;
    return ResonanceType::Other;
}

}  // namespace

std::vector<CrossingReport> find_crossings(const SweepSpec& s, bool parallel) {
    if (s.variable != SweepVar::Chi) throw ContractError("find_crossings: sweep variable must be chi");
    if (s.manifold != 2) throw ContractError("find_crossings: manifold 2 only");
    const std::vector<double> grid = sweep_grid(s);
    std::vector<APoint> pts(grid.size());
    for_each_point(grid.size(), parallel, [&](std::size_t i) { pts[i] = a_point(params_at(s, grid[i])); });
    std::vector<CrossingReport> out;
    const std::size_t dim = pts.front().energy.size();
    for (const auto& pt : pts)
        if (pt.energy.size() != dim) throw ContractError("find_crossings: A block changes size along the sweep");
    if (dim < 2) return out;
    const double detuning = s.base.omega_cav - s.base.omega_10;
    const auto names = adiabatic_names(detuning, dim);
    for (std::size_t k = 0; k + 1 < dim; ++k) {
        auto gap = [&](std::size_t i) { return pts[i].energy[k] - pts[i].energy[k + 1]; };
        for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
            if (!(gap(i) < gap(i - 1) && gap(i) <= gap(i + 1))) continue;
            // the two branches must trade their dominant character across the minimum
            std::size_t l = i - 1, r = i + 1;
            const StateLabel ul = pts[l].dominant[k], ll = pts[l].dominant[k + 1];
            const StateLabel ur = pts[r].dominant[k], lr = pts[r].dominant[k + 1];
            if (!(ul == lr && ll == ur && ul != ll)) continue;
            double gmin = 0.0;
            const double x = golden_min([&](double c) { return a_gap(params_at(s, c), k); }, grid[i - 1], grid[i + 1], &gmin);
            CrossingReport c;
            c.found = true;
            c.location = x;
            c.min_gap = gmin;
            c.diabatic = {ul, ll};
            c.adiabatic = {names[k], names[k + 1]};
            c.branch_upper = k;
            c.type = classify(ul, ll);
            out.push_back(c);
        }
    }
    std::sort(out.begin(), out.end(), [](const CrossingReport& a, const CrossingReport& b) { return a.location < b.location; });
    return out;
}

CrossingReport find_crossing(const SweepSpec& s, std::pair<StateLabel, StateLabel> pair, bool parallel) {
    for (const auto& c : find_crossings(s, parallel)) {
        if ((c.diabatic.first == pair.first && c.diabatic.second == pair.second) ||
            (c.diabatic.first == pair.second && c.diabatic.second == pair.first))
            return c;
    }
    CrossingReport none;
    none.diabatic = pair;
    none.type = classify(pair.first, pair.second);
    none.note = "no bracket in range";
    return none;
}

}  // namespace tcx
