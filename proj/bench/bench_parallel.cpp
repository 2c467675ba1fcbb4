// Serial vs OpenMP timing for the parallel kernels; also checks the two paths agree.
#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "tcx/analysis.hpp"
#include "tcx/oracle.hpp"

using namespace tcx;

namespace {

double seconds(const std::function<void()>& f, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void report(const char* name, double serial, double parallel, bool same) {
    std::printf("%-14s serial %8.4f s  parallel %8.4f s  speedup %5.2fx  %s\n", name, serial, parallel,
                serial / parallel, same ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());
    bool ok = true;

    const std::vector<ModelSpec> models{{ModelSpec::Kind::TC, 0.0},
                                        {ModelSpec::Kind::HO, 0.0},
                                        {ModelSpec::Kind::MorseFixed, 0.05},
                                        {ModelSpec::Kind::MorseFixed, 0.3}};
    std::vector<CertificationRun> a, b;
    const double cs = seconds([&] { a = certify_grid(8, models, 40, 7, false); }, 3);
    const double cp = seconds([&] { b = certify_grid(8, models, 40, 7, true); }, 3);
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i) same = a[i].report.max_deviation == b[i].report.max_deviation;
    report("certify_grid", cs, cp, same);
    ok = ok && same;

    SweepSpec s;
    s.variable = SweepVar::Chi;
    s.from = 0.0;
    s.to = 0.4;
    s.points = 20000;
    s.base.n_emitters = 1000000;
    s.base.omega_cav = 0.95;
    s.base.model = build_morse_model(0.0);
    SweepResult x, y;
    const double ss = seconds([&] { x = run_sweep(s, false); }, 3);
    const double sp = seconds([&] { y = run_sweep(s, true); }, 3);
    same = x.curves.size() == y.curves.size();
    for (std::size_t k = 0; same && k < x.curves.size(); ++k)
        for (std::size_t i = 0; i < x.grid.size(); ++i) {
            const double u = x.curves[k].frequency[i], v = y.curves[k].frequency[i];
            if (!(u == v || (std::isnan(u) && std::isnan(v)))) same = false;
        }
    report("run_sweep", ss, sp, same);
    ok = ok && same;

    std::vector<double> ns;
    for (int i = 0; i <= 4000; ++i) ns.push_back(std::pow(10.0, 1.0 + 9.0 * i / 4000.0));
    SystemParams base;
    base.model = EmitterModel::harmonic();
    std::vector<GapCurve> g1, g2;
    const double gs = seconds([&] { g1 = tc_ho_gap(ns, base, 0.07, false); }, 3);
    const double gp = seconds([&] { g2 = tc_ho_gap(ns, base, 0.07, true); }, 3);
    same = g1.size() == g2.size();
    for (std::size_t k = 0; same && k < g1.size(); ++k)
        for (std::size_t i = 0; i < ns.size(); ++i) {
            const double u = g1[k].gap[i], v = g2[k].gap[i];
            if (!(u == v || (std::isnan(u) && std::isnan(v)))) same = false;
        }
    report("tc_ho_gap", gs, gp, same);
    ok = ok && same;
    return ok ? 0 : 1;
}
