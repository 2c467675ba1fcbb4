#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tcx/analysis.hpp"
#include "tcx/core.hpp"
#include "tcx/io.hpp"
#include "tcx/manifolds.hpp"
#include "tcx/oracle.hpp"
#include "tcx/transitions.hpp"

using namespace tcx;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParamFlags {
    std::string n = "1";
    double omega0 = 1.0;
    double omega10 = 1.0;
    std::optional<double> g;
    std::optional<double> collective_g;
    std::string model;
    std::optional<double> chi;
    std::optional<double> gamma;
    bool morse = false;
    std::string units = "omega10";
    std::string format = "csv";
    std::string out;
};

void add_param_flags(CLI::App* c, ParamFlags& f, bool with_model = true) {
    c->add_option("--n", f.n, "number of emitters (accepts 1e6)");
    c->add_option("--omega0", f.omega0, "cavity frequency");
    c->add_option("--omega10", f.omega10, "emitter 0-1 frequency");
    c->add_option("--g", f.g, "single-emitter coupling");
    c->add_option("--collective-g", f.collective_g, "sqrt(N) g (default 0.07)");
    if (with_model) c->add_option("--model", f.model, "tc | ho | anh");
    c->add_option("--chi", f.chi, "mechanical anharmonicity");
    c->add_option("--gamma", f.gamma, "electrical anharmonicity");
    c->add_flag("--morse", f.morse, "gamma from the Morse relation");
    c->add_option("--units", f.units, "omega10 | raw");
    c->add_option("--out", f.out, "output file (default stdout)");
}

std::uint64_t parse_n(const std::string& s) {
    double v = 0.0;
    try {
        std::size_t pos = 0;
        v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw UsageError("--n: not a number: " + s);
    }
    if (!(v >= 1.0) || v > 9007199254740992.0 || v != std::floor(v)) throw UsageError("--n must be an integer >= 1");
    return static_cast<std::uint64_t>(v);
}

EmitterModel resolve_model(const std::string& name, const ParamFlags& f) {
    if (f.gamma && f.morse) throw UsageError("--gamma and --morse are exclusive");
    std::string m = name;
    if (m.empty()) m = (f.chi || f.gamma) ? "anh" : "ho";
    if (m == "tc" || m == "ho") {
        if (f.chi || f.gamma || f.morse) throw UsageError("--chi/--gamma/--morse need --model anh");
        return m == "tc" ? EmitterModel::tavis_cummings() : EmitterModel::harmonic();
    }
    if (m != "anh") throw UsageError("--model must be tc, ho or anh");
    const double chi = f.chi.value_or(0.0);
    if (f.gamma) return EmitterModel::anharmonic(chi, *f.gamma);
    return build_morse_model(chi);
}

SystemParams resolve_params(const ParamFlags& f, const std::string& model) {
    if (f.g && f.collective_g) throw UsageError("--g and --collective-g are exclusive");
    if (f.units != "omega10" && f.units != "raw") throw UsageError("--units must be omega10 or raw");
    SystemParams p;
    p.n_emitters = parse_n(f.n);
    p.omega_cav = f.omega0;
    p.omega_10 = f.omega10;
    p.model = resolve_model(model, f);
    if (f.g) p.g = *f.g;
    else p = with_collective_coupling(p, f.collective_g.value_or(0.07));
    p.validate();
    return p;
}

double unit_of(const ParamFlags& f, const SystemParams& p) { return f.units == "raw" ? 1.0 : p.omega_10; }

void check_format(const std::string& fmt, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (fmt == a) return;
    throw UsageError("--format: unsupported value '" + fmt + "'");
}

void emit(const std::string& data, const std::string& out) {
    if (out.empty()) {
        std::cout << data;
        std::cout.flush();
        return;
    }
    std::ofstream os(out, std::ios::binary);
    if (!os) throw UsageError("cannot open --out " + out);
    os << data;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

int cmd_spectrum(const ParamFlags& f, int manifold) {
    check_format(f.format, {"csv", "json"});
    if (manifold != 1 && manifold != 2) throw UsageError("--manifold must be 1 or 2");
    const SystemParams p = resolve_params(f, f.model);
    const LabeledSpectrum s = solve_manifold(p, manifold);
    const double u = unit_of(f, p);
    if (f.format == "csv") emit(spectrum_csv(s, p, u), f.out);
    else emit(document(params_json(p), std::nullopt, spectrum_records(s, p, u)).dump(2) + "\n", f.out);
    return 0;
}

struct SweepFlags {
    std::string var;
    double from = 0.0, to = 1.0;
    std::size_t points = 2;
    bool log = false;
    std::string coupling = "collective";
    int manifold = 2;
};

int cmd_sweep(const ParamFlags& f, const SweepFlags& sf) {
    check_format(f.format, {"csv", "json"});
    const auto var = parse_sweep_var(sf.var);
    if (!var) throw UsageError("--var must be n, detuning or chi");
    if (sf.coupling != "collective" && sf.coupling != "single") throw UsageError("--coupling must be collective or single");
    if (sf.coupling == "single" && !f.g) throw UsageError("--coupling single needs --g");
    if (sf.coupling == "collective" && f.g) throw UsageError("--g conflicts with --coupling collective");
    std::vector<std::string> models = split(f.model, ',');
    if (*var == SweepVar::Chi) {
        if (f.chi || f.gamma) throw UsageError("--chi/--gamma conflict with --var chi");
        for (const auto& m : models)
            if (m != "anh") throw UsageError("--var chi sweeps the Morse model only");
        models = {"anh"};
    }
    if (models.empty()) models = {""};
    std::vector<LabeledSweep> runs;
    json params = json::array();
    double unit = 1.0;
    for (const auto& m : models) {
        SweepSpec s;
        s.variable = *var;
        s.from = sf.from;
        s.to = sf.to;
        s.points = sf.points;
        s.log_grid = sf.log;
        s.manifold = sf.manifold;
        s.base = resolve_params(f, *var == SweepVar::Chi ? "ho" : m);
        s.coupling = sf.coupling == "single" ? CouplingMode::FixSingle : CouplingMode::FixCollective;
        s.collective_g = f.collective_g.value_or(0.07);
        try {
            s.validate();
        } catch (const ContractError& e) {
            throw UsageError(e.what());
        }
        unit = unit_of(f, s.base);
        SweepResult r = run_sweep(s);
        for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
        const std::string name = *var == SweepVar::Chi ? "anh" : model_name(s.base.model);
        params.push_back(params_json(s.base));
        runs.push_back({name, std::move(r)});
    }
    if (f.format == "csv") emit(sweep_csv(runs, unit), f.out);
    else {
        json pj{{"base", params},
                {"var", sf.var},
                {"from", sf.from},
                {"to", sf.to},
                {"points", sf.points},
                {"log", sf.log},
                {"coupling", sf.coupling}};
        emit(document(pj, std::nullopt, sweep_records(runs, unit)).dump(2) + "\n", f.out);
    }
    return 0;
}

int cmd_verify(int n_max, int draws, std::uint64_t seed, const std::string& format, const std::string& out) {
    check_format(format, {"text", "json"});
    if (n_max < 1 || n_max > 8) throw UsageError("--n-max must be in [1, 8]");
    if (draws < 1) throw UsageError("--draws must be >= 1");
    const std::vector<ModelSpec> models{{ModelSpec::Kind::TC, 0.0},
                                        {ModelSpec::Kind::HO, 0.0},
                                        {ModelSpec::Kind::MorseFixed, 0.05},
                                        {ModelSpec::Kind::MorseFixed, 0.3}};
    const auto runs = certify_grid(static_cast<std::uint64_t>(n_max), models, draws, seed, true);
    bool ok = true;
    std::map<std::pair<std::uint64_t, std::string>, std::pair<double, const CertificationRun*>> worst;
    for (const auto& r : runs) {
        if (!r.report.pass) {
            ok = false;
            std::cerr << "certification failed: n=" << r.n << " model=" << r.model.name() << " draw=" << r.draw << ": "
                      << r.report.failure << "\n";
        }
        auto key = std::make_pair(r.n, r.model.name());
        auto it = worst.find(key);
        if (it == worst.end() || r.report.max_deviation > it->second.first) worst[key] = {r.report.max_deviation, &r};
    }
    std::string data;
    if (format == "json") {
        json rec = json::array();
        for (const auto& r : runs) rec.push_back(certification_json(r));
        json pj{{"n_max", n_max}, {"draws", draws}};
        data = document(pj, seed, rec).dump(2) + "\n";
    } else {
        std::ostringstream os;
        os << "n,model,draws,max_deviation,mult_a,mult_b,mult_c,pass\n";
        for (const auto& [key, v] : worst) {
            const auto& rep = v.second->report;
            bool all = true;
            for (const auto& r : runs)
                if (r.n == key.first && r.model.name() == key.second && !r.report.pass) all = false;
            os << key.first << "," << csv_field(key.second) << "," << draws << "," << format_double(v.first) << ","
               << format_double(rep.mult_a) << "," << format_double(rep.mult_b) << "," << format_double(rep.mult_c) << ","
               << (all ? "pass" : "FAIL") << "\n";
        }
        os << (ok ? "all certifications passed\n" : "certification FAILED\n");
        data = os.str();
    }
    emit(data, out);
    return ok ? 0 : 1;
}

int cmd_tables(const ParamFlags& f, const std::string& which, bool exact) {
    check_format(f.format, {"csv", "json"});
    const SystemParams p = resolve_params(f, f.model);
    std::vector<int> ids;
    if (which == "all") ids = {0, 1, 2, 3, 4, 5};
    else {
        for (const auto& w : split(which, ',')) {
            int v = -1;
            try {
                v = std::stoi(w);
            } catch (const std::exception&) {
            }
            if (v < 0 || v > 5) throw UsageError("--which takes 0..5 or all");
            ids.push_back(v);
        }
    }
    if (exact && p.model.kind != ModelKind::TavisCummings) throw UsageError("--exact applies to --model tc");
    std::vector<TransitionReport> rows;
    for (int id : ids) {
        std::vector<TransitionReport> part;
        if (id == 0) part = ground_transitions(p);
        else if (id == 1) part = table1_rows(p);
        else if (exact) part = tc_exact_amplitudes(p, static_cast<AmpTable>(id));
        else part = numeric_amplitudes(p, static_cast<AmpTable>(id));
        rows.insert(rows.end(), part.begin(), part.end());
    }
    const double u = unit_of(f, p);
    if (f.format == "csv") emit(tables_csv(rows, u), f.out);
    else emit(document(params_json(p), std::nullopt, table_records(rows, u)).dump(2) + "\n", f.out);
    return 0;
}

int cmd_resonance(const ParamFlags& f, double from, double to, std::size_t points) {
    check_format(f.format, {"csv", "json"});
    if (f.chi || f.gamma || f.morse) throw UsageError("resonance sweeps chi along the Morse curve; drop --chi/--gamma/--morse");
    SweepSpec s;
    s.variable = SweepVar::Chi;
    s.from = from;
    s.to = to;
    s.points = points;
    s.base = resolve_params(f, "ho");
    s.collective_g = std::sqrt(s.base.n()) * s.base.g;
    try {
        s.validate();
    } catch (const ContractError& e) {
        throw UsageError(e.what());
    }
    const auto cs = find_crossings(s);
    if (f.format == "json") {
        json rec = json::array();
        for (const auto& c : cs) rec.push_back(crossing_json(c));
        json pj = params_json(s.base);
        pj["chi_from"] = from;
        pj["chi_to"] = to;
        pj["points"] = points;
        emit(document(pj, std::nullopt, rec).dump(2) + "\n", f.out);
    } else {
        std::string data = csv_row({"location", "min_gap", "diabatic_upper", "diabatic_lower", "adiabatic_upper",
                                    "adiabatic_lower", "resonance_type"});
        for (const auto& c : cs)
            data += csv_row({format_double(c.location), format_double(c.min_gap), state_label_name(c.diabatic.first),
                             state_label_name(c.diabatic.second), c.adiabatic.first, c.adiabatic.second,
                             resonance_type_name(c.type)});
        emit(data, f.out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tcx: emitter ensembles in a cavity, manifolds 1 and 2"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    ParamFlags spec_f, sweep_f, tab_f, res_f;
    int manifold = 2;
    auto* sp = app.add_subcommand("spectrum", "labeled spectrum of one manifold");
    add_param_flags(sp, spec_f);
    sp->add_option("--manifold", manifold, "1 or 2");
    sp->add_option("--format", spec_f.format, "csv | json");

    SweepFlags sf;
    auto* sw = app.add_subcommand("sweep", "parameter sweep with label tracking");
    add_param_flags(sw, sweep_f);
    sw->add_option("--var", sf.var, "n | detuning | chi")->required();
    sw->add_option("--from", sf.from)->required();
    sw->add_option("--to", sf.to)->required();
    sw->add_option("--points", sf.points)->required();
    sw->add_flag("--log", sf.log, "logarithmic grid");
    sw->add_option("--coupling", sf.coupling, "collective (fix sqrt(N) g) | single (fix g)");
    sw->add_option("--manifold", sf.manifold, "1 or 2");
    sw->add_option("--format", sweep_f.format, "csv | json");

    int n_max = 8, draws = 10;
    std::uint64_t seed = 7;
    std::string vformat = "text", vout;
    auto* ve = app.add_subcommand("verify", "certify reduced spectra against the full-space oracle");
    ve->add_option("--n-max", n_max, "largest N (<= 8)");
    ve->add_option("--draws", draws, "random draws per (N, model)");
    ve->add_option("--seed", seed);
    ve->add_option("--format", vformat, "text | json");
    ve->add_option("--out", vout);

    std::string which = "all";
    bool exact = false;
    auto* ta = app.add_subcommand("tables", "frequency and amplitude tables, closed form vs numeric");
    add_param_flags(ta, tab_f);
    ta->add_option("--which", which, "0 (ground), 1 (frequencies), 2-5 (amplitudes), comma list or all");
    ta->add_flag("--exact", exact, "TC: exact closed forms instead of the printed large-N rows");
    ta->add_option("--format", tab_f.format, "csv | json");

    double rfrom = 1e-4, rto = 0.4;
    std::size_t rpoints = 400;
    res_f.format = "json";
    auto* re = app.add_subcommand("resonance", "avoided crossings in the symmetric block along a Morse chi sweep");
    add_param_flags(re, res_f, false);
    re->add_option("--from", rfrom, "chi start");
    re->add_option("--to", rto, "chi end");
    re->add_option("--points", rpoints, "grid points");
    re->add_option("--format", res_f.format, "json | csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*sp) return cmd_spectrum(spec_f, manifold);
        if (*sw) return cmd_sweep(sweep_f, sf);
        if (*ve) return cmd_verify(n_max, draws, seed, vformat, vout);
        if (*ta) return cmd_tables(tab_f, which, exact);
        if (*re) return cmd_resonance(res_f, rfrom, rto, rpoints);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ContractError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DegeneracyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
