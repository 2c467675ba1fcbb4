#include "tcx/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace tcx {

using nlohmann::json;

std::string format_double(double x) {
    if (std::isnan(x)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    return out + "\n";
}

namespace {

std::string opt(const std::optional<double>& v, double unit = 1.0) { return v ? format_double(*v / unit) : "n/a"; }

json opt_json(const std::optional<double>& v, double unit = 1.0) {
    if (!v || std::isnan(*v)) return nullptr;
    return *v / unit;
}

json num(double x) {
    if (std::isnan(x)) return nullptr;
    return x;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + v[i];
    return s;
}

}  // namespace

json params_json(const SystemParams& p) {
    return json{{"n", p.n_emitters},         {"omega_cav", p.omega_cav},         {"omega_10", p.omega_10},
                {"g", p.g},                  {"model", model_name(p.model)},     {"chi", p.model.eff_chi()},
                {"gamma", p.model.eff_gamma()}};
}

SystemParams params_from_json(const json& j) {
    SystemParams p;
    p.n_emitters = j.at("n").get<std::uint64_t>();
    p.omega_cav = j.at("omega_cav").get<double>();
    p.omega_10 = j.at("omega_10").get<double>();
    p.g = j.at("g").get<double>();
    const std::string m = j.at("model").get<std::string>();
    if (m == "tc") p.model = EmitterModel::tavis_cummings();
    else if (m == "ho") p.model = EmitterModel::harmonic();
    else if (m == "anh") p.model = EmitterModel::anharmonic(j.at("chi").get<double>(), j.at("gamma").get<double>());
    else throw ContractError("unknown model '" + m + "'");
    p.validate();
    return p;
}

json document(const json& params, std::optional<std::uint64_t> seed, json records) {
    json meta{{"version", kVersion}, {"params", params}, {"seed", seed ? json(*seed) : json(nullptr)}};
    return json{{"metadata", meta}, {"records", std::move(records)}};
}

std::string spectrum_csv(const LabeledSpectrum& s, const SystemParams& p, double unit) {
    std::string out = csv_row({"manifold", "irrep", "label", "frequency", "multiplicity", "photon_content", "model", "chi",
                               "gamma", "basis", "eigenvector"});
    for (const auto& e : s.entries) {
        std::vector<std::string> basis, vec;
        for (auto b : e.basis) basis.push_back(basis_label(b));
        for (double x : e.eigenvector) vec.push_back(format_double(x));
        out += csv_row({std::to_string(e.manifold), irrep_name(e.irrep), state_label_name(e.label),
                        format_double(e.frequency / unit), format_double(e.multiplicity), format_double(e.photon_content),
                        model_name(p.model), format_double(p.model.eff_chi()), format_double(p.model.eff_gamma()),
                        join(basis), join(vec)});
    }
    return out;
}

json spectrum_records(const LabeledSpectrum& s, const SystemParams& p, double unit) {
    json rec = json::array();
    for (const auto& e : s.entries) {
        json basis = json::array();
        for (auto b : e.basis) basis.push_back(basis_label(b));
        rec.push_back({{"manifold", e.manifold},
                       {"irrep", irrep_name(e.irrep)},
                       {"label", state_label_name(e.label)},
                       {"frequency", e.frequency / unit},
                       {"multiplicity", e.multiplicity},
                       {"photon_content", e.photon_content},
                       {"model", model_name(p.model)},
                       {"chi", p.model.eff_chi()},
                       {"gamma", p.model.eff_gamma()},
                       {"basis", basis},
                       {"eigenvector", e.eigenvector}});
    }
    return rec;
}

namespace {

struct SweepRow {
    double value;
    std::size_t model;
    std::size_t block;
    double frequency;
    const SpectrumEntry* e;
};

std::vector<SweepRow> sweep_rows(const std::vector<LabeledSweep>& sweeps) {
    std::vector<SweepRow> rows;
    for (std::size_t m = 0; m < sweeps.size(); ++m) {
        const auto& r = sweeps[m].result;
        for (std::size_t i = 0; i < r.grid.size(); ++i)
            for (const auto& e : r.spectra[i].entries) rows.push_back({r.grid[i], m, e.block, e.frequency, &e});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.model != b.model) return a.model < b.model;
        if (a.block != b.block) return a.block < b.block;
        return a.frequency < b.frequency;
    });
    return rows;
}

}  // namespace

std::string sweep_csv(const std::vector<LabeledSweep>& sweeps, double unit) {
    std::string out = csv_row({"sweep_value", "model", "label", "irrep", "frequency", "photon_content"});
    for (const auto& r : sweep_rows(sweeps))
        out += csv_row({format_double(r.value), sweeps[r.model].model, state_label_name(r.e->label), irrep_name(r.e->irrep),
                        format_double(r.frequency / unit), format_double(r.e->photon_content)});
    return out;
}

json sweep_records(const std::vector<LabeledSweep>& sweeps, double unit) {
    json rec = json::array();
    for (const auto& r : sweep_rows(sweeps))
        rec.push_back({{"sweep_value", r.value},
                       {"model", sweeps[r.model].model},
                       {"label", state_label_name(r.e->label)},
                       {"irrep", irrep_name(r.e->irrep)},
                       {"frequency", r.frequency / unit},
                       {"photon_content", r.e->photon_content}});
    return rec;
}

namespace {
// table 1 holds frequencies; the amplitude tables are dimensionless.
double row_unit(const TransitionReport& r, double unit) { return r.table_id == 1 ? unit : 1.0; }
}  // namespace

std::string tables_csv(const std::vector<TransitionReport>& rows, double unit) {
    std::string out =
        csv_row({"table_id", "row_label", "model", "harmonic", "correction", "closed_form", "numeric", "discrepancy", "note"});
    for (const auto& r : rows) {
        const double u = row_unit(r, unit);
        out += csv_row({std::to_string(r.table_id), r.row_label(), r.model, opt(r.base, u), opt(r.correction, u),
                        opt(r.closed_form, u), opt(r.numeric, u), opt(r.discrepancy, u), r.note});
    }
    return out;
}

json table_records(const std::vector<TransitionReport>& rows, double unit) {
    json rec = json::array();
    for (const auto& r : rows) {
        const double u = row_unit(r, unit);
        rec.push_back({{"table_id", r.table_id},
                       {"row_label", r.row_label()},
                       {"model", r.model},
                       {"harmonic", opt_json(r.base, u)},
                       {"correction", opt_json(r.correction, u)},
                       {"closed_form", opt_json(r.closed_form, u)},
                       {"numeric", opt_json(r.numeric, u)},
                       {"discrepancy", opt_json(r.discrepancy, u)},
                       {"note", r.note}});
    }
    return rec;
}

json crossing_json(const CrossingReport& c) {
    return json{{"found", c.found},
                {"location", c.found ? num(c.location) : json(nullptr)},
                {"min_gap", c.found ? num(c.min_gap) : json(nullptr)},
                {"diabatic", {state_label_name(c.diabatic.first), state_label_name(c.diabatic.second)}},
                {"adiabatic", {c.adiabatic.first, c.adiabatic.second}},
                {"resonance_type", resonance_type_name(c.type)},
                {"note", c.note}};
}

json certification_json(const CertificationRun& r) {
    const auto& rep = r.report;
    return json{{"n", r.n},
                {"model", r.model.name()},
                {"draw", r.draw},
                {"redraws", r.redraws},
                {"pass", rep.pass},
                {"max_deviation", rep.max_deviation},
                {"full_dim_m2", rep.full_dim_m2},
                {"reduced_count_m2", rep.reduced_count_m2},
                {"mult_a", rep.mult_a},
                {"mult_b", rep.mult_b},
                {"mult_c", rep.mult_c},
                {"params", params_json(rep.params)},
                {"failure", rep.failure}};
}

}  // namespace tcx
