#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "tcx/io.hpp"

using namespace tcx;

namespace {

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST_CASE("doubles round-trip through text") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double x = u(rng) * std::pow(10.0, i % 40 - 20);
        CHECK(std::stod(format_double(x)) == x);
    }
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()).empty());
    CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("CSV quoting") {
    CHECK(csv_field("abc") == "abc");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");
    CHECK(csv_row({"1+1-|1+", "x,y", ""}) == "1+1-|1+,\"x,y\",\n");
}

TEST_CASE("params JSON round-trip is bit exact") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.5, 1.5);
    for (int i = 0; i < 200; ++i) {
        SystemParams p;
        p.n_emitters = 1 + rng() % 1000000;
        p.omega_cav = u(rng);
        p.omega_10 = u(rng);
        p.g = u(rng) * 1e-3;
        switch (i % 3) {
            case 0: p.model = EmitterModel::tavis_cummings(); break;
            case 1: p.model = EmitterModel::harmonic(); break;
            default: p.model = EmitterModel::anharmonic(u(rng) - 0.5, u(rng) - 1.0);
        }
        const auto text = params_json(p).dump();
        const SystemParams q = params_from_json(nlohmann::json::parse(text));
        CHECK(q.n_emitters == p.n_emitters);
        CHECK(q.omega_cav == p.omega_cav);
        CHECK(q.omega_10 == p.omega_10);
        CHECK(q.g == p.g);
        CHECK(q.model.kind == p.model.kind);
        CHECK(q.model.chi == p.model.chi);
        CHECK(q.model.gamma == p.model.gamma);
    }
}

TEST_CASE("document shape") {
    SystemParams p;
    p.g = 0.01;
    const auto d = document(params_json(p), 7u, nlohmann::json::array());
    CHECK(d["metadata"]["version"] == kVersion);
    CHECK(d["metadata"]["seed"] == 7);
    CHECK(d["records"].is_array());
    CHECK(document(params_json(p), std::nullopt, nlohmann::json::array())["metadata"]["seed"].is_null());
}

TEST_CASE("spectrum output") {
    SystemParams p;
    p.n_emitters = 4;
    p.model = build_morse_model(0.05);
    p = with_collective_coupling(p, 0.07);
    const auto s = solve_manifold(p, 2);
    const auto csv = spectrum_csv(s, p, 1.0);
    const auto ls = lines(csv);
    CHECK(ls[0] ==
          "manifold,irrep,label,frequency,multiplicity,photon_content,model,chi,gamma,basis,eigenvector");
    CHECK(ls.size() == s.entries.size() + 1);
    CHECK(spectrum_csv(s, p, 1.0) == csv);
    const auto rec = spectrum_records(s, p, 2.0);
    REQUIRE(rec.size() == s.entries.size());
    CHECK(rec[0]["frequency"].get<double>() == s.entries[0].frequency / 2.0);
}

TEST_CASE("table output marks absent rows") {
    SystemParams p;
    p.n_emitters = 4;
    p.model = EmitterModel::tavis_cummings();
    p = with_collective_coupling(p, 0.07);
    const auto rows = numeric_amplitudes(p, AmpTable::V);
    const auto ls = lines(tables_csv(rows, 1.0));
    CHECK(ls[0] == "table_id,row_label,model,harmonic,correction,closed_form,numeric,discrepancy,note");
    bool na = false;
    for (std::size_t i = 1; i < ls.size(); ++i) na = na || ls[i].find("n/a") != std::string::npos;
    CHECK(na);
}

TEST_CASE("sweep output is sorted and repeatable") {
    SweepSpec s;
    s.variable = SweepVar::Detuning;
    s.from = 0.1;
    s.to = -0.1;
    s.points = 5;
    s.base.n_emitters = 10;
    s.base.model = EmitterModel::harmonic();
    const std::vector<LabeledSweep> v{{"ho", run_sweep(s)}};
    const auto a = sweep_csv(v, 1.0);
    CHECK(a == sweep_csv(v, 1.0));
    const auto ls = lines(a);
    CHECK(ls[0] == "sweep_value,model,label,irrep,frequency,photon_content");
    double prev = -1e300;
    for (std::size_t i = 1; i < ls.size(); ++i) {
        const double x = std::stod(ls[i].substr(0, ls[i].find(',')));
        CHECK(x >= prev);
        prev = x;
    }
    CHECK(sweep_records(v, 1.0).size() == ls.size() - 1);
}
