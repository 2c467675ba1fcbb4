#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tcx/analysis.hpp"
#include "tcx/core.hpp"
#include "tcx/manifolds.hpp"
#include "tcx/oracle.hpp"
#include "tcx/transitions.hpp"

namespace tcx {

inline constexpr const char* kVersion = "1.0.0";

// %.17g; NaN and absent values print as empty for CSV
std::string format_double(double x);
std::string csv_field(const std::string& s);  // RFC 4180 quoting when needed
std::string csv_row(const std::vector<std::string>& fields);

nlohmann::json params_json(const SystemParams& p);
SystemParams params_from_json(const nlohmann::json& j);
nlohmann::json document(const nlohmann::json& params, std::optional<std::uint64_t> seed, nlohmann::json records);

// `unit` divides every frequency (omega_10 for --units omega10, 1 for raw).
std::string spectrum_csv(const LabeledSpectrum& s, const SystemParams& p, double unit);
nlohmann::json spectrum_records(const LabeledSpectrum& s, const SystemParams& p, double unit);

struct LabeledSweep {
    std::string model;
    SweepResult result;
};
std::string sweep_csv(const std::vector<LabeledSweep>& sweeps, double unit);
nlohmann::json sweep_records(const std::vector<LabeledSweep>& sweeps, double unit);

std::string tables_csv(const std::vector<TransitionReport>& rows, double unit);
nlohmann::json table_records(const std::vector<TransitionReport>& rows, double unit);

nlohmann::json crossing_json(const CrossingReport& c);
nlohmann::json certification_json(const CertificationRun& r);

}  // namespace tcx
