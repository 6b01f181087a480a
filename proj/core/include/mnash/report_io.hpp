#pragma once

#include "mnash/equilibria.hpp"
#include "mnash/verification.hpp"

#include <string>
#include <vector>

namespace mnash {

inline constexpr const char* kTraceCsvHeader = "k_or_t,residual,dist_to_ref,bound,in_set";

/// RFC-4180 CSV with %.17g numbers; absent optional columns are empty fields.
std::string trace_csv(const std::vector<TraceRow>& rows);

// JSON documents. Doubles use the shortest representation that round-trips; non-finite values
// become null. Output is indented by two spaces and ends with a newline.

std::string to_json(const SolverReport& report);
std::string to_json(const HypothesisReport& report);
std::string to_json(const BatteryReport& report);
std::string to_json(const CrosscheckReport& report);
std::string to_json(const LeviCivitaReport& report);
std::string to_json(const EquilibriumCheck& check);
std::string to_json(const FixedPointAgreement& agreement);
std::string to_json(const MonotoneConstants& constants);
std::string to_json(const ManifoldPoint& point);

/// Writes `content` to `path`, creating parent directories; throws Error on failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace mnash
