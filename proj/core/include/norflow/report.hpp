#pragma once

// Plain-text and machine-readable key=value renderings of verification
// reports and synthesis results.

#include "norflow/scenarios.hpp"

#include <string>

namespace norflow {

std::string render_equations(const Equations& eqs);
std::string render_report_text(const VerificationReport& rep);
std::string render_report_kv(const VerificationReport& rep);

}  // namespace norflow
