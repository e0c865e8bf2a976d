#pragma once

#include <string>

#include "fermatk/elimination.hpp"

namespace fermatk {

std::string report_to_text(const EliminationReport& r, bool explain = false);

// Stable key order; report_from_json(report_to_json(r)) reproduces r.
std::string report_to_json(const EliminationReport& r);
EliminationReport report_from_json(const std::string& text);

std::string levels_to_text(const LevelPrediction& pred);
std::string irreducibility_to_text(const QuadraticField& K, const IrreducibilityResult& r, bool explain);

} // namespace fermatk
