#pragma once

#include <string>

#include "vnmlab/algorithms.hpp"

namespace vnmlab {

/// Shortest round-trip decimal for a double (17 significant digits). Used for
/// every number we emit so that identical runs serialize byte-identically.
std::string format_double(double value);

/// One-line JSON document, no whitespace, keys in fixed order:
/// {algorithm, seed, states: [{label, amplitudes: [[re, im], ...]}],
///  measurements: [{register, outcome, probability}], oracle_invocations}.
std::string trace_to_json(const RunTrace& trace);

/// One-line JSON report row {n, classical_worst, classical_avg,
/// quantum_invocations, measurement_units}.
std::string report_row_to_json(const ReportRow& row);

} // namespace vnmlab
