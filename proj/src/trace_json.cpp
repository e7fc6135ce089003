#include "vnmlab/trace_json.hpp"

#include <cstdio>

namespace vnmlab {

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string trace_to_json(const RunTrace& trace) {
    std::string out;
    std::size_t amp_count = 0;
    for (const LabeledState& entry : trace.states) amp_count += entry.state.dimension();
    out.reserve(256 + 48 * amp_count);

    out += "{\"algorithm\":\"";
    out += trace.algorithm;
    out += "\",\"seed\":";
    out += std::to_string(trace.seed);
    out += ",\"states\":[";
    bool first_state = true;
    for (const LabeledState& entry : trace.states) {
        if (!first_state) out += ',';
        first_state = false;
        out += "{\"label\":\"";
        out += entry.label;
        out += "\",\"amplitudes\":[";
        bool first_amp = true;
        for (const Complex& a : entry.state.amplitudes()) {
            if (!first_amp) out += ',';
            first_amp = false;
            out += '[';
            out += format_double(a.real());
            out += ',';
            out += format_double(a.imag());
            out += ']';
        }
        out += "]}";
    }
    out += "],\"measurements\":[";
    bool first_meas = true;
    for (const MeasurementRecord& record : trace.measurements) {
        if (!first_meas) out += ',';
        first_meas = false;
        out += "{\"register\":\"";
        out += record.reg;
        out += "\",\"outcome\":";
        out += std::to_string(record.outcome);
        out += ",\"probability\":";
        out += format_double(record.probability);
        out += '}';
    }
    out += "],\"oracle_invocations\":";
    out += std::to_string(trace.oracle_invocations);
    out += '}';
    return out;
}

std::string report_row_to_json(const ReportRow& row) {
    std::string out = "{\"n\":";
    out += std::to_string(row.n);
    out += ",\"classical_worst\":";
    out += std::to_string(row.classical_worst);
    out += ",\"classical_avg\":";
    out += format_double(row.classical_avg);
    out += ",\"quantum_invocations\":";
    out += format_double(row.quantum_invocations);
    out += ",\"measurement_units\":";
    out += format_double(row.measurement_units);
    out += '}';
    return out;
}

} // namespace vnmlab
