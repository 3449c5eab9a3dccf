#pragma once

// The `.aft` flow-table text format: parsing, canonical rendering, and the
// document type carrying optional encoding and simulation directives.
//
//   # comment
//   inputs H CK
//   outputs Z
//   statebits y2 y1 y0
//   state 1 code=000 Z=0
//     on 00 -> 1
//     on 11 -> 2
//     on 10 -> 2          (omitted vectors default to don't-care; `-` is
//                          an explicit don't-care)
//   sim delay 1
//   sim clock CK period 20 duty 1/2
//   sim pulse H 25 60
//   sim horizon 300

#include "norflow/eventsim.hpp"
#include "norflow/flow_table.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace norflow {

struct AftParseError : std::runtime_error {
    int line;
    int column;
    AftParseError(int line_, int column_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ":" +
                             std::to_string(column_) + ": " + msg),
          line(line_),
          column(column_) {}
};

struct ClockDirective {
    std::string input;
    SimTime period = 20;
    Duty duty{1, 2};
    bool operator==(const ClockDirective&) const = default;
};

struct PulseDirective {
    std::string input;
    SimTime rise = 0;
    SimTime fall = 0;
    bool operator==(const PulseDirective&) const = default;
};

struct SimDirectives {
    std::optional<SimTime> delay;
    std::vector<ClockDirective> clocks;
    std::vector<PulseDirective> pulses;
    std::optional<SimTime> horizon;
    bool operator==(const SimDirectives&) const = default;
};

struct SemanticDiagnostic {
    int line = 0;
    std::string message;
    bool operator==(const SemanticDiagnostic&) const = default;
};

struct FlowTableDocument {
    FlowTable table;
    std::optional<StateEncoding> encoding;
    SimDirectives directives;
    std::vector<SemanticDiagnostic> diagnostics;  // duplicates, unknown targets

    bool operator==(const FlowTableDocument& o) const {
        return table == o.table && encoding == o.encoding && directives == o.directives;
    }
};

// throws AftParseError on syntax/arity problems; duplicate states and
// unknown targets are collected as diagnostics
FlowTableDocument parse_flow_table(const std::string& text);

std::string render_flow_table(const FlowTableDocument& doc);

}  // namespace norflow
