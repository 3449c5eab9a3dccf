#pragma once

// Symbolic flow tables for fundamental-mode asynchronous machines, state
// encodings, and encoded excitation tables.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace norflow {

struct NextEntry {
    bool dont_care = true;
    std::string target;  // valid when !dont_care

    static NextEntry go(std::string t) { return NextEntry{false, std::move(t)}; }
    static NextEntry dc() { return NextEntry{}; }
    bool operator==(const NextEntry&) const = default;
};

struct StateRow {
    std::string name;
    std::vector<bool> outputs;      // aligned with FlowTable::output_vars (Moore)
    std::vector<NextEntry> next;    // size 2^k, indexed by input vector (MSB-first)
    bool operator==(const StateRow&) const = default;
};

struct FlowTable {
    std::vector<std::string> input_vars;   // MSB first in vector indices
    std::vector<std::string> output_vars;
    std::vector<StateRow> states;

    int input_count() const { return static_cast<int>(input_vars.size()); }
    uint32_t vector_count() const { return 1u << input_vars.size(); }
    const StateRow* find_state(const std::string& name) const;
    int state_index(const std::string& name) const;  // -1 if absent
    bool operator==(const FlowTable&) const = default;
};

struct StateEncoding {
    std::vector<std::string> bit_names;     // MSB first, e.g. {y2, y1, y0}
    std::map<std::string, uint32_t> codes;  // state name -> code

    int width() const { return static_cast<int>(bit_names.size()); }
    // throws std::invalid_argument when a state has no code
    uint32_t code_of(const std::string& state) const;
    std::optional<std::string> state_of(uint32_t code) const;
    // injectivity, width, and ceil(log2 |states|) checks
    void validate(const FlowTable& ft) const;
    bool operator==(const StateEncoding&) const = default;
};

// Encoded next-state/output matrix. Entry and output slots are nullopt for
// don't-cares (undefined cells and unused codes).
struct ExcitationTable {
    std::vector<std::string> input_vars;
    std::vector<std::string> bit_names;    // MSB first
    std::vector<std::string> output_vars;
    int m = 0;  // state bits
    int k = 0;  // inputs
    // entries[code][input vector] -> next code
    std::vector<std::vector<std::optional<uint32_t>>> entries;
    // outputs[code] -> Moore output bits (aligned with output_vars)
    std::vector<std::optional<std::vector<bool>>> outputs;

    uint32_t code_count() const { return 1u << m; }
    uint32_t vector_count() const { return 1u << k; }
};

struct SettleResult {
    enum class Kind { Stable, Cycle, Undefined };
    Kind kind = Kind::Undefined;
    std::string state;               // for Stable
    std::vector<std::string> cycle;  // for Cycle (>= 2 distinct states)
    std::vector<std::string> path;   // states visited, starting state first
};

struct Diagnostic {
    enum class Kind {
        DuplicateState,
        DanglingTarget,
        MissingInputColumn,
        UnreachableState,
    };
    Kind kind;
    std::string state;
    std::string message;
};

struct RaceDiagnostic {
    enum class Kind { Adjacent, NoncriticalRace, CriticalRace, UndefinedRace };
    Kind kind = Kind::Adjacent;
    std::string source;
    uint32_t input_vector = 0;
    std::string target;
    int hamming = 0;
    std::string witness;  // divergent orders/outcomes for critical/undefined
};

// Empty iff all invariants hold and every state is reachable from the first
// state via defined entries.
std::vector<Diagnostic> validate_flow_table(const FlowTable& ft);

// Chases GoTo entries under a held input vector. Terminates within
// |states|+1 steps. Throws std::invalid_argument for unknown states or
// out-of-range vectors.
SettleResult settle(const FlowTable& ft, const std::string& start, uint32_t input_vector);

// Applies an encoding; don't-care cells and unused codes become don't-cares.
ExcitationTable encode(const FlowTable& ft, const StateEncoding& enc);

std::string diagnostic_text(const Diagnostic& d);
std::string race_kind_name(RaceDiagnostic::Kind k);

}  // namespace norflow
