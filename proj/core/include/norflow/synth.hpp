#pragma once

// Excitation/output equation derivation and race analysis over the
// synthesized equations.

#include "norflow/boolmin.hpp"
#include "norflow/flow_table.hpp"

namespace norflow {

// Variable order everywhere: inputs in declaration order, then state bits
// MSB→LSB; minterm index = (input vector << m) | state code.
struct Equations {
    std::vector<std::string> vars;
    std::vector<std::string> bit_names;        // MSB first
    std::vector<Sop> next_state;               // aligned with bit_names
    std::vector<std::string> output_names;
    std::vector<Sop> outputs;

    // next code under a held input vector, evaluated from the Sops
    uint32_t next_code(uint32_t input_vector, uint32_t code) const;
};

Equations derive_equations(const ExcitationTable& exc);

// The TruthSpec a next-state bit / output was minimized from (the oracle side
// of equivalence checks).
TruthSpec next_bit_spec(const ExcitationTable& exc, int bit);
TruthSpec output_spec(const ExcitationTable& exc, int output_index);

// Classifies every defined state-changing transition. Transitions whose
// codes differ in one bit are Adjacent; multi-bit transitions are explored
// one bit-change at a time under the synthesized equations.
std::vector<RaceDiagnostic> check_races(const FlowTable& ft, const StateEncoding& enc,
                                        const Equations& eqs);

}  // namespace norflow
