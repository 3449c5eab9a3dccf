#pragma once

// NOR-only feedback netlists with a fan-in-4 constraint and dual-NOR
// package accounting.

#include "norflow/boolmin.hpp"

#include <map>
#include <string>
#include <vector>

namespace norflow {

struct Gate {
    std::vector<int> inputs;  // net ids, 1..4 of them
    int output = -1;          // net id, unique driver
    std::string tag;          // owning function, or "shared" for inverters
};

struct Netlist {
    std::vector<std::string> net_names;
    std::map<std::string, int> net_ids;
    std::vector<int> primary_inputs;                  // net ids
    std::vector<int> state_nets;                      // feedback nets; driver closes the loop
    std::vector<std::pair<std::string, int>> outputs; // output name -> net id
    std::vector<Gate> gates;
    std::vector<int> topo;                            // gate evaluation order (feedback cut)

    int net(const std::string& name) const;           // -1 if absent
    int driver_of(int net) const;                     // gate index, -1 for inputs
    bool is_state_net(int net) const;
    const std::string& name(int net) const { return net_names.at(net); }
};

// Builds the full feedback netlist: one NOR tree per state bit wired back as
// its own present-state signal, one per output, inverters shared per signal,
// NORs wider than 4 inputs split into NOR/inverter trees.
// Throws std::invalid_argument for unknown variables.
Netlist map_to_netlist(const std::vector<std::string>& input_names,
                       const std::vector<std::string>& state_names,
                       const std::vector<NorForm>& state_functions,
                       const std::vector<std::pair<std::string, NorForm>>& output_functions);

struct PackageReport {
    int gate_count = 0;
    int package_count = 0;  // ceil(gates / 2), dual 4-input NOR packages
    std::vector<std::pair<std::string, int>> per_function;
};

PackageReport package_count(const Netlist& n);

// One line per gate, `NOR<fanin> out <- in1 in2 ...`, construction order.
std::string netlist_dump(const Netlist& n);

// Combinational evaluation with the feedback loop cut: state nets are free
// inputs; next_state holds what their drivers would produce.
struct CutEval {
    std::vector<bool> net_values;   // per net id
    std::vector<bool> next_state;   // aligned with state_nets
    std::map<std::string, bool> outputs;
};

CutEval eval_cut(const Netlist& n, const std::map<std::string, bool>& inputs_and_state);

}  // namespace norflow
