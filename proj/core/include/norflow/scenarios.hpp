#pragma once

// Built-in machines and end-to-end verification of the clock-gated
// pulse-width method.

#include "norflow/eventsim.hpp"
#include "norflow/netlist.hpp"
#include "norflow/synth.hpp"

#include <optional>

namespace norflow {

enum class MachineId { Section1, Section2, Reduced };

std::string machine_name(MachineId id);
std::optional<MachineId> machine_from_name(const std::string& name);

struct PaperMachine {
    MachineId id = MachineId::Section1;
    FlowTable table;
    StateEncoding encoding;
    std::string notes;  // documented equation readings / reconstruction flags
};

// Two-state-bit pulse generator: raising H emits one transient-width Z pulse.
PaperMachine machine_section1();
// Six-state controller: Z gated to a full CK high half-period.
PaperMachine machine_section2();
// Reconstructed four-state reduction of the six-state controller. Fires on
// the current CK high when triggered mid-high (no fall-first wait).
PaperMachine machine_reduced();

struct SynthesizedMachine {
    PaperMachine machine;
    ExcitationTable excitation;
    Equations equations;
    Netlist netlist;
    PackageReport packages;
    std::vector<RaceDiagnostic> races;
};

// encode -> derive -> NOR-map; throws on synthesis failure
SynthesizedMachine synthesize(const PaperMachine& m);

struct VerifyOptions {
    SimTime ck_period = 20;
    Duty ck_duty{1, 2};
    std::vector<SimTime> h_widths{35, 200};
    DelayModel delays;
};

struct RunResult {
    SimTime h_width = 0;
    SimTime h_rise = 0;
    std::vector<Pulse> z_pulses;
    std::vector<SimTime> rise_offsets;  // Z rise minus most recent CK rise
    std::vector<std::string> oscillation;
    bool settled = true;
};

struct LawCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerificationReport {
    MachineId id = MachineId::Section1;
    SynthesizedMachine synth;
    VerifyOptions options;
    std::vector<RunResult> runs;
    std::vector<LawCheck> laws;
    bool pass = false;
};

// Runs the full pipeline per H width and judges the machine's timing law:
// width within [P/2-3, P/2+3] with Z rising within 3 tu of a CK rise for
// the clocked machines, width <= 3*delay for the two-bit machine; plus one
// pulse per H event, equal widths across runs (±1), no critical/undefined
// races, no oscillation flags.
VerificationReport verify_method(const PaperMachine& m, const VerifyOptions& opts);

// The stimulus verify_method uses for one run (exposed for the CLI/tests):
// clock on the second input when present; H rises at period + period/4
// (clockless: 10) and stays high for h_width.
Stimulus demo_stimulus(const PaperMachine& m, const VerifyOptions& opts, SimTime h_width);

// All-zero initial state codes (the machines idle at the all-zero code).
std::map<std::string, bool> idle_init(const PaperMachine& m);

}  // namespace norflow
