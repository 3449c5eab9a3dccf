#pragma once

// Event-driven two-valued simulation of NOR feedback netlists with integer
// delays, waveform capture, pulse measurement, oscillation detection, and
// fundamental-mode checking.
//
// Timing model: the classical feedback-delay arrangement for fundamental-mode
// circuits — the combinational network settles per event instant, and every
// state/output net change is scheduled at +delay(its driving gate) with
// transport semantics (same-time reschedules overwrite, last computed wins).
// Internal nets are traced with the same per-driver delay.

#include "norflow/netlist.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace norflow {

using SimTime = int64_t;

struct SignalStim {
    std::string name;
    bool initial = false;
    std::vector<std::pair<SimTime, bool>> events;  // strictly increasing times
};

struct Stimulus {
    std::vector<SignalStim> signals;
    SimTime t_end = 0;

    // throws std::invalid_argument on unordered events or times >= t_end
    void validate() const;
    const SignalStim* find(const std::string& name) const;
};

struct Duty {
    int num = 1;
    int den = 2;
    bool operator==(const Duty&) const = default;
};

// Square wave: each period starts low and is high for the final
// duty*period units, so with duty 1/2 the first rising edge is at period/2.
// Throws std::invalid_argument for degenerate periods/duties.
SignalStim make_clock(const std::string& name, SimTime period, Duty duty, SimTime t_end);

struct DelayModel {
    SimTime default_delay = 1;
    std::map<std::string, SimTime> overrides;  // driven-net name -> delay

    SimTime delay_for(const std::string& net_name) const;
    void validate() const;  // all delays >= 1
};

struct Trace {
    enum class Role { Input, State, Output, Internal };
    struct Sig {
        std::string name;
        Role role = Role::Internal;
        bool initial = false;
        std::vector<std::pair<SimTime, bool>> changes;
    };

    std::vector<Sig> signals;
    std::map<std::string, int> index;
    std::vector<std::pair<std::string, std::string>> output_aliases;  // display -> net
    SimTime t_end = 0;
    std::vector<SimTime> step_times;  // distinct stimulus event times
    std::vector<bool> settled;        // per step: quiescent before the next step
    std::vector<std::string> diagnostics;

    const Sig* find(const std::string& name) const;
    bool value_at(const std::string& name, SimTime t) const;
};

// throws std::invalid_argument on stimulus/netlist signal mismatch or
// missing init values; non-quiescent relaxation becomes a diagnostic
Trace simulate(const Netlist& n, const Stimulus& s, const DelayModel& d,
               const std::map<std::string, bool>& init);

struct Pulse {
    SimTime start = 0;
    SimTime width = 0;
    bool open = false;  // still high at t_end
};

std::vector<Pulse> measure_pulses(const Trace& t, const std::string& signal);

// Flags nets changing more than `threshold` times between consecutive
// stimulus events.
std::vector<std::string> detect_oscillation(const Trace& t, int threshold = 20);

// Warns on simultaneous input changes and on input events arriving within
// settle_window of the last state-net change.
std::vector<std::string> check_fundamental_mode(const Trace& t, const Stimulus& s,
                                                SimTime settle_window = 5);

}  // namespace norflow
