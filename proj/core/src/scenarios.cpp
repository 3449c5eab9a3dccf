#include "norflow/scenarios.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace norflow {

std::string machine_name(MachineId id) {
    switch (id) {
        case MachineId::Section1: return "section1";
        case MachineId::Section2: return "section2";
        case MachineId::Reduced: return "reduced";
    }
    return "?";
}

std::optional<MachineId> machine_from_name(const std::string& name) {
    if (name == "section1") return MachineId::Section1;
    if (name == "section2") return MachineId::Section2;
    if (name == "reduced") return MachineId::Reduced;
    return std::nullopt;
}

namespace {

StateRow row(std::string name, std::vector<bool> outputs, std::vector<NextEntry> next) {
    return StateRow{std::move(name), std::move(outputs), std::move(next)};
}

NextEntry go(const char* t) { return NextEntry::go(t); }
NextEntry dc() { return NextEntry::dc(); }

}  // namespace

PaperMachine machine_section1() {
    PaperMachine m;
    m.id = MachineId::Section1;
    m.table.input_vars = {"H"};
    m.table.output_vars = {"Z"};
    // columns: H=0, H=1
    m.table.states = {
        row("00", {false}, {go("00"), go("01")}),
        row("01", {true},  {dc(),     go("10")}),
        row("11", {false}, {dc(),     dc()}),
        row("10", {false}, {go("00"), go("10")}),
    };
    m.encoding.bit_names = {"y1", "y0"};
    m.encoding.codes = {{"00", 0b00}, {"01", 0b01}, {"11", 0b11}, {"10", 0b10}};
    m.notes =
        "two-bit pulse generator; excitation reads: y1' = y0 + y1 H, "
        "y0' = H ~y1 ~y0 (complements per literal), z = ~y1 y0";
    return m;
}

PaperMachine machine_section2() {
    PaperMachine m;
    m.id = MachineId::Section2;
    m.table.input_vars = {"H", "CK"};
    m.table.output_vars = {"Z"};
    // columns: HCK = 00, 01, 10, 11 by vector index; listed per index
    m.table.states = {
        row("1", {false}, {go("1"), go("1"), go("2"), go("2")}),
        row("2", {false}, {dc(),    dc(),    go("3"), go("2")}),
        row("3", {false}, {dc(),    dc(),    go("3"), go("4")}),
        row("4", {true},  {dc(),    dc(),    go("5"), go("4")}),
        row("5", {false}, {go("6"), go("6"), go("5"), go("5")}),
        row("6", {false}, {go("1"), go("1"), dc(),    dc()}),
    };
    m.encoding.bit_names = {"y2", "y1", "y0"};
    m.encoding.codes = {{"1", 0b000}, {"2", 0b001}, {"3", 0b011},
                        {"4", 0b010}, {"5", 0b110}, {"6", 0b100}};
    m.notes =
        "six-state controller, Z high exactly in state 4 (code 010); "
        "excitation reads with per-literal complements: y2' = y1 y2 + y1 ~y0 ~CK, "
        "y1' = H y1 + y0 ~CK, y0' = H ~y1 + y0 ~CK, z = ~y2 y1 ~y0; "
        "state 2 resynchronizes Z to a fresh CK high, state 6 keeps the "
        "5 -> 1 path adjacent";
    return m;
}

PaperMachine machine_reduced() {
    PaperMachine m;
    m.id = MachineId::Reduced;
    m.table.input_vars = {"H", "CK"};
    m.table.output_vars = {"Z"};
    // Reconstructed table (not transcribed): 00 idle, 01 armed, 11 Z while
    // CK high, 10 drain until H falls. H-drop during the transient states is
    // left undefined, mirroring the six-state table's undefined columns.
    m.table.states = {
        row("00", {false}, {go("00"), go("00"), go("01"), go("01")}),
        row("01", {false}, {dc(),     dc(),     go("01"), go("11")}),
        row("11", {true},  {dc(),     dc(),     go("10"), go("11")}),
        row("10", {false}, {go("00"), go("00"), go("10"), go("10")}),
    };
    m.encoding.bit_names = {"y1", "y0"};
    m.encoding.codes = {{"00", 0b00}, {"01", 0b01}, {"11", 0b11}, {"10", 0b10}};
    m.notes =
        "RECONSTRUCTED four-state reduction of the six-state controller; "
        "y1' = y0 CK + y1 H holds with no complement changes, z = y1 y0. "
        "Unlike the six-state machine it fires on the current CK high when "
        "H arrives mid-high (no fall-first wait); with H raised while CK is "
        "low both machines time identically";
    return m;
}

SynthesizedMachine synthesize(const PaperMachine& m) {
    SynthesizedMachine s;
    s.machine = m;
    s.excitation = encode(m.table, m.encoding);
    s.equations = derive_equations(s.excitation);

    std::vector<NorForm> state_forms;
    for (const Sop& sop : s.equations.next_state) state_forms.push_back(to_nor_form(sop));
    std::vector<std::pair<std::string, NorForm>> output_forms;
    for (size_t o = 0; o < s.equations.outputs.size(); ++o)
        output_forms.emplace_back(s.equations.output_names[o],
                                  to_nor_form(s.equations.outputs[o]));

    s.netlist = map_to_netlist(m.table.input_vars, m.encoding.bit_names, state_forms,
                               output_forms);
    s.packages = package_count(s.netlist);
    s.races = check_races(m.table, m.encoding, s.equations);
    return s;
}

std::map<std::string, bool> idle_init(const PaperMachine& m) {
    std::map<std::string, bool> init;
    for (const std::string& b : m.encoding.bit_names) init[b] = false;
    return init;
}

namespace {

bool has_clock(const PaperMachine& m) { return m.table.input_vars.size() >= 2; }

const std::string& trigger_input(const PaperMachine& m) { return m.table.input_vars.front(); }

}  // namespace

Stimulus demo_stimulus(const PaperMachine& m, const VerifyOptions& opts, SimTime h_width) {
    Stimulus s;
    const SimTime rise = has_clock(m) ? opts.ck_period + opts.ck_period / 4 : 10;
    s.t_end = rise + h_width + (has_clock(m) ? 4 * opts.ck_period : 50);

    SignalStim h;
    h.name = trigger_input(m);
    h.initial = false;
    h.events = {{rise, true}, {rise + h_width, false}};
    s.signals.push_back(std::move(h));

    if (has_clock(m))
        s.signals.push_back(
            make_clock(m.table.input_vars[1], opts.ck_period, opts.ck_duty, s.t_end));
    return s;
}

VerificationReport verify_method(const PaperMachine& m, const VerifyOptions& opts) {
    VerificationReport rep;
    rep.id = m.id;
    rep.options = opts;
    rep.synth = synthesize(m);

    for (SimTime w : opts.h_widths) {
        RunResult run;
        run.h_width = w;
        Stimulus stim = demo_stimulus(m, opts, w);
        run.h_rise = stim.signals.front().events.front().first;

        Trace trace = simulate(rep.synth.netlist, stim, opts.delays, idle_init(m));
        run.z_pulses = measure_pulses(trace, m.table.output_vars.front());
        run.oscillation = detect_oscillation(trace);
        run.settled = trace.diagnostics.empty();

        if (has_clock(m)) {
            const Trace::Sig* ck = trace.find(m.table.input_vars[1]);
            for (const Pulse& p : run.z_pulses) {
                SimTime last_rise = -1;
                for (const auto& [t, v] : ck->changes)
                    if (v && t <= p.start) last_rise = t;
                run.rise_offsets.push_back(last_rise < 0 ? -1 : p.start - last_rise);
            }
        }
        rep.runs.push_back(std::move(run));
    }

    // laws
    auto add_law = [&](std::string name, bool pass, std::string detail) {
        rep.laws.push_back(LawCheck{std::move(name), pass, std::move(detail)});
    };

    {
        bool one_each = true;
        std::string detail;
        for (const RunResult& r : rep.runs) {
            detail += (detail.empty() ? "" : ", ") + std::string("width ") +
                      std::to_string(r.h_width) + ": " + std::to_string(r.z_pulses.size()) +
                      " pulse(s)";
            if (r.z_pulses.size() != 1 || r.z_pulses.front().open) one_each = false;
        }
        add_law("one Z pulse per H event", one_each, detail);
    }

    if (m.id == MachineId::Section1) {
        const SimTime limit = 3 * opts.delays.default_delay;
        bool ok = true;
        std::string detail;
        for (const RunResult& r : rep.runs)
            for (const Pulse& p : r.z_pulses) {
                detail += (detail.empty() ? "" : ", ") + std::to_string(p.width) + " tu";
                ok = ok && p.width <= limit;
            }
        add_law("short-pulse law: width <= 3*delay", ok, detail);
    } else {
        const SimTime half = opts.ck_period / 2;
        bool widths_ok = true;
        bool offsets_ok = true;
        SimTime wmin = std::numeric_limits<SimTime>::max();
        SimTime wmax = std::numeric_limits<SimTime>::min();
        std::string detail;
        for (const RunResult& r : rep.runs) {
            for (const Pulse& p : r.z_pulses) {
                detail += (detail.empty() ? "" : ", ") + std::to_string(p.width) + " tu";
                widths_ok = widths_ok && p.width >= half - 3 && p.width <= half + 3;
                wmin = std::min(wmin, p.width);
                wmax = std::max(wmax, p.width);
            }
            for (SimTime off : r.rise_offsets)
                offsets_ok = offsets_ok && off >= 0 && off <= 3;
        }
        add_law("clock-width law: width in [P/2-3, P/2+3]", widths_ok, detail);
        add_law("width independent of H width (<= 1 tu spread)",
                wmax >= wmin && wmax - wmin <= 1,
                "spread " + std::to_string(wmax >= wmin ? wmax - wmin : 0) + " tu");
        add_law("Z rises within 3 tu of a CK rising edge", offsets_ok, "");
    }

    {
        int critical = 0;
        for (const RaceDiagnostic& rd : rep.synth.races)
            if (rd.kind == RaceDiagnostic::Kind::CriticalRace ||
                rd.kind == RaceDiagnostic::Kind::UndefinedRace)
                ++critical;
        add_law("no critical or undefined races", critical == 0,
                std::to_string(critical) + " flagged");
    }
    {
        bool quiet = true;
        for (const RunResult& r : rep.runs)
            quiet = quiet && r.oscillation.empty() && r.settled;
        add_law("no oscillation flags", quiet, "");
    }

    rep.pass = std::all_of(rep.laws.begin(), rep.laws.end(),
                           [](const LawCheck& l) { return l.pass; });
    return rep;
}

}  // namespace norflow
