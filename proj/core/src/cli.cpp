#include "norflow/cli.hpp"

#include "norflow/aft.hpp"
#include "norflow/report.hpp"
#include "norflow/scenarios.hpp"
#include "norflow/vcd.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace norflow {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct DocSynth {
    FlowTableDocument doc;
    StateEncoding encoding;
    ExcitationTable excitation;
    Equations equations;
    Netlist netlist;
};

DocSynth synthesize_doc(const FlowTableDocument& doc) {
    if (!doc.encoding)
        throw std::runtime_error("file carries no state codes (code=...); cannot synthesize");
    DocSynth s;
    s.doc = doc;
    s.encoding = *doc.encoding;
    s.excitation = encode(doc.table, s.encoding);
    s.equations = derive_equations(s.excitation);
    std::vector<NorForm> state_forms;
    for (const Sop& sop : s.equations.next_state) state_forms.push_back(to_nor_form(sop));
    std::vector<std::pair<std::string, NorForm>> output_forms;
    for (size_t o = 0; o < s.equations.outputs.size(); ++o)
        output_forms.emplace_back(s.equations.output_names[o],
                                  to_nor_form(s.equations.outputs[o]));
    s.netlist = map_to_netlist(doc.table.input_vars, s.encoding.bit_names, state_forms,
                               output_forms);
    return s;
}

// Stimulus for `sim`: file directives where present, CLI flags/defaults
// otherwise. Clock goes on the directive-named input, else an input named
// CK/ck/clk, else (2+ inputs) the second input.
Stimulus doc_stimulus(const FlowTableDocument& doc, SimTime ck_period, SimTime h_width,
                      std::string* clock_name_out) {
    const auto& inputs = doc.table.input_vars;
    std::string clock_name;
    if (!doc.directives.clocks.empty()) {
        clock_name = doc.directives.clocks.front().input;
    } else {
        for (const auto& n : inputs)
            if (n == "CK" || n == "ck" || n == "clk" || n == "CLK") clock_name = n;
        if (clock_name.empty() && inputs.size() >= 2) clock_name = inputs[1];
    }
    if (clock_name_out) *clock_name_out = clock_name;

    SimTime period = ck_period;
    Duty duty{1, 2};
    if (!doc.directives.clocks.empty()) {
        if (ck_period <= 0) period = doc.directives.clocks.front().period;
        duty = doc.directives.clocks.front().duty;
    }
    if (period <= 0) period = 20;

    std::string trigger;
    for (const auto& n : inputs)
        if (n != clock_name) {
            trigger = n;
            break;
        }

    SimTime rise = clock_name.empty() ? 10 : period + period / 4;
    SimTime fall = rise + (h_width > 0 ? h_width : 35);
    for (const PulseDirective& p : doc.directives.pulses)
        if (p.input == trigger && h_width <= 0) {
            rise = p.rise;
            fall = p.fall;
        }

    Stimulus s;
    s.t_end = doc.directives.horizon.value_or(fall + (clock_name.empty() ? 50 : 4 * period));

    for (const auto& n : inputs) {
        if (n == clock_name) continue;
        SignalStim sig;
        sig.name = n;
        sig.initial = false;
        if (n == trigger) sig.events = {{rise, true}, {fall, false}};
        s.signals.push_back(std::move(sig));
    }
    if (!clock_name.empty()) s.signals.push_back(make_clock(clock_name, period, duty, s.t_end));
    return s;
}

int cmd_check(const std::string& path, std::ostream& out, std::ostream& err) {
    FlowTableDocument doc = parse_flow_table(slurp(path));
    int issues = 0;
    for (const SemanticDiagnostic& d : doc.diagnostics) {
        out << "line " << d.line << ": " << d.message << '\n';
        ++issues;
    }
    for (const Diagnostic& d : validate_flow_table(doc.table)) {
        out << diagnostic_text(d) << '\n';
        ++issues;
    }
    if (doc.encoding) {
        try {
            DocSynth s = synthesize_doc(doc);
            const auto races = check_races(doc.table, s.encoding, s.equations);
            const int k = doc.table.input_count();
            int bad = 0;
            for (const RaceDiagnostic& r : races) {
                std::string vec;
                for (int j = k - 1; j >= 0; --j) vec += (r.input_vector >> j) & 1 ? '1' : '0';
                out << race_kind_name(r.kind) << ": " << r.source << " -> " << r.target
                    << " (on " << vec << ", distance " << r.hamming << ")";
                if (!r.witness.empty()) out << " [" << r.witness << "]";
                out << '\n';
                if (r.kind == RaceDiagnostic::Kind::CriticalRace ||
                    r.kind == RaceDiagnostic::Kind::UndefinedRace)
                    ++bad;
            }
            issues += bad;
        } catch (const std::exception& e) {
            err << "race analysis failed: " << e.what() << '\n';
            ++issues;
        }
    }
    out << (issues == 0 ? "ok" : std::to_string(issues) + " issue(s)") << '\n';
    return issues == 0 ? 0 : 1;
}

int cmd_synth(const std::string& path, std::ostream& out) {
    FlowTableDocument doc = parse_flow_table(slurp(path));
    DocSynth s = synthesize_doc(doc);
    out << render_equations(s.equations);
    out << netlist_dump(s.netlist);
    const PackageReport pkg = package_count(s.netlist);
    out << "gates " << pkg.gate_count << ", packages " << pkg.package_count << '\n';
    return 0;
}

int cmd_sim(const std::string& path, SimTime ck_period, SimTime h_width, SimTime delay,
            const std::string& vcd_path, std::ostream& out, std::ostream& err) {
    FlowTableDocument doc = parse_flow_table(slurp(path));
    DocSynth s = synthesize_doc(doc);

    std::string clock_name;
    Stimulus stim = doc_stimulus(doc, ck_period, h_width, &clock_name);
    DelayModel delays;
    delays.default_delay = delay > 0 ? delay : doc.directives.delay.value_or(1);

    std::map<std::string, bool> init;
    for (const auto& b : s.encoding.bit_names) init[b] = false;

    Trace trace = simulate(s.netlist, stim, delays, init);
    for (const auto& d : trace.diagnostics) err << "diagnostic: " << d << '\n';

    for (const auto& oname : doc.table.output_vars) {
        const auto pulses = measure_pulses(trace, oname);
        out << oname << ": " << pulses.size() << " pulse(s)";
        for (const Pulse& p : pulses)
            out << " [t=" << p.start << " w=" << p.width << (p.open ? " open" : "") << "]";
        out << '\n';
    }
    const auto osc = detect_oscillation(trace);
    for (const auto& o : osc) out << "oscillation: " << o << '\n';

    if (!vcd_path.empty()) {
        std::ofstream vf(vcd_path, std::ios::binary);
        if (!vf) {
            err << "cannot write " << vcd_path << '\n';
            return 1;
        }
        vf << write_vcd(trace);
        out << "wrote " << vcd_path << '\n';
    }
    return trace.diagnostics.empty() && osc.empty() ? 0 : 1;
}

int cmd_demo(const std::string& which, std::ostream& out, std::ostream& err) {
    const auto id = machine_from_name(which);
    if (!id) {
        err << "unknown machine '" << which << "' (section1|section2|reduced)\n";
        return 2;
    }
    PaperMachine m = *id == MachineId::Section1   ? machine_section1()
                     : *id == MachineId::Section2 ? machine_section2()
                                                  : machine_reduced();
    VerifyOptions opts;  // P=20, widths {35, 200}, delay 1
    const VerificationReport rep = verify_method(m, opts);
    out << render_report_text(rep);
    return rep.pass ? 0 : 1;
}

int cmd_report(const std::string& path, std::ostream& out) {
    // builtin machine names run the full pipeline with demo defaults
    if (const auto id = machine_from_name(path)) {
        PaperMachine m = *id == MachineId::Section1   ? machine_section1()
                         : *id == MachineId::Section2 ? machine_section2()
                                                      : machine_reduced();
        const VerificationReport rep = verify_method(m, VerifyOptions{});
        out << render_report_kv(rep);
        return rep.pass ? 0 : 1;
    }
    FlowTableDocument doc = parse_flow_table(slurp(path));
    DocSynth s = synthesize_doc(doc);
    out << "states=" << doc.table.states.size() << '\n';
    out << "inputs=" << doc.table.input_vars.size() << '\n';
    for (size_t j = 0; j < s.equations.bit_names.size(); ++j)
        out << "eq." << s.equations.bit_names[j] << '=' << sop_text(s.equations.next_state[j])
            << '\n';
    for (size_t o = 0; o < s.equations.output_names.size(); ++o)
        out << "eq." << s.equations.output_names[o] << '=' << sop_text(s.equations.outputs[o])
            << '\n';
    const PackageReport pkg = package_count(s.netlist);
    out << "gates=" << pkg.gate_count << '\n';
    out << "packages=" << pkg.package_count << '\n';
    int critical = 0;
    const auto races = check_races(doc.table, s.encoding, s.equations);
    for (const RaceDiagnostic& r : races)
        if (r.kind == RaceDiagnostic::Kind::CriticalRace ||
            r.kind == RaceDiagnostic::Kind::UndefinedRace)
            ++critical;
    out << "races.total=" << races.size() << '\n';
    out << "races.critical=" << critical << '\n';
    int issues = static_cast<int>(doc.diagnostics.size() +
                                  validate_flow_table(doc.table).size()) +
                 critical;
    out << "pass=" << (issues == 0 ? 1 : 0) << '\n';
    return issues == 0 ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"asynchronous flow-table synthesis to NOR-only netlists"};
    app.require_subcommand(1);

    std::string check_file;
    auto* check = app.add_subcommand("check", "validate a flow table and report races");
    check->add_option("file", check_file, ".aft flow-table file")->required();

    std::string synth_file;
    auto* synth = app.add_subcommand("synth", "derive equations and the NOR netlist");
    synth->add_option("file", synth_file, ".aft flow-table file")->required();

    std::string sim_file, sim_vcd;
    SimTime sim_period = 0, sim_hwidth = 0, sim_delay = 0;
    auto* sim = app.add_subcommand("sim", "simulate the synthesized netlist");
    sim->add_option("file", sim_file, ".aft flow-table file")->required();
    sim->add_option("--ck-period", sim_period, "clock period in tu (default 20 or directive)");
    sim->add_option("--h-width", sim_hwidth, "trigger pulse width in tu (default 35)");
    sim->add_option("--delay", sim_delay, "gate delay in tu (default 1 or directive)");
    sim->add_option("--out", sim_vcd, "write a VCD waveform to this path");

    std::string demo_which;
    auto* demo = app.add_subcommand("demo", "run a built-in machine end to end");
    demo->add_option("machine", demo_which, "section1|section2|reduced")->required();

    std::string report_file;
    auto* report = app.add_subcommand("report", "machine-readable full-pipeline report");
    report->add_option("file", report_file, ".aft file or built-in machine name")->required();

    std::vector<std::string> argv = args;
    std::reverse(argv.begin(), argv.end());
    try {
        app.parse(argv);  // CLI11 takes reversed args
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << e.what() << '\n';
        return 2;
    }

    try {
        if (check->parsed()) return cmd_check(check_file, out, err);
        if (synth->parsed()) return cmd_synth(synth_file, out);
        if (sim->parsed())
            return cmd_sim(sim_file, sim_period, sim_hwidth, sim_delay, sim_vcd, out, err);
        if (demo->parsed()) return cmd_demo(demo_which, out, err);
        if (report->parsed()) return cmd_report(report_file, out);
    } catch (const AftParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    err << "no subcommand\n";
    return 2;
}

}  // namespace norflow
