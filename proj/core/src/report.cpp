#include "norflow/report.hpp"

#include <sstream>

namespace norflow {

std::string render_equations(const Equations& eqs) {
    std::ostringstream out;
    for (size_t j = 0; j < eqs.bit_names.size(); ++j)
        out << eqs.bit_names[j] << "' = " << sop_text(eqs.next_state[j]) << '\n';
    for (size_t o = 0; o < eqs.output_names.size(); ++o)
        out << eqs.output_names[o] << " = " << sop_text(eqs.outputs[o]) << '\n';
    return out.str();
}

std::string render_report_text(const VerificationReport& rep) {
    std::ostringstream out;
    out << "machine: " << machine_name(rep.id) << '\n';
    out << "gates: " << rep.synth.packages.gate_count
        << "  packages (dual 4-input NOR): " << rep.synth.packages.package_count << '\n';
    out << "equations:\n";
    std::istringstream eq(render_equations(rep.synth.equations));
    std::string line;
    while (std::getline(eq, line)) out << "  " << line << '\n';

    int adjacent = 0, noncritical = 0, critical = 0, undefined = 0;
    for (const RaceDiagnostic& r : rep.synth.races) {
        switch (r.kind) {
            case RaceDiagnostic::Kind::Adjacent: ++adjacent; break;
            case RaceDiagnostic::Kind::NoncriticalRace: ++noncritical; break;
            case RaceDiagnostic::Kind::CriticalRace: ++critical; break;
            case RaceDiagnostic::Kind::UndefinedRace: ++undefined; break;
        }
    }
    out << "transitions: " << rep.synth.races.size() << " (adjacent " << adjacent
        << ", noncritical races " << noncritical << ", critical " << critical
        << ", undefined " << undefined << ")\n";
    for (const RaceDiagnostic& r : rep.synth.races)
        if (r.kind == RaceDiagnostic::Kind::CriticalRace ||
            r.kind == RaceDiagnostic::Kind::UndefinedRace)
            out << "  " << race_kind_name(r.kind) << ": " << r.source << " -> " << r.target
                << " [" << r.witness << "]\n";

    for (const RunResult& run : rep.runs) {
        out << "run h_width=" << run.h_width << ": ";
        if (run.z_pulses.empty()) {
            out << "no Z pulses";
        } else {
            out << run.z_pulses.size() << " Z pulse(s):";
            for (size_t i = 0; i < run.z_pulses.size(); ++i) {
                const Pulse& p = run.z_pulses[i];
                out << " [t=" << p.start << " w=" << p.width << (p.open ? " open" : "") << "]";
                if (i < run.rise_offsets.size())
                    out << " rise " << run.rise_offsets[i] << " tu after CK rise";
            }
        }
        if (!run.oscillation.empty()) out << "  OSCILLATION";
        out << '\n';
    }
    for (const LawCheck& law : rep.laws) {
        out << (law.pass ? "  [pass] " : "  [FAIL] ") << law.name;
        if (!law.detail.empty()) out << " (" << law.detail << ")";
        out << '\n';
    }
    out << "verdict: " << (rep.pass ? "PASS" : "FAIL") << '\n';
    return out.str();
}

std::string render_report_kv(const VerificationReport& rep) {
    std::ostringstream out;
    out << "machine=" << machine_name(rep.id) << '\n';
    out << "gates=" << rep.synth.packages.gate_count << '\n';
    out << "packages=" << rep.synth.packages.package_count << '\n';
    for (size_t j = 0; j < rep.synth.equations.bit_names.size(); ++j)
        out << "eq." << rep.synth.equations.bit_names[j] << '='
            << sop_text(rep.synth.equations.next_state[j]) << '\n';
    for (size_t o = 0; o < rep.synth.equations.output_names.size(); ++o)
        out << "eq." << rep.synth.equations.output_names[o] << '='
            << sop_text(rep.synth.equations.outputs[o]) << '\n';

    int critical = 0, undefined = 0;
    for (const RaceDiagnostic& r : rep.synth.races) {
        if (r.kind == RaceDiagnostic::Kind::CriticalRace) ++critical;
        if (r.kind == RaceDiagnostic::Kind::UndefinedRace) ++undefined;
    }
    out << "races.total=" << rep.synth.races.size() << '\n';
    out << "races.critical=" << critical << '\n';
    out << "races.undefined=" << undefined << '\n';

    for (size_t i = 0; i < rep.runs.size(); ++i) {
        const RunResult& run = rep.runs[i];
        out << "run." << i << ".h_width=" << run.h_width << '\n';
        out << "run." << i << ".pulses=" << run.z_pulses.size() << '\n';
        for (size_t p = 0; p < run.z_pulses.size(); ++p) {
            out << "run." << i << ".pulse." << p << ".start=" << run.z_pulses[p].start << '\n';
            out << "run." << i << ".pulse." << p << ".width=" << run.z_pulses[p].width << '\n';
            if (p < run.rise_offsets.size())
                out << "run." << i << ".pulse." << p << ".rise_offset=" << run.rise_offsets[p]
                    << '\n';
        }
        out << "run." << i << ".oscillation=" << run.oscillation.size() << '\n';
    }
    for (const LawCheck& law : rep.laws) {
        std::string key;
        for (char c : law.name)
            key += (c == ' ' || c == '(' || c == ')' || c == ',' ? '_' : c);
        out << "law." << key << '=' << (law.pass ? 1 : 0) << '\n';
    }
    out << "pass=" << (rep.pass ? 1 : 0) << '\n';
    return out.str();
}

}  // namespace norflow
