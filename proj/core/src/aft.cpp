#include "norflow/aft.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace norflow {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

bool all_bits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return c == '0' || c == '1';
    });
}

uint32_t bits_value(const std::string& s) {
    uint32_t v = 0;
    for (char c : s) v = (v << 1) | (c == '1' ? 1u : 0u);
    return v;
}

std::string bits_text(uint32_t v, int width) {
    std::string s;
    for (int j = width - 1; j >= 0; --j) s += (v >> j) & 1 ? '1' : '0';
    return s;
}

SimTime parse_time(const std::string& tok, int line) {
    try {
        size_t used = 0;
        const long long v = std::stoll(tok, &used);
        if (used != tok.size() || v < 0) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw AftParseError(line, 1, "expected a non-negative integer, got '" + tok + "'");
    }
}

}  // namespace

FlowTableDocument parse_flow_table(const std::string& text) {
    FlowTableDocument doc;
    std::vector<std::string> statebits;
    std::vector<std::pair<std::string, uint32_t>> codes;  // state -> code, declaration order
    std::optional<size_t> code_width;
    std::set<std::string> seen_states;
    int current_state = -1;  // index into doc.table.states
    std::vector<std::set<uint32_t>> seen_vectors;
    std::vector<std::pair<int, std::string>> all_targets;  // line, target

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const auto toks = tokenize(raw);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];

        if (kw == "inputs") {
            if (!doc.table.input_vars.empty())
                throw AftParseError(lineno, 1, "duplicate 'inputs' line");
            if (toks.size() < 2) throw AftParseError(lineno, 1, "'inputs' needs names");
            doc.table.input_vars.assign(toks.begin() + 1, toks.end());
        } else if (kw == "outputs") {
            if (!doc.table.output_vars.empty())
                throw AftParseError(lineno, 1, "duplicate 'outputs' line");
            if (toks.size() < 2) throw AftParseError(lineno, 1, "'outputs' needs names");
            doc.table.output_vars.assign(toks.begin() + 1, toks.end());
        } else if (kw == "statebits") {
            if (toks.size() < 2) throw AftParseError(lineno, 1, "'statebits' needs names");
            statebits.assign(toks.begin() + 1, toks.end());
        } else if (kw == "state") {
            if (doc.table.input_vars.empty())
                throw AftParseError(lineno, 1, "'inputs' must come before states");
            if (doc.table.output_vars.empty())
                throw AftParseError(lineno, 1, "'outputs' must come before states");
            if (toks.size() < 2) throw AftParseError(lineno, 1, "'state' needs a name");
            StateRow row;
            row.name = toks[1];
            row.outputs.assign(doc.table.output_vars.size(), false);
            row.next.assign(doc.table.vector_count(), NextEntry::dc());
            std::vector<bool> have_output(doc.table.output_vars.size(), false);
            for (size_t i = 2; i < toks.size(); ++i) {
                const size_t eq = toks[i].find('=');
                if (eq == std::string::npos)
                    throw AftParseError(lineno, 1, "expected key=value, got '" + toks[i] + "'");
                const std::string key = toks[i].substr(0, eq);
                const std::string val = toks[i].substr(eq + 1);
                if (key == "code") {
                    if (!all_bits(val))
                        throw AftParseError(lineno, 1, "bad code bits '" + val + "'");
                    if (code_width && *code_width != val.size())
                        throw AftParseError(lineno, 1, "inconsistent code width");
                    code_width = val.size();
                    codes.emplace_back(row.name, bits_value(val));
                } else {
                    auto it = std::find(doc.table.output_vars.begin(),
                                        doc.table.output_vars.end(), key);
                    if (it == doc.table.output_vars.end())
                        throw AftParseError(lineno, 1, "unknown output '" + key + "'");
                    if (val != "0" && val != "1")
                        throw AftParseError(lineno, 1, "output must be 0 or 1");
                    const size_t oi = it - doc.table.output_vars.begin();
                    row.outputs[oi] = val == "1";
                    have_output[oi] = true;
                }
            }
            for (size_t oi = 0; oi < have_output.size(); ++oi)
                if (!have_output[oi])
                    throw AftParseError(lineno, 1, "state '" + row.name + "' missing output " +
                                                       doc.table.output_vars[oi] + "=");
            if (!seen_states.insert(row.name).second)
                doc.diagnostics.push_back(
                    {lineno, "duplicate state '" + row.name + "'"});
            doc.table.states.push_back(std::move(row));
            seen_vectors.emplace_back();
            current_state = static_cast<int>(doc.table.states.size()) - 1;
        } else if (kw == "on") {
            if (current_state < 0)
                throw AftParseError(lineno, 1, "'on' outside of a state block");
            if (toks.size() != 4 || toks[2] != "->")
                throw AftParseError(lineno, 1, "expected 'on <bits> -> <state|->'");
            if (!all_bits(toks[1]) || toks[1].size() != doc.table.input_vars.size())
                throw AftParseError(lineno, 1,
                                    "input vector '" + toks[1] + "' does not match " +
                                        std::to_string(doc.table.input_vars.size()) +
                                        " input(s)");
            const uint32_t v = bits_value(toks[1]);
            if (!seen_vectors[current_state].insert(v).second)
                throw AftParseError(lineno, 1, "duplicate entry for vector " + toks[1]);
            if (toks[3] == "-") {
                doc.table.states[current_state].next[v] = NextEntry::dc();
            } else {
                doc.table.states[current_state].next[v] = NextEntry::go(toks[3]);
                all_targets.emplace_back(lineno, toks[3]);
            }
        } else if (kw == "sim") {
            if (toks.size() < 2) throw AftParseError(lineno, 1, "'sim' needs a directive");
            const std::string& what = toks[1];
            if (what == "delay" && toks.size() == 3) {
                doc.directives.delay = parse_time(toks[2], lineno);
            } else if (what == "horizon" && toks.size() == 3) {
                doc.directives.horizon = parse_time(toks[2], lineno);
            } else if (what == "clock" && (toks.size() == 5 || toks.size() == 7)) {
                ClockDirective c;
                c.input = toks[2];
                if (toks[3] != "period") throw AftParseError(lineno, 1, "expected 'period'");
                c.period = parse_time(toks[4], lineno);
                if (toks.size() == 7) {
                    if (toks[5] != "duty") throw AftParseError(lineno, 1, "expected 'duty'");
                    const size_t slash = toks[6].find('/');
                    if (slash == std::string::npos)
                        throw AftParseError(lineno, 1, "duty must be <num>/<den>");
                    c.duty.num = static_cast<int>(parse_time(toks[6].substr(0, slash), lineno));
                    c.duty.den = static_cast<int>(parse_time(toks[6].substr(slash + 1), lineno));
                }
                doc.directives.clocks.push_back(std::move(c));
            } else if (what == "pulse" && toks.size() == 5) {
                PulseDirective p;
                p.input = toks[2];
                p.rise = parse_time(toks[3], lineno);
                p.fall = parse_time(toks[4], lineno);
                doc.directives.pulses.push_back(std::move(p));
            } else {
                throw AftParseError(lineno, 1, "unrecognized sim directive");
            }
        } else {
            throw AftParseError(lineno, 1, "unrecognized line '" + kw + "'");
        }
    }

    if (doc.table.states.empty()) throw AftParseError(lineno, 1, "no states");

    for (const auto& [line, target] : all_targets)
        if (!doc.table.find_state(target))
            doc.diagnostics.push_back({line, "unknown target state '" + target + "'"});

    if (!codes.empty()) {
        if (codes.size() != doc.table.states.size())
            throw AftParseError(lineno, 1,
                                "either every state or no state may carry code=");
        StateEncoding enc;
        if (!statebits.empty()) {
            if (code_width && statebits.size() != *code_width)
                throw AftParseError(lineno, 1, "statebits width differs from code width");
            enc.bit_names = statebits;
        } else {
            for (int j = static_cast<int>(*code_width) - 1; j >= 0; --j)
                enc.bit_names.push_back("y" + std::to_string(j));
        }
        for (const auto& [name, code] : codes) enc.codes[name] = code;
        doc.encoding = std::move(enc);
    } else if (!statebits.empty()) {
        throw AftParseError(lineno, 1, "'statebits' given but states carry no code=");
    }

    return doc;
}

std::string render_flow_table(const FlowTableDocument& doc) {
    std::ostringstream out;
    out << "inputs";
    for (const auto& n : doc.table.input_vars) out << ' ' << n;
    out << "\noutputs";
    for (const auto& n : doc.table.output_vars) out << ' ' << n;
    out << '\n';
    if (doc.encoding) {
        out << "statebits";
        for (const auto& n : doc.encoding->bit_names) out << ' ' << n;
        out << '\n';
    }
    const int k = doc.table.input_count();
    for (const StateRow& s : doc.table.states) {
        out << "state " << s.name;
        if (doc.encoding)
            out << " code=" << bits_text(doc.encoding->codes.at(s.name),
                                         doc.encoding->width());
        for (size_t oi = 0; oi < doc.table.output_vars.size(); ++oi)
            out << ' ' << doc.table.output_vars[oi] << '=' << (s.outputs[oi] ? '1' : '0');
        out << '\n';
        for (uint32_t v = 0; v < doc.table.vector_count(); ++v) {
            const NextEntry& e = s.next[v];
            if (e.dont_care) continue;  // omitted vectors default to don't-care
            out << "  on " << bits_text(v, k) << " -> " << e.target << '\n';
        }
    }
    if (doc.directives.delay) out << "sim delay " << *doc.directives.delay << '\n';
    for (const ClockDirective& c : doc.directives.clocks) {
        out << "sim clock " << c.input << " period " << c.period;
        if (!(c.duty.num == 1 && c.duty.den == 2))
            out << " duty " << c.duty.num << '/' << c.duty.den;
        out << '\n';
    }
    for (const PulseDirective& p : doc.directives.pulses)
        out << "sim pulse " << p.input << ' ' << p.rise << ' ' << p.fall << '\n';
    if (doc.directives.horizon) out << "sim horizon " << *doc.directives.horizon << '\n';
    return out.str();
}

}  // namespace norflow
