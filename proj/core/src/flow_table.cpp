#include "norflow/flow_table.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace norflow {

const StateRow* FlowTable::find_state(const std::string& name) const {
    for (const StateRow& s : states)
        if (s.name == name) return &s;
    return nullptr;
}

int FlowTable::state_index(const std::string& name) const {
    for (size_t i = 0; i < states.size(); ++i)
        if (states[i].name == name) return static_cast<int>(i);
    return -1;
}

uint32_t StateEncoding::code_of(const std::string& state) const {
    auto it = codes.find(state);
    if (it == codes.end())
        throw std::invalid_argument("StateEncoding: no code for state " + state);
    return it->second;
}

std::optional<std::string> StateEncoding::state_of(uint32_t code) const {
    for (const auto& [name, c] : codes)
        if (c == code) return name;
    return std::nullopt;
}

void StateEncoding::validate(const FlowTable& ft) const {
    const uint32_t limit = 1u << bit_names.size();
    std::set<uint32_t> seen;
    for (const StateRow& s : ft.states) {
        auto it = codes.find(s.name);
        if (it == codes.end())
            throw std::invalid_argument("StateEncoding: no code for state " + s.name);
        if (it->second >= limit)
            throw std::invalid_argument("StateEncoding: code wider than bit names for " + s.name);
        if (!seen.insert(it->second).second)
            throw std::invalid_argument("StateEncoding: duplicate code for " + s.name);
    }
    uint32_t need = 0;
    while ((1u << need) < ft.states.size()) ++need;
    if (bit_names.size() < need)
        throw std::invalid_argument("StateEncoding: fewer bits than ceil(log2(states))");
}

std::vector<Diagnostic> validate_flow_table(const FlowTable& ft) {
    std::vector<Diagnostic> out;
    const uint32_t nvec = ft.vector_count();

    std::set<std::string> names;
    for (const StateRow& s : ft.states) {
        if (!names.insert(s.name).second)
            out.push_back({Diagnostic::Kind::DuplicateState, s.name,
                           "duplicate state name '" + s.name + "'"});
        if (s.next.size() != nvec)
            out.push_back({Diagnostic::Kind::MissingInputColumn, s.name,
                           "state '" + s.name + "' covers " + std::to_string(s.next.size()) +
                               " of " + std::to_string(nvec) + " input vectors"});
        for (const NextEntry& e : s.next) {
            if (!e.dont_care && !ft.find_state(e.target))
                out.push_back({Diagnostic::Kind::DanglingTarget, s.name,
                               "state '" + s.name + "' targets nonexistent state '" +
                                   e.target + "'"});
        }
    }

    if (!ft.states.empty()) {
        std::set<std::string> reach;
        std::deque<std::string> work{ft.states.front().name};
        reach.insert(ft.states.front().name);
        while (!work.empty()) {
            const StateRow* row = ft.find_state(work.front());
            work.pop_front();
            if (!row) continue;
            for (const NextEntry& e : row->next) {
                if (e.dont_care || !ft.find_state(e.target)) continue;
                if (reach.insert(e.target).second) work.push_back(e.target);
            }
        }
        for (const StateRow& s : ft.states)
            if (!reach.count(s.name))
                out.push_back({Diagnostic::Kind::UnreachableState, s.name,
                               "state '" + s.name + "' is unreachable from '" +
                                   ft.states.front().name + "' via defined entries"});
    }
    return out;
}

SettleResult settle(const FlowTable& ft, const std::string& start, uint32_t input_vector) {
    if (!ft.find_state(start))
        throw std::invalid_argument("settle: unknown state " + start);
    if (input_vector >= ft.vector_count())
        throw std::invalid_argument("settle: input vector out of range");

    SettleResult r;
    r.path.push_back(start);
    std::string cur = start;
    const size_t bound = ft.states.size() + 1;
    for (size_t step = 0; step < bound; ++step) {
        const StateRow* row = ft.find_state(cur);
        const NextEntry& e = row->next.at(input_vector);
        if (e.dont_care) {
            r.kind = SettleResult::Kind::Undefined;
            return r;
        }
        if (e.target == cur) {
            r.kind = SettleResult::Kind::Stable;
            r.state = cur;
            return r;
        }
        if (!ft.find_state(e.target))
            throw std::invalid_argument("settle: dangling target " + e.target);
        auto seen = std::find(r.path.begin(), r.path.end(), e.target);
        if (seen != r.path.end()) {
            r.kind = SettleResult::Kind::Cycle;
            r.cycle.assign(seen, r.path.end());
            return r;
        }
        r.path.push_back(e.target);
        cur = e.target;
    }
    r.kind = SettleResult::Kind::Cycle;  // pigeonhole: cannot happen without revisit
    r.cycle = r.path;
    return r;
}

ExcitationTable encode(const FlowTable& ft, const StateEncoding& enc) {
    enc.validate(ft);
    ExcitationTable exc;
    exc.input_vars = ft.input_vars;
    exc.bit_names = enc.bit_names;
    exc.output_vars = ft.output_vars;
    exc.m = enc.width();
    exc.k = ft.input_count();
    exc.entries.assign(exc.code_count(),
                       std::vector<std::optional<uint32_t>>(exc.vector_count(), std::nullopt));
    exc.outputs.assign(exc.code_count(), std::nullopt);

    for (const StateRow& s : ft.states) {
        const uint32_t code = enc.code_of(s.name);
        exc.outputs[code] = s.outputs;
        for (uint32_t v = 0; v < exc.vector_count(); ++v) {
            const NextEntry& e = s.next.at(v);
            if (e.dont_care) continue;
            exc.entries[code][v] = enc.code_of(e.target);
        }
    }
    return exc;
}

std::string diagnostic_text(const Diagnostic& d) {
    switch (d.kind) {
        case Diagnostic::Kind::DuplicateState: return "duplicate-state: " + d.message;
        case Diagnostic::Kind::DanglingTarget: return "dangling-target: " + d.message;
        case Diagnostic::Kind::MissingInputColumn: return "missing-input-column: " + d.message;
        case Diagnostic::Kind::UnreachableState: return "unreachable-state: " + d.message;
    }
    return d.message;
}

std::string race_kind_name(RaceDiagnostic::Kind k) {
    switch (k) {
        case RaceDiagnostic::Kind::Adjacent: return "adjacent";
        case RaceDiagnostic::Kind::NoncriticalRace: return "noncritical-race";
        case RaceDiagnostic::Kind::CriticalRace: return "critical-race";
        case RaceDiagnostic::Kind::UndefinedRace: return "undefined-race";
    }
    return "?";
}

}  // namespace norflow
