#include "norflow/eventsim.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace norflow {

void Stimulus::validate() const {
    for (const SignalStim& s : signals) {
        SimTime prev = -1;
        for (const auto& [t, v] : s.events) {
            (void)v;
            if (t < 0 || t <= prev)
                throw std::invalid_argument("stimulus: events for " + s.name +
                                            " must have strictly increasing non-negative times");
            if (t >= t_end)
                throw std::invalid_argument("stimulus: event at/after t_end for " + s.name);
            prev = t;
        }
    }
}

const SignalStim* Stimulus::find(const std::string& name) const {
    for (const SignalStim& s : signals)
        if (s.name == name) return &s;
    return nullptr;
}

SignalStim make_clock(const std::string& name, SimTime period, Duty duty, SimTime t_end) {
    if (period < 2) throw std::invalid_argument("make_clock: period must be >= 2");
    if (duty.num <= 0 || duty.den <= 0 || duty.num >= duty.den)
        throw std::invalid_argument("make_clock: duty must be a proper fraction");
    if ((period * duty.num) % duty.den != 0)
        throw std::invalid_argument("make_clock: duty * period must be an integer");
    const SimTime high = period * duty.num / duty.den;
    if (high < 1 || period - high < 1)
        throw std::invalid_argument("make_clock: degenerate high/low time");

    SignalStim s;
    s.name = name;
    s.initial = false;
    for (SimTime cycle = 0;; cycle += period) {
        const SimTime rise = cycle + (period - high);
        const SimTime fall = cycle + period;
        if (rise < t_end) s.events.emplace_back(rise, true);
        if (fall < t_end) s.events.emplace_back(fall, false);
        if (fall >= t_end) break;
    }
    return s;
}

SimTime DelayModel::delay_for(const std::string& net_name) const {
    auto it = overrides.find(net_name);
    return it == overrides.end() ? default_delay : it->second;
}

void DelayModel::validate() const {
    if (default_delay < 1) throw std::invalid_argument("delay model: delays must be >= 1");
    for (const auto& [name, d] : overrides) {
        (void)name;
        if (d < 1) throw std::invalid_argument("delay model: delays must be >= 1");
    }
}

const Trace::Sig* Trace::find(const std::string& name) const {
    auto it = index.find(name);
    if (it != index.end()) return &signals[it->second];
    for (const auto& [display, net] : output_aliases)
        if (display == name) return find(net);
    return nullptr;
}

bool Trace::value_at(const std::string& name, SimTime t) const {
    const Sig* s = find(name);
    if (!s) throw std::invalid_argument("trace: unknown signal " + name);
    bool v = s->initial;
    for (const auto& [time, value] : s->changes) {
        if (time > t) break;
        v = value;
    }
    return v;
}

namespace {

struct Engine {
    const Netlist& nl;
    const DelayModel& delays;
    Trace& trace;
    std::vector<bool> values;                               // per net id
    std::map<SimTime, std::map<std::string, bool>> queue;   // pending net changes
    SimTime last_state_activity = -1;
    bool state_spills_horizon = false;

    Engine(const Netlist& n, const DelayModel& d, Trace& t)
        : nl(n), delays(d), trace(t), values(n.net_names.size(), false) {}

    // One combinational pass with the feedback loop cut. Non-state nets are
    // updated in place (diffs reported via `changed`); computed state-driver
    // values are returned.
    std::vector<bool> settle(std::vector<std::pair<int, bool>>* changed) {
        std::vector<bool> next(nl.state_nets.size(), false);
        for (int g : nl.topo) {
            const Gate& gate = nl.gates[g];
            bool any = false;
            for (int in : gate.inputs) any = any || values[in];
            const bool v = !any;
            if (nl.is_state_net(gate.output)) {
                for (size_t i = 0; i < nl.state_nets.size(); ++i)
                    if (nl.state_nets[i] == gate.output) next[i] = v;
            } else if (values[gate.output] != v) {
                values[gate.output] = v;
                if (changed) changed->emplace_back(gate.output, v);
            }
        }
        return next;
    }

    void record(int net, SimTime t, bool v) {
        if (t > trace.t_end) return;
        auto& sig = trace.signals[net];
        const bool prev = sig.changes.empty() ? sig.initial : sig.changes.back().second;
        if (prev != v) sig.changes.emplace_back(t, v);
    }

    // Settle at instant `now`; trace non-state diffs and schedule state-net
    // diffs, each at + delay of the driving gate's output net.
    void evaluate(SimTime now) {
        std::vector<std::pair<int, bool>> changed;
        const std::vector<bool> next = settle(&changed);
        for (const auto& [net, v] : changed)
            record(net, now + delays.delay_for(nl.name(net)), v);
        for (size_t i = 0; i < nl.state_nets.size(); ++i) {
            const int net = nl.state_nets[i];
            if (next[i] != values[net]) {
                const SimTime when = now + delays.delay_for(nl.name(net));
                if (when <= trace.t_end) {
                    // transport semantics: a later evaluation scheduling for
                    // the same instant supersedes (last computed wins)
                    queue[when][nl.name(net)] = next[i];
                    last_state_activity = std::max(last_state_activity, when);
                } else {
                    state_spills_horizon = true;
                }
            }
        }
    }
};

}  // namespace

Trace simulate(const Netlist& n, const Stimulus& s, const DelayModel& d,
               const std::map<std::string, bool>& init) {
    s.validate();
    d.validate();

    for (int in : n.primary_inputs)
        if (!s.find(n.name(in)))
            throw std::invalid_argument("simulate: stimulus missing input " + n.name(in));
    for (const SignalStim& sig : s.signals) {
        const bool is_input =
            std::find_if(n.primary_inputs.begin(), n.primary_inputs.end(), [&](int id) {
                return n.name(id) == sig.name;
            }) != n.primary_inputs.end();
        if (!is_input)
            throw std::invalid_argument("simulate: stimulus signal " + sig.name +
                                        " is not a primary input");
    }
    for (int sn : n.state_nets)
        if (!init.count(n.name(sn)))
            throw std::invalid_argument("simulate: init missing state net " + n.name(sn));

    Trace trace;
    trace.t_end = s.t_end;
    trace.signals.resize(n.net_names.size());
    for (size_t i = 0; i < n.net_names.size(); ++i) {
        trace.signals[i].name = n.net_names[i];
        trace.signals[i].role = Trace::Role::Internal;
        trace.index[n.net_names[i]] = static_cast<int>(i);
    }
    for (int in : n.primary_inputs) trace.signals[in].role = Trace::Role::Input;
    for (int sn : n.state_nets) trace.signals[sn].role = Trace::Role::State;
    for (const auto& [name, net] : n.outputs) {
        if (trace.signals[net].role == Trace::Role::Internal)
            trace.signals[net].role = Trace::Role::Output;
        trace.output_aliases.emplace_back(name, n.net_names[net]);
    }

    Engine eng(n, d, trace);
    for (const SignalStim& sig : s.signals) eng.values[n.net(sig.name)] = sig.initial;
    for (int sn : n.state_nets) eng.values[sn] = init.at(n.name(sn));

    // relaxation: hold inputs, iterate until quiescent or 1000 evaluations
    bool quiescent = false;
    for (int iter = 0; iter < 1000; ++iter) {
        const std::vector<bool> next = eng.settle(nullptr);
        bool same = true;
        for (size_t i = 0; i < n.state_nets.size(); ++i) {
            if (eng.values[n.state_nets[i]] != next[i]) {
                eng.values[n.state_nets[i]] = next[i];
                same = false;
            }
        }
        if (same) {
            quiescent = true;
            break;
        }
    }
    if (!quiescent)
        trace.diagnostics.push_back(
            "relaxation did not reach a quiescent state within 1000 evaluations");

    for (size_t i = 0; i < n.net_names.size(); ++i) trace.signals[i].initial = eng.values[i];

    std::set<SimTime> steps;
    for (const SignalStim& sig : s.signals)
        for (const auto& [t, v] : sig.events) {
            eng.queue[t][sig.name] = v;
            steps.insert(t);
        }
    trace.step_times.assign(steps.begin(), steps.end());
    trace.settled.assign(trace.step_times.size(), true);

    // carries any non-quiescent relaxation into scheduled activity
    eng.evaluate(0);

    size_t boundary = 0;  // next step boundary not yet crossed
    while (!eng.queue.empty()) {
        const SimTime now = eng.queue.begin()->first;
        if (now > trace.t_end) break;

        while (boundary < trace.step_times.size() && trace.step_times[boundary] <= now) {
            if (boundary > 0)
                trace.settled[boundary - 1] =
                    eng.last_state_activity < trace.step_times[boundary];
            ++boundary;
        }

        const auto changes = eng.queue.begin()->second;
        eng.queue.erase(eng.queue.begin());
        bool any_applied = false;
        for (const auto& [name, v] : changes) {  // applied in net-name order
            const int net = n.net(name);
            if (eng.values[net] == v) continue;
            eng.values[net] = v;
            eng.record(net, now, v);
            if (trace.signals[net].role == Trace::Role::State)
                eng.last_state_activity = std::max(eng.last_state_activity, now);
            any_applied = true;
        }
        if (any_applied) eng.evaluate(now);
    }

    // boundaries not reached by any event are trivially settled intervals
    while (boundary > 0 && boundary < trace.step_times.size()) {
        trace.settled[boundary - 1] = eng.last_state_activity < trace.step_times[boundary];
        ++boundary;
    }
    if (!trace.step_times.empty()) {
        const bool leftover = !eng.queue.empty() || eng.state_spills_horizon;
        trace.settled.back() = !leftover;
    }

    return trace;
}

std::vector<Pulse> measure_pulses(const Trace& t, const std::string& signal) {
    const Trace::Sig* s = t.find(signal);
    if (!s) throw std::invalid_argument("measure_pulses: unknown signal " + signal);

    std::vector<Pulse> out;
    bool level = s->initial;
    SimTime start = 0;
    for (const auto& [time, v] : s->changes) {
        if (v == level) continue;
        if (v) {
            start = time;
        } else {
            out.push_back(Pulse{start, time - start, false});
        }
        level = v;
    }
    if (level) out.push_back(Pulse{start, t.t_end - start, true});
    return out;
}

std::vector<std::string> detect_oscillation(const Trace& t, int threshold) {
    std::vector<std::string> out;
    std::vector<SimTime> bounds;
    bounds.push_back(0);
    for (SimTime st : t.step_times)
        if (st > 0) bounds.push_back(st);
    bounds.push_back(t.t_end + 1);

    for (const auto& sig : t.signals) {
        for (size_t i = 0; i + 1 < bounds.size(); ++i) {
            int count = 0;
            for (const auto& [time, v] : sig.changes) {
                (void)v;
                if (time >= bounds[i] && time < bounds[i + 1]) ++count;
            }
            if (count > threshold) {
                out.push_back("net " + sig.name + " changed " + std::to_string(count) +
                              " times in [" + std::to_string(bounds[i]) + "," +
                              std::to_string(bounds[i + 1]) + ")");
                break;
            }
        }
    }
    return out;
}

std::vector<std::string> check_fundamental_mode(const Trace& t, const Stimulus& s,
                                                SimTime settle_window) {
    std::vector<std::string> out;

    std::map<SimTime, std::vector<std::string>> events;
    for (const SignalStim& sig : s.signals)
        for (const auto& [time, v] : sig.events) {
            (void)v;
            events[time].push_back(sig.name);
        }

    for (const auto& [time, names] : events)
        if (names.size() > 1) {
            std::string list;
            for (const auto& nm : names) list += (list.empty() ? "" : ", ") + nm;
            out.push_back("inputs " + list + " change simultaneously at t=" +
                          std::to_string(time));
        }

    std::vector<SimTime> state_changes;
    for (const auto& sig : t.signals)
        if (sig.role == Trace::Role::State)
            for (const auto& [time, v] : sig.changes) {
                (void)v;
                state_changes.push_back(time);
            }
    std::sort(state_changes.begin(), state_changes.end());

    for (const auto& [time, names] : events) {
        (void)names;
        for (SimTime c : state_changes) {
            if (c >= time) break;
            if (time - c < settle_window) {
                out.push_back("input event at t=" + std::to_string(time) + " arrives " +
                              std::to_string(time - c) + " tu after a state change (window " +
                              std::to_string(settle_window) + ")");
                break;
            }
        }
    }
    return out;
}

}  // namespace norflow
