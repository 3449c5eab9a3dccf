#include "norflow/netlist.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace norflow {

int Netlist::net(const std::string& name) const {
    auto it = net_ids.find(name);
    return it == net_ids.end() ? -1 : it->second;
}

int Netlist::driver_of(int net) const {
    for (size_t g = 0; g < gates.size(); ++g)
        if (gates[g].output == net) return static_cast<int>(g);
    return -1;
}

bool Netlist::is_state_net(int net) const {
    return std::find(state_nets.begin(), state_nets.end(), net) != state_nets.end();
}

namespace {

struct Builder {
    Netlist nl;
    std::map<int, int> inverter_of;  // signal net -> inverter output net
    int temp_counter = 0;

    int add_net(const std::string& name) {
        if (nl.net_ids.count(name))
            throw std::invalid_argument("netlist: duplicate net name " + name);
        nl.net_names.push_back(name);
        nl.net_ids[name] = static_cast<int>(nl.net_names.size()) - 1;
        return nl.net_ids[name];
    }

    void add_gate(std::vector<int> inputs, int output, const std::string& tag) {
        if (inputs.empty() || inputs.size() > 4)
            throw std::logic_error("netlist: NOR fan-in must be 1..4");
        nl.gates.push_back(Gate{std::move(inputs), output, tag});
    }

    int inverter(int signal, const std::string& tag) {
        auto it = inverter_of.find(signal);
        if (it != inverter_of.end()) return it->second;
        const int out = add_net("~" + nl.name(signal));
        add_gate({signal}, out, tag);
        inverter_of[signal] = out;
        return out;
    }

    int temp_net(const std::string& base) {
        return add_net(base + "_t" + std::to_string(temp_counter++));
    }

    // Reduces a wide input list to <= 4 nets by replacing groups with
    // NOR+inverter (= OR) stages, evenly sized.
    std::vector<int> reduce_wide(std::vector<int> ins, const std::string& base,
                                 const std::string& tag) {
        while (ins.size() > 4) {
            const size_t groups = (ins.size() + 3) / 4;
            const size_t per = (ins.size() + groups - 1) / groups;
            std::vector<int> ors;
            size_t at = 0;
            while (at < ins.size()) {
                const size_t take = std::min(per, ins.size() - at);
                std::vector<int> slice(ins.begin() + at, ins.begin() + at + take);
                at += take;
                const int nor_out = temp_net(base);
                add_gate(slice, nor_out, tag);
                const int or_out = temp_net(base);
                add_gate({nor_out}, or_out, tag);
                ors.push_back(or_out);
            }
            ins = std::move(ors);
        }
        return ins;
    }

    // NOR over arbitrarily many nets onto `out_net` (named after `base` when -1).
    int build_nor(std::vector<int> ins, const std::string& base, const std::string& tag,
                  int out_net) {
        ins = reduce_wide(std::move(ins), base, tag);
        const int out = out_net >= 0 ? out_net : add_net(base);
        add_gate(std::move(ins), out, tag);
        return out;
    }

    // NOR inputs realizing a cube as AND of its literals.
    std::vector<int> cube_nor_inputs(const NorForm& f, const Cube& c) {
        const int n = static_cast<int>(f.vars.size());
        std::vector<int> ins;
        for (int j = 0; j < n; ++j) {
            const uint16_t bit = static_cast<uint16_t>(1u << (n - 1 - j));
            if (!(c.mask & bit)) continue;
            const int sig = nl.net(f.vars[j]);
            ins.push_back((c.value & bit) ? inverter(sig, "shared") : sig);
        }
        return ins;
    }

    // Net carrying the cube's product value; single literals need no gate.
    int product_net(const NorForm& f, const Cube& c, const std::string& base,
                    const std::string& tag) {
        const int n = static_cast<int>(f.vars.size());
        if (c.literal_count() == 1) {
            for (int j = 0; j < n; ++j) {
                const uint16_t bit = static_cast<uint16_t>(1u << (n - 1 - j));
                if (!(c.mask & bit)) continue;
                const int sig = nl.net(f.vars[j]);
                return (c.value & bit) ? sig : inverter(sig, "shared");
            }
        }
        return build_nor(cube_nor_inputs(f, c), base, tag, -1);
    }

    // Realizes a whole NorForm; when out_net >= 0 the final gate drives it
    // (state bits). Returns the function's net.
    int emit_function(const NorForm& f, const std::string& fname, int out_net) {
        if (f.products.size() == 1) {
            const Cube& c = f.products[0];
            if (c.literal_count() >= 2)
                return build_nor(cube_nor_inputs(f, c), fname + "_p0", fname, out_net);
            // degenerate single literal
            const int n = static_cast<int>(f.vars.size());
            int sig = -1;
            bool positive = false;
            for (int j = 0; j < n; ++j) {
                const uint16_t bit = static_cast<uint16_t>(1u << (n - 1 - j));
                if (!(c.mask & bit)) continue;
                sig = nl.net(f.vars[j]);
                positive = (c.value & bit) != 0;
            }
            if (out_net < 0) return positive ? sig : inverter(sig, "shared");
            if (positive)  // keep the net gate-driven: double inverter
                add_gate({inverter(sig, fname)}, out_net, fname);
            else
                add_gate({sig}, out_net, fname);
            return out_net;
        }
        std::vector<int> product_nets;
        int pi = 0;
        for (const Cube& c : f.products)
            product_nets.push_back(product_net(f, c, fname + "_p" + std::to_string(pi++), fname));
        const int sum = build_nor(std::move(product_nets), fname + "_s", fname, -1);
        const int out = out_net >= 0 ? out_net : add_net(fname);
        add_gate({sum}, out, fname);
        return out;
    }
};

}  // namespace

Netlist map_to_netlist(const std::vector<std::string>& input_names,
                       const std::vector<std::string>& state_names,
                       const std::vector<NorForm>& state_functions,
                       const std::vector<std::pair<std::string, NorForm>>& output_functions) {
    if (state_functions.size() != state_names.size())
        throw std::invalid_argument("map_to_netlist: one NorForm per state bit required");

    Builder b;
    for (const auto& n : input_names) b.nl.primary_inputs.push_back(b.add_net(n));
    for (const auto& n : state_names) b.nl.state_nets.push_back(b.add_net(n));

    auto check_vars = [&](const NorForm& f) {
        for (const auto& v : f.vars)
            if (b.nl.net(v) < 0) throw std::invalid_argument("netlist: unknown variable " + v);
    };
    for (const auto& f : state_functions) check_vars(f);
    for (const auto& [name, f] : output_functions) check_vars(f);

    for (size_t i = 0; i < state_names.size(); ++i)
        b.emit_function(state_functions[i], state_names[i], b.nl.state_nets[i]);

    for (const auto& [oname, f] : output_functions) {
        if (f.is_wire()) {
            const int n = static_cast<int>(f.vars.size());
            int src = -1;
            for (int j = 0; j < n; ++j) {
                const uint16_t bit = static_cast<uint16_t>(1u << (n - 1 - j));
                if (f.products[0].mask & bit) src = b.nl.net(f.vars[j]);
            }
            b.nl.outputs.emplace_back(oname, src);
            continue;
        }
        const int out_net = b.add_net(oname);
        // re-emit with the named net as the final gate's output
        if (f.products.size() == 1 && f.products[0].literal_count() >= 2) {
            b.build_nor(b.cube_nor_inputs(f, f.products[0]), oname + "_p0", oname, out_net);
        } else if (f.products.size() == 1) {
            // single negative literal: the inverter drives the output net
            const int nvars = static_cast<int>(f.vars.size());
            for (int j = 0; j < nvars; ++j) {
                const uint16_t bit = static_cast<uint16_t>(1u << (nvars - 1 - j));
                if (f.products[0].mask & bit) b.add_gate({b.nl.net(f.vars[j])}, out_net, oname);
            }
        } else {
            std::vector<int> product_nets;
            int pi = 0;
            for (const Cube& c : f.products)
                product_nets.push_back(
                    b.product_net(f, c, oname + "_p" + std::to_string(pi++), oname));
            const int sum = b.build_nor(std::move(product_nets), oname + "_s", oname, -1);
            b.add_gate({sum}, out_net, oname);
        }
        b.nl.outputs.emplace_back(oname, out_net);
    }

    // topological order with the feedback loop cut at state nets
    Netlist& nl = b.nl;
    std::vector<int> indegree(nl.gates.size(), 0);
    std::vector<std::vector<int>> consumers(nl.gates.size());
    std::vector<int> driver(nl.net_names.size(), -1);
    for (size_t g = 0; g < nl.gates.size(); ++g) driver[nl.gates[g].output] = static_cast<int>(g);
    for (size_t g = 0; g < nl.gates.size(); ++g) {
        for (int in : nl.gates[g].inputs) {
            if (nl.is_state_net(in)) continue;
            const int drv = driver[in];
            if (drv >= 0) {
                consumers[drv].push_back(static_cast<int>(g));
                ++indegree[g];
            }
        }
    }
    std::deque<int> ready;
    for (size_t g = 0; g < nl.gates.size(); ++g)
        if (indegree[g] == 0) ready.push_back(static_cast<int>(g));
    while (!ready.empty()) {
        const int g = ready.front();
        ready.pop_front();
        nl.topo.push_back(g);
        for (int c : consumers[g])
            if (--indegree[c] == 0) ready.push_back(c);
    }
    if (nl.topo.size() != nl.gates.size())
        throw std::logic_error("netlist: combinational cycle outside the feedback nets");
    return nl;
}

PackageReport package_count(const Netlist& n) {
    PackageReport r;
    r.gate_count = static_cast<int>(n.gates.size());
    r.package_count = (r.gate_count + 1) / 2;
    std::map<std::string, int> per;
    for (const Gate& g : n.gates) ++per[g.tag];
    for (const auto& [tag, count] : per) r.per_function.emplace_back(tag, count);
    return r;
}

std::string netlist_dump(const Netlist& n) {
    std::string out;
    for (const Gate& g : n.gates) {
        out += "NOR" + std::to_string(g.inputs.size()) + " " + n.name(g.output) + " <-";
        for (int in : g.inputs) out += " " + n.name(in);
        out += "\n";
    }
    return out;
}

CutEval eval_cut(const Netlist& n, const std::map<std::string, bool>& inputs_and_state) {
    CutEval r;
    r.net_values.assign(n.net_names.size(), false);
    for (int in : n.primary_inputs) {
        auto it = inputs_and_state.find(n.name(in));
        if (it == inputs_and_state.end())
            throw std::invalid_argument("eval_cut: missing input " + n.name(in));
        r.net_values[in] = it->second;
    }
    for (int sn : n.state_nets) {
        auto it = inputs_and_state.find(n.name(sn));
        if (it == inputs_and_state.end())
            throw std::invalid_argument("eval_cut: missing state value " + n.name(sn));
        r.net_values[sn] = it->second;
    }
    r.next_state.assign(n.state_nets.size(), false);
    for (int g : n.topo) {
        const Gate& gate = n.gates[g];
        bool any = false;
        for (int in : gate.inputs) any = any || r.net_values[in];
        const bool v = !any;
        if (n.is_state_net(gate.output)) {
            for (size_t i = 0; i < n.state_nets.size(); ++i)
                if (n.state_nets[i] == gate.output) r.next_state[i] = v;
        } else {
            r.net_values[gate.output] = v;
        }
    }
    for (const auto& [name, net] : n.outputs) r.outputs[name] = r.net_values[net];
    return r;
}

}  // namespace norflow
