#include "norflow/vcd.hpp"

#include <map>
#include <sstream>

namespace norflow {

namespace {

std::string id_for(size_t n) {
    // printable identifier characters, minus '#' and '$' which start VCD
    // structural lines
    static const std::string alphabet = [] {
        std::string a;
        for (char c = '!'; c <= '~'; ++c)
            if (c != '#' && c != '$') a += c;
        return a;
    }();
    std::string id;
    do {
        id += alphabet[n % alphabet.size()];
        n /= alphabet.size();
    } while (n > 0);
    return id;
}

}  // namespace

std::string write_vcd(const Trace& t, const std::string& timescale) {
    // dumped signals: inputs, state nets, outputs (under their display names)
    struct Dumped {
        std::string display;
        const Trace::Sig* sig;
        std::string id;
    };
    std::vector<Dumped> dumped;
    for (const auto& sig : t.signals) {
        if (sig.role == Trace::Role::Input || sig.role == Trace::Role::State ||
            sig.role == Trace::Role::Output)
            dumped.push_back({sig.name, &sig, ""});
    }
    for (const auto& [display, net] : t.output_aliases) {
        if (display == net) continue;
        const Trace::Sig* sig = t.find(net);
        if (sig) dumped.push_back({display, sig, ""});
    }
    for (size_t i = 0; i < dumped.size(); ++i) dumped[i].id = id_for(i);

    std::ostringstream out;
    out << "$timescale " << timescale << " $end\n";
    out << "$scope module machine $end\n";
    for (const Dumped& d : dumped)
        out << "$var wire 1 " << d.id << ' ' << d.display << " $end\n";
    out << "$upscope $end\n$enddefinitions $end\n";
    out << "$dumpvars\n";
    for (const Dumped& d : dumped) out << (d.sig->initial ? '1' : '0') << d.id << '\n';
    out << "$end\n";

    std::map<SimTime, std::vector<std::pair<std::string, bool>>> by_time;
    for (const Dumped& d : dumped)
        for (const auto& [time, v] : d.sig->changes) by_time[time].emplace_back(d.id, v);

    for (const auto& [time, changes] : by_time) {
        out << '#' << time << '\n';
        for (const auto& [id, v] : changes) out << (v ? '1' : '0') << id << '\n';
    }
    return out.str();
}

}  // namespace norflow
