#include "norflow/synth.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace norflow {

uint32_t Equations::next_code(uint32_t input_vector, uint32_t code) const {
    const int m = static_cast<int>(bit_names.size());
    const uint16_t idx = static_cast<uint16_t>((input_vector << m) | code);
    uint32_t next = 0;
    for (int j = 0; j < m; ++j)
        if (sop_eval_minterm(next_state[j], idx)) next |= 1u << (m - 1 - j);
    return next;
}

namespace {

std::vector<std::string> joined_vars(const ExcitationTable& exc) {
    std::vector<std::string> vars = exc.input_vars;
    vars.insert(vars.end(), exc.bit_names.begin(), exc.bit_names.end());
    return vars;
}

}  // namespace

TruthSpec next_bit_spec(const ExcitationTable& exc, int bit) {
    TruthSpec spec;
    spec.vars = joined_vars(exc);
    const uint16_t bitmask = static_cast<uint16_t>(1u << (exc.m - 1 - bit));
    for (uint32_t code = 0; code < exc.code_count(); ++code) {
        for (uint32_t v = 0; v < exc.vector_count(); ++v) {
            const uint16_t idx = static_cast<uint16_t>((v << exc.m) | code);
            const auto& entry = exc.entries[code][v];
            if (!entry.has_value())
                spec.dc_set.push_back(idx);
            else if (*entry & bitmask)
                spec.on_set.push_back(idx);
        }
    }
    return spec;
}

TruthSpec output_spec(const ExcitationTable& exc, int output_index) {
    TruthSpec spec;
    spec.vars = joined_vars(exc);
    for (uint32_t code = 0; code < exc.code_count(); ++code) {
        const auto& out = exc.outputs[code];
        for (uint32_t v = 0; v < exc.vector_count(); ++v) {
            const uint16_t idx = static_cast<uint16_t>((v << exc.m) | code);
            if (!out.has_value())
                spec.dc_set.push_back(idx);
            else if (out->at(output_index))
                spec.on_set.push_back(idx);
        }
    }
    return spec;
}

Equations derive_equations(const ExcitationTable& exc) {
    Equations eqs;
    eqs.vars = joined_vars(exc);
    eqs.bit_names = exc.bit_names;
    for (int j = 0; j < exc.m; ++j)
        eqs.next_state.push_back(qm_minimize(next_bit_spec(exc, j)));
    eqs.output_names = exc.output_vars;
    for (size_t o = 0; o < exc.output_vars.size(); ++o)
        eqs.outputs.push_back(qm_minimize(output_spec(exc, static_cast<int>(o))));
    return eqs;
}

namespace {

struct RaceExplorer {
    const FlowTable* ft = nullptr;
    const StateEncoding* enc = nullptr;
    const Equations* eqs = nullptr;
    uint32_t input_vector = 0;
    int m = 0;

    std::set<uint32_t> outcomes;
    bool care_exit = false;
    bool cycle = false;
    std::vector<uint32_t> onpath;
    std::map<uint32_t, std::vector<int>> outcome_order;  // first bit-flip order seen
    std::vector<int> order;

    bool in_care(uint32_t code) const {
        auto st = enc->state_of(code);
        if (!st) return false;
        const StateRow* row = ft->find_state(*st);
        return row && !row->next.at(input_vector).dont_care;
    }

    void explore(uint32_t code) {
        const uint32_t next = eqs->next_code(input_vector, code);
        if (next == code) {
            if (!outcomes.count(code)) outcome_order[code] = order;
            outcomes.insert(code);
            return;
        }
        if (!in_care(code)) care_exit = true;
        if (std::find(onpath.begin(), onpath.end(), code) != onpath.end()) {
            cycle = true;
            return;
        }
        onpath.push_back(code);
        const uint32_t diff = next ^ code;
        for (int j = 0; j < m; ++j) {
            const uint32_t bit = 1u << (m - 1 - j);
            if (!(diff & bit)) continue;
            order.push_back(j);
            explore(code ^ bit);
            order.pop_back();
        }
        onpath.pop_back();
    }
};

std::string order_text(const std::vector<int>& order, const std::vector<std::string>& bits) {
    std::string s;
    for (int j : order) {
        if (!s.empty()) s += ",";
        s += bits[j];
    }
    return s.empty() ? "(direct)" : s;
}

std::string code_text(uint32_t code, int m) {
    std::string s;
    for (int j = m - 1; j >= 0; --j) s += (code >> j) & 1 ? '1' : '0';
    return s;
}

}  // namespace

std::vector<RaceDiagnostic> check_races(const FlowTable& ft, const StateEncoding& enc,
                                        const Equations& eqs) {
    std::vector<RaceDiagnostic> out;
    const int m = enc.width();
    for (const StateRow& s : ft.states) {
        for (uint32_t v = 0; v < ft.vector_count(); ++v) {
            const NextEntry& e = s.next.at(v);
            if (e.dont_care || e.target == s.name) continue;

            RaceDiagnostic d;
            d.source = s.name;
            d.input_vector = v;
            d.target = e.target;
            const uint32_t src = enc.code_of(s.name);
            const uint32_t tgt = enc.code_of(e.target);
            d.hamming = __builtin_popcount(src ^ tgt);
            if (d.hamming <= 1) {
                d.kind = RaceDiagnostic::Kind::Adjacent;
                out.push_back(std::move(d));
                continue;
            }

            RaceExplorer ex;
            ex.ft = &ft;
            ex.enc = &enc;
            ex.eqs = &eqs;
            ex.input_vector = v;
            ex.m = m;
            ex.explore(src);

            std::optional<uint32_t> expected;
            SettleResult sr = settle(ft, s.name, v);
            if (sr.kind == SettleResult::Kind::Stable) expected = enc.code_of(sr.state);

            if (ex.outcomes.size() >= 2) {
                d.kind = RaceDiagnostic::Kind::CriticalRace;
            } else if (ex.outcomes.size() == 1) {
                const uint32_t o = *ex.outcomes.begin();
                if (expected && o != *expected)
                    d.kind = ex.care_exit ? RaceDiagnostic::Kind::UndefinedRace
                                          : RaceDiagnostic::Kind::CriticalRace;
                else
                    d.kind = RaceDiagnostic::Kind::NoncriticalRace;
            } else {
                d.kind = RaceDiagnostic::Kind::CriticalRace;  // no order ever stabilizes
                d.witness = "all bit-change orders cycle without stabilizing";
            }

            if (d.kind != RaceDiagnostic::Kind::NoncriticalRace && d.witness.empty()) {
                for (const auto& [code, ord] : ex.outcome_order) {
                    if (!d.witness.empty()) d.witness += " vs ";
                    d.witness += order_text(ord, enc.bit_names) + " -> " + code_text(code, m);
                }
            }
            out.push_back(std::move(d));
        }
    }
    return out;
}

}  // namespace norflow
