#include "norflow/boolmin.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace norflow {

bool TruthSpec::is_on(uint16_t m) const {
    return std::find(on_set.begin(), on_set.end(), m) != on_set.end();
}

bool TruthSpec::is_dc(uint16_t m) const {
    return std::find(dc_set.begin(), dc_set.end(), m) != dc_set.end();
}

void TruthSpec::validate() const {
    if (vars.empty() || vars.size() > 12)
        throw std::invalid_argument("TruthSpec: variable count must be in [1,12]");
    const uint32_t limit = 1u << vars.size();
    for (uint16_t m : on_set)
        if (m >= limit) throw std::invalid_argument("TruthSpec: on-set index out of range");
    for (uint16_t m : dc_set) {
        if (m >= limit) throw std::invalid_argument("TruthSpec: dc-set index out of range");
        if (is_on(m)) throw std::invalid_argument("TruthSpec: on-set and dc-set overlap");
    }
}

std::string cube_text(const Cube& c, const std::vector<std::string>& vars) {
    if (c.mask == 0) return "1";
    std::string out;
    const int n = static_cast<int>(vars.size());
    for (int j = 0; j < n; ++j) {
        const uint16_t bit = static_cast<uint16_t>(1u << (n - 1 - j));
        if (!(c.mask & bit)) continue;
        if (!out.empty()) out += ' ';
        if (!(c.value & bit)) out += '~';
        out += vars[j];
    }
    return out;
}

std::string sop_text(const Sop& s) {
    if (s.cubes.empty()) return "0";
    std::string out;
    for (const Cube& c : s.cubes) {
        if (!out.empty()) out += " + ";
        out += cube_text(c, s.vars);
    }
    return out;
}

void canonicalize(Sop& s) {
    std::sort(s.cubes.begin(), s.cubes.end(), [&](const Cube& a, const Cube& b) {
        return cube_text(a, s.vars) < cube_text(b, s.vars);
    });
    s.cubes.erase(std::unique(s.cubes.begin(), s.cubes.end()), s.cubes.end());
}

bool cube_eval(const Cube& c, uint16_t minterm) { return c.covers(minterm); }

bool sop_eval_minterm(const Sop& s, uint16_t minterm) {
    for (const Cube& c : s.cubes)
        if (c.covers(minterm)) return true;
    return false;
}

bool sop_eval(const Sop& s, const std::map<std::string, bool>& assignment) {
    uint16_t m = 0;
    const int n = static_cast<int>(s.vars.size());
    for (int j = 0; j < n; ++j) {
        auto it = assignment.find(s.vars[j]);
        if (it == assignment.end())
            throw std::invalid_argument("sop_eval: missing variable " + s.vars[j]);
        if (it->second) m |= static_cast<uint16_t>(1u << (n - 1 - j));
    }
    return sop_eval_minterm(s, m);
}

namespace {

// Quine-McCluskey prime generation over on ∪ dc.
std::vector<Cube> prime_implicants(int nvars, const std::vector<uint16_t>& care) {
    const uint16_t full = static_cast<uint16_t>((1u << nvars) - 1);
    std::vector<Cube> level;
    level.reserve(care.size());
    for (uint16_t m : care) level.push_back(Cube{full, m});
    std::sort(level.begin(), level.end(), [](const Cube& a, const Cube& b) {
        return std::tie(a.mask, a.value) < std::tie(b.mask, b.value);
    });
    level.erase(std::unique(level.begin(), level.end()), level.end());

    std::vector<Cube> primes;
    while (!level.empty()) {
        std::vector<bool> combined(level.size(), false);
        std::vector<Cube> next;
        for (size_t i = 0; i < level.size(); ++i) {
            for (size_t j = i + 1; j < level.size(); ++j) {
                if (level[i].mask != level[j].mask) continue;
                const uint16_t diff = level[i].value ^ level[j].value;
                if (__builtin_popcount(diff) != 1) continue;
                combined[i] = combined[j] = true;
                next.push_back(Cube{static_cast<uint16_t>(level[i].mask & ~diff),
                                    static_cast<uint16_t>(level[i].value & ~diff)});
            }
        }
        for (size_t i = 0; i < level.size(); ++i)
            if (!combined[i]) primes.push_back(level[i]);
        std::sort(next.begin(), next.end(), [](const Cube& a, const Cube& b) {
            return std::tie(a.mask, a.value) < std::tie(b.mask, b.value);
        });
        next.erase(std::unique(next.begin(), next.end()), next.end());
        level = std::move(next);
    }
    return primes;
}

// Exact minimum-cover search over the prime chart. Columns are on-set
// minterms as bitset words; the bound is ceil(remaining / best single-prime
// coverage). Ties on cube count fall through to literal count, then to the
// lexicographic cube-text order (primes are pre-sorted by text, and the
// candidate loop visits them in that order).
struct CoverSearch {
    const std::vector<Cube>* primes = nullptr;
    const std::vector<std::string>* vars = nullptr;
    size_t ncols = 0;
    size_t words = 0;
    std::vector<std::vector<uint64_t>> row_mask;   // per prime: column coverage
    std::vector<std::vector<int>> col_rows;        // per column: covering primes

    bool have_best = false;
    std::vector<int> best_rows;
    int best_literals = 0;
    std::vector<std::string> best_texts;

    static int popcount64(uint64_t w) { return __builtin_popcountll(w); }

    std::vector<std::string> texts_of(const std::vector<int>& rows) const {
        std::vector<std::string> t;
        t.reserve(rows.size());
        for (int r : rows) t.push_back(cube_text((*primes)[r], *vars));
        std::sort(t.begin(), t.end());
        return t;
    }

    bool better(size_t count, int literals, const std::vector<std::string>& texts) const {
        if (!have_best) return true;
        if (count != best_rows.size()) return count < best_rows.size();
        if (literals != best_literals) return literals < best_literals;
        return texts < best_texts;
    }

    void search(std::vector<int>& chosen, int literals, std::vector<uint64_t>& uncovered) {
        int remaining = 0;
        for (uint64_t w : uncovered) remaining += popcount64(w);
        if (remaining == 0) {
            auto texts = texts_of(chosen);
            if (better(chosen.size(), literals, texts)) {
                have_best = true;
                best_rows = chosen;
                best_literals = literals;
                best_texts = std::move(texts);
            }
            return;
        }

        if (have_best) {
            int max_cover = 0;
            int min_lit = std::numeric_limits<int>::max();
            for (size_t r = 0; r < row_mask.size(); ++r) {
                int c = 0;
                for (size_t w = 0; w < words; ++w) c += popcount64(row_mask[r][w] & uncovered[w]);
                if (c > 0) {
                    max_cover = std::max(max_cover, c);
                    min_lit = std::min(min_lit, (*primes)[r].literal_count());
                }
            }
            if (max_cover == 0) return;  // uncoverable (cannot happen for valid charts)
            const size_t lb = (remaining + max_cover - 1) / max_cover;
            if (chosen.size() + lb > best_rows.size()) return;
            if (chosen.size() + lb == best_rows.size() &&
                literals + static_cast<int>(lb) * min_lit > best_literals)
                return;
        }

        // branch on the uncovered column with the fewest candidates
        size_t pick = ncols;
        size_t pick_n = std::numeric_limits<size_t>::max();
        for (size_t c = 0; c < ncols; ++c) {
            if (!(uncovered[c >> 6] & (1ull << (c & 63)))) continue;
            if (col_rows[c].size() < pick_n) {
                pick_n = col_rows[c].size();
                pick = c;
            }
        }

        // candidates ordered by descending fresh coverage (then prime order)
        // so good incumbents arrive early and tighten the bound
        std::vector<std::pair<int, int>> cands;  // (-coverage, row)
        for (int r : col_rows[pick]) {
            int c = 0;
            for (size_t w = 0; w < words; ++w) c += popcount64(row_mask[r][w] & uncovered[w]);
            cands.emplace_back(-c, r);
        }
        std::sort(cands.begin(), cands.end());

        for (const auto& [neg, r] : cands) {
            (void)neg;
            std::vector<uint64_t> next(words);
            for (size_t w = 0; w < words; ++w) next[w] = uncovered[w] & ~row_mask[r][w];
            chosen.push_back(r);
            search(chosen, literals + (*primes)[r].literal_count(), next);
            chosen.pop_back();
        }
    }
};

}  // namespace

Sop qm_minimize(const TruthSpec& spec) {
    spec.validate();
    Sop result{spec.vars, {}};
    if (spec.on_set.empty()) return result;  // constant 0

    std::vector<uint16_t> care = spec.on_set;
    care.insert(care.end(), spec.dc_set.begin(), spec.dc_set.end());
    std::vector<Cube> primes = prime_implicants(spec.nvars(), care);

    // deterministic prime order
    std::sort(primes.begin(), primes.end(), [&](const Cube& a, const Cube& b) {
        return cube_text(a, spec.vars) < cube_text(b, spec.vars);
    });

    std::set<uint16_t> uncovered(spec.on_set.begin(), spec.on_set.end());
    std::vector<int> chosen;
    int chosen_literals = 0;

    // essential primes are part of every cover
    bool changed = true;
    while (changed && !uncovered.empty()) {
        changed = false;
        for (uint16_t m : uncovered) {
            int only = -1;
            int n = 0;
            for (size_t r = 0; r < primes.size(); ++r) {
                if (primes[r].covers(m)) {
                    ++n;
                    only = static_cast<int>(r);
                    if (n > 1) break;
                }
            }
            if (n == 1) {
                chosen.push_back(only);
                chosen_literals += primes[only].literal_count();
                std::vector<uint16_t> rm;
                for (uint16_t u : uncovered)
                    if (primes[only].covers(u)) rm.push_back(u);
                for (uint16_t u : rm) uncovered.erase(u);
                changed = true;
                break;
            }
        }
    }

    if (!uncovered.empty()) {
        CoverSearch cs;
        cs.primes = &primes;
        cs.vars = &spec.vars;
        const std::vector<uint16_t> cols(uncovered.begin(), uncovered.end());
        cs.ncols = cols.size();
        cs.words = (cols.size() + 63) / 64;
        cs.row_mask.assign(primes.size(), std::vector<uint64_t>(cs.words, 0));
        cs.col_rows.assign(cols.size(), {});
        for (size_t r = 0; r < primes.size(); ++r)
            for (size_t c = 0; c < cols.size(); ++c)
                if (primes[r].covers(cols[c])) {
                    cs.row_mask[r][c >> 6] |= 1ull << (c & 63);
                    cs.col_rows[c].push_back(static_cast<int>(r));
                }
        std::vector<uint64_t> mask(cs.words, 0);
        for (size_t c = 0; c < cols.size(); ++c) mask[c >> 6] |= 1ull << (c & 63);
        std::vector<int> branch = chosen;
        cs.search(branch, chosen_literals, mask);
        chosen = cs.best_rows;
    }

    for (int r : chosen) result.cubes.push_back(primes[r]);
    canonicalize(result);
    return result;
}

bool equivalent_on_careset(const Sop& s, const TruthSpec& spec) {
    if (s.vars.size() != spec.vars.size()) return false;
    for (uint32_t m = 0; m < spec.minterm_count(); ++m) {
        const bool v = sop_eval_minterm(s, static_cast<uint16_t>(m));
        if (spec.is_on(static_cast<uint16_t>(m))) {
            if (!v) return false;
        } else if (!spec.is_dc(static_cast<uint16_t>(m))) {
            if (v) return false;
        }
    }
    return true;
}

bool all_cubes_prime(const Sop& s, const TruthSpec& spec) {
    for (const Cube& c : s.cubes) {
        const int n = spec.nvars();
        for (int j = 0; j < n; ++j) {
            const uint16_t bit = static_cast<uint16_t>(1u << (n - 1 - j));
            if (!(c.mask & bit)) continue;
            Cube wider{static_cast<uint16_t>(c.mask & ~bit),
                       static_cast<uint16_t>(c.value & ~bit)};
            bool hits_off = false;
            for (uint32_t m = 0; m < spec.minterm_count(); ++m) {
                const uint16_t mm = static_cast<uint16_t>(m);
                if (wider.covers(mm) && !spec.is_on(mm) && !spec.is_dc(mm)) {
                    hits_off = true;
                    break;
                }
            }
            if (!hits_off) return false;
        }
    }
    return true;
}

bool NorForm::is_wire() const {
    return products.size() == 1 && products[0].literal_count() == 1 &&
           products[0].value == products[0].mask;
}

int NorForm::gate_estimate() const {
    if (is_wire()) return 0;
    uint16_t inverted = 0;  // signals whose inverter net this form needs
    int product_gates = 0;
    for (const Cube& p : products) {
        if (p.literal_count() == 1) {
            if (p.value & p.mask) continue;  // bare positive literal: a wire
            inverted |= p.mask;              // bare ~x: its net is the inverter of x
        } else {
            inverted |= static_cast<uint16_t>(p.mask & p.value);
            ++product_gates;
        }
    }
    int gates = __builtin_popcount(inverted) + product_gates;
    if (products.size() >= 2) gates += 2;  // sum NOR + trailing inverter
    return gates;
}

NorForm to_nor_form(const Sop& s) {
    if (s.cubes.empty())
        throw std::invalid_argument("to_nor_form: constant-0 Sop has no gate form");
    for (const Cube& c : s.cubes)
        if (c.mask == 0)
            throw std::invalid_argument("to_nor_form: constant-1 Sop has no gate form");
    NorForm f;
    f.vars = s.vars;
    f.products = s.cubes;
    return f;
}

bool nor_form_eval(const NorForm& f, uint16_t minterm) {
    // product net: NOR over complemented literals == AND of the literals
    std::vector<bool> nets;
    nets.reserve(f.products.size());
    for (const Cube& p : f.products) {
        bool any_high = false;
        const int n = static_cast<int>(f.vars.size());
        for (int j = 0; j < n; ++j) {
            const uint16_t bit = static_cast<uint16_t>(1u << (n - 1 - j));
            if (!(p.mask & bit)) continue;
            const bool sig = (minterm & bit) != 0;
            const bool input = (p.value & bit) ? !sig : sig;  // complemented literal
            any_high = any_high || input;
        }
        nets.push_back(!any_high);
    }
    if (nets.size() == 1) return nets[0];
    bool sum_nor = true;
    for (bool p : nets)
        if (p) sum_nor = false;
    return !sum_nor;  // trailing inverter
}

}  // namespace norflow
