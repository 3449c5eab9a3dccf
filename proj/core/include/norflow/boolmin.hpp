#pragma once

// Two-level logic: truth specifications with don't-cares, exact
// Quine-McCluskey minimization, sum-of-products values, and NOR-only forms.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace norflow {

// Product term over an ordered variable set. Variable j (0-based, first name
// is the most significant) lives at bit (nvars-1-j) of a minterm index; mask
// marks present literals, value their polarity. An all-absent cube is the
// constant 1.
struct Cube {
    uint16_t mask = 0;
    uint16_t value = 0;

    bool covers(uint16_t minterm) const { return (minterm & mask) == value; }
    int literal_count() const { return __builtin_popcount(mask); }
    bool operator==(const Cube&) const = default;
};

// On-set / don't-care-set function specification.  Indices are MSB-first in
// the variable order.
struct TruthSpec {
    std::vector<std::string> vars;  // MSB first, size = nvars
    std::vector<uint16_t> on_set;
    std::vector<uint16_t> dc_set;

    int nvars() const { return static_cast<int>(vars.size()); }
    uint16_t minterm_count() const { return static_cast<uint16_t>(1u << vars.size()); }
    bool is_on(uint16_t m) const;
    bool is_dc(uint16_t m) const;
    // throws std::invalid_argument on overlap, bad indices, or nvars > 12
    void validate() const;
};

struct Sop {
    std::vector<std::string> vars;  // MSB first
    std::vector<Cube> cubes;        // canonical order; empty = constant 0
};

// Rendering: literals in variable order, `name` / `~name`, joined by spaces;
// cubes sorted lexicographically by their rendered text, joined by " + ".
std::string cube_text(const Cube& c, const std::vector<std::string>& vars);
std::string sop_text(const Sop& s);
void canonicalize(Sop& s);

bool cube_eval(const Cube& c, uint16_t minterm);
bool sop_eval_minterm(const Sop& s, uint16_t minterm);
// throws std::invalid_argument when a variable is missing from the assignment
bool sop_eval(const Sop& s, const std::map<std::string, bool>& assignment);

// Exact minimum cover: prime implicants only, covers on_set, avoids the
// off-set, minimizes cube count then literal count, lexicographic tie-break.
Sop qm_minimize(const TruthSpec& spec);

// True iff s is 1 on every on-set minterm and 0 outside on ∪ dc.
bool equivalent_on_careset(const Sop& s, const TruthSpec& spec);

// True iff dropping any literal from any cube would intersect the off-set.
bool all_cubes_prime(const Sop& s, const TruthSpec& spec);

// NOR-only realization of an Sop:
//  - every product of >= 2 literals (or a single negative literal) becomes a
//    NOR over the complemented literals; complemented literals of positive
//    variables come from shared 1-input NOR inverters,
//  - a sum of >= 2 products becomes NOR(products) plus a trailing 1-input
//    NOR inverter,
//  - a single positive literal is a plain wire (no gates).
struct NorForm {
    std::vector<std::string> vars;
    std::vector<Cube> products;

    bool is_wire() const;        // single product, single positive literal
    int gate_estimate() const;   // gates incl. this form's input inverters
};

// throws std::invalid_argument for constant Sops (tie the net off instead)
NorForm to_nor_form(const Sop& s);

// Evaluates the gate structure literally (for equivalence checks).
bool nor_form_eval(const NorForm& f, uint16_t minterm);

}  // namespace norflow
