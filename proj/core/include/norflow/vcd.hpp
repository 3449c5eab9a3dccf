#pragma once

// Value Change Dump output for traces: primary inputs, state nets, and
// outputs, one-bit wires, `1ns` per time unit by default.

#include "norflow/eventsim.hpp"

#include <string>

namespace norflow {

std::string write_vcd(const Trace& t, const std::string& timescale = "1ns");

}  // namespace norflow
