#pragma once

// Gate types and their GF(2) polynomial models:
//   NOT  -> 1 + a          AND -> a*b          OR  -> a + b + a*b
//   XOR  -> a + b          XNOR -> 1 + a + b   NAND -> 1 + a*b
//   NOR  -> 1 + a + b + a*b             BUF -> a
//   AOI21(a,b,c) = NOT(OR(AND(a,b), c)),  OAI21(a,b,c) = NOT(AND(OR(a,b), c))

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gfrev/poly.hpp"

namespace gfrev {

enum class GateType {
  AND,
  OR,
  XOR,
  XNOR,
  NAND,
  NOR,
  NOT,
  BUF,
  AOI21,
  OAI21,
  CONST0,
  CONST1,
};

std::size_t gate_arity(GateType t);
std::string_view gate_name(GateType t);
std::optional<GateType> gate_from_name(std::string_view name);  // case-insensitive

// GF(2) polynomial of the gate output over the given input expressions.
// Throws UnsupportedGate for an unknown type, Error on arity mismatch.
Polynomial gate_polynomial(GateType t, const std::vector<Polynomial>& inputs);

// Boolean evaluation of a single gate; used by the netlist simulator.
bool gate_eval(GateType t, const std::vector<bool>& inputs);

}  // namespace gfrev
