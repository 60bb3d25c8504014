#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gfrev/extract.hpp"

namespace gfrev {

// Which output wire carries which bit, identified by its unique-product core:
// the degree-2 terms appearing in exactly one output expression form the
// in-field product set s_i, and |s_i| = i+1 pins the position.
struct InFieldAssignment {
  int m = 0;
  std::vector<VarId> output_at;     // position -> output wire
  std::vector<Polynomial> core_at;  // position -> s_i over the netlist's input wires
};

// Input wire positions plus the word split. Positions come from the
// first-seen walk over s_0..s_{m-1}; the split of each position's pair into
// words is resolved from the cross products with the position-0 pair, with
// the lexicographically smaller position-0 wire anchoring word a. Position
// information alone admits 2^(m-1) word constructions; that count is
// reported, while the resolved split is the one consistent with the circuit.
struct InputPositionMap {
  int m = 0;
  std::unordered_map<VarId, int, VarIdHash> position;
  std::vector<std::pair<VarId, VarId>> pair_at;  // position -> (word-a wire, word-b wire)
};

InFieldAssignment find_output_encoding(const Netlist& n, const ExtractionResult& r);

InputPositionMap find_input_encoding(const InFieldAssignment& assign, const VarTable& vars);

// Algorithm: form every candidate product whose wire positions sum to m,
// drop candidates absent from all outputs (dummy products), then read the
// tail exponents off the outputs containing the entire surviving set.
IrreduciblePoly recover_irreducible(const ExtractionResult& r, const InFieldAssignment& assign,
                                    const InputPositionMap& inputs);

std::string power_of_two_decimal(int exponent);

struct RevengReport {
  int m = 0;
  InFieldAssignment output_order;
  InputPositionMap input_map;
  IrreduciblePoly p;
  Verdict spec_check;
  std::string ambiguity;  // 2^(m-1) as a decimal string

  IoMap recovered_io(const VarTable& vars) const;
  std::string to_json(const VarTable& vars) const;
};

RevengReport reverse_engineer(const Netlist& n, unsigned thread_limit,
                              std::size_t term_ceiling = kDefaultTermCeiling);

}  // namespace gfrev
