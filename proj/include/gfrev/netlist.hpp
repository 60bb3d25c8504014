#pragma once

// Gate-level combinational netlists: parsing (equation format and a
// structural Verilog subset), topological ordering, per-output logic cones,
// simulation, and serialization.

#include <cstdint>
#include <string>
#include <vector>

#include "gfrev/gates.hpp"
#include "gfrev/poly.hpp"

namespace gfrev {

struct Gate {
  VarId output;
  GateType type = GateType::BUF;
  std::vector<VarId> inputs;

  friend bool operator==(const Gate&, const Gate&) = default;
};

// The transitive fan-in of one primary output. `gates` are indices into
// Netlist::gates, listed in topological order; `support` is the subset of
// primary inputs the output depends on.
struct Cone {
  VarId output;
  std::vector<std::uint32_t> gates;
  std::vector<VarId> support;
};

class Netlist {
 public:
  VarTable& vars() { return vars_; }
  const VarTable& vars() const { return vars_; }

  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<VarId>& primary_inputs() const { return primary_inputs_; }
  const std::vector<VarId>& primary_outputs() const { return primary_outputs_; }

  // Gate indices such that every gate appears after all gates driving its
  // inputs. Deterministic: Kahn's algorithm with ties broken by ascending
  // VarId of the gate output.
  const std::vector<std::uint32_t>& topo_order() const { return topo_order_; }

  bool is_primary_input(VarId v) const;
  bool is_primary_output(VarId v) const;

  // Index of the gate driving v, or UINT32_MAX if v is a primary input.
  std::uint32_t driver(VarId v) const;

  Cone extract_cone(VarId out) const;  // throws NotAnOutput

  // Gates not reachable backward from any primary output (reported, never
  // silently dropped).
  std::vector<std::uint32_t> unreachable_gates() const;

  // Full-netlist simulation; the assignment must cover every primary input.
  // Returns one value per primary output, in declaration order.
  std::vector<bool> simulate(const Assignment& inputs) const;

  // Simulates only the cone's gates; used to cross-check cone completeness.
  bool simulate_cone(const Cone& cone, const Assignment& inputs) const;

  std::string to_equations() const;
  std::string to_verilog(const std::string& module_name = "circuit") const;

  // Construction API used by the parsers and the netlist generator. Wires
  // must be interned through vars() first; validate() checks the invariants
  // and computes the topological order.
  void add_primary_input(VarId v);
  void add_primary_output(VarId v);
  void add_gate(Gate g);
  void validate();  // throws MultipleDrivers / UndeclaredWire / CombinationalCycle / ...

 private:
  void check_drivers_and_wires() const;
  void compute_topo_order();

  VarTable vars_;
  std::vector<Gate> gates_;  // file order
  std::vector<VarId> primary_inputs_;
  std::vector<VarId> primary_outputs_;
  std::vector<std::uint32_t> topo_order_;
  std::vector<std::uint32_t> driver_;  // per VarId; UINT32_MAX = primary input
};

Netlist parse_equations(const std::string& text);
Netlist parse_structural_verilog(const std::string& text);

// Reads a netlist file, dispatching on contents ("module" keyword) when the
// format is "auto", else by explicit format name.
Netlist parse_netlist_file(const std::string& path, const std::string& format = "auto");

// Deterministically renames every wire, shuffles the gate list, and shuffles
// the primary input/output declaration order. Returns the scrambled netlist
// plus the old-name -> new-name map (ground truth for tests).
struct ScrambleResult {
  Netlist netlist;
  std::unordered_map<std::string, std::string> renamed;
};
ScrambleResult scramble_netlist(const Netlist& n, std::uint64_t seed);

// Name-based structural equality (gate list, PI/PO order, connectivity),
// independent of VarId numbering.
bool structurally_equal(const Netlist& a, const Netlist& b);

}  // namespace gfrev
