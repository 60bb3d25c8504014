#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "gfrev/netlist.hpp"
#include "gfrev/poly.hpp"
#include "gfrev/specgen.hpp"

namespace gfrev {

inline constexpr std::size_t kDefaultTermCeiling = std::size_t{1} << 26;

unsigned default_thread_limit();  // hardware threads, capped at 16, at least 1

struct OutputStats {
  VarId output;
  std::size_t gate_count = 0;      // gates in the output's cone
  std::size_t peak_terms = 0;      // largest intermediate expression
  std::size_t substitutions = 0;   // gates actually substituted
  double time_ms = 0.0;
};

struct ExtractionResult {
  std::vector<VarId> outputs;          // = netlist primary output order
  std::vector<Polynomial> per_output;  // function of each output over primary inputs
  std::vector<OutputStats> stats;
};

// Backward rewriting over one cone: walks cone gates in reverse topological
// order, substituting each gate output present in the expression with the
// gate's input polynomial, reducing mod 2 as it goes.
Polynomial rewrite_cone(const Netlist& n, const Cone& cone, Polynomial seed,
                        std::size_t term_ceiling = kDefaultTermCeiling,
                        OutputStats* stats = nullptr);

// Extracts every primary output, scheduling outputs first-to-last over a pool
// of at most thread_limit workers. Results are independent of thread_limit.
ExtractionResult extract_all(const Netlist& n, unsigned thread_limit,
                             std::size_t term_ceiling = kDefaultTermCeiling);

// Coefficient polynomials [x^0, x^1, ...] in the requested output order.
std::vector<Polynomial> assemble_signature(const ExtractionResult& r,
                                           const std::vector<VarId>& output_order);

// Declared bit order: which wire carries which bit of words a, b and result z.
struct IoMap {
  int m = 0;
  std::unordered_map<std::string, std::pair<char, int>> inputs;  // wire -> ('a'|'b', bit)
  std::unordered_map<std::string, int> outputs;                  // wire -> bit

  static IoMap identity(int m);  // wires named a<i>, b<i>, z<i>
  static IoMap from_json(const std::string& text);
  static IoMap load(const std::string& path);
  std::string to_json() const;
  void save(const std::string& path) const;
};

struct Verdict {
  bool equal = false;
  std::vector<Polynomial> residuals;  // per bit position, over the spec's a/b variables
};

// Extracts the netlist and compares each output bit against the golden
// multiplication function for P(x); residual[i] = extracted + spec (mod 2).
Verdict verify(const Netlist& n, const IrreduciblePoly& p, const IoMap& io,
               unsigned thread_limit, std::size_t term_ceiling = kDefaultTermCeiling);

// Same comparison over an extraction already in hand.
Verdict verify_extraction(const Netlist& n, const ExtractionResult& r,
                          const IrreduciblePoly& p, const IoMap& io);

}  // namespace gfrev
