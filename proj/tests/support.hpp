#pragma once

// Shared test helpers: an independent bit-vector field-multiplication oracle,
// a Rabin irreducibility checker, truth-table comparison, alternative
// rewriting strategies, and a single-gate mutation harness. Everything here
// is deliberately implemented without reusing the polynomial engine under
// test wherever an independent result is the point.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <gfrev/extract.hpp>
#include <gfrev/netlist.hpp>
#include <gfrev/poly.hpp>
#include <gfrev/specgen.hpp>

namespace gfrev::test {

// Field multiplication on bit vectors (bit i of a word = coefficient of x^i):
// carry-less product followed by reduction with shifted copies of P(x).
// Supports m <= 31.
std::uint64_t gf_mult_bits(std::uint64_t a, std::uint64_t b, const IrreduciblePoly& p);

// Rabin's irreducibility criterion over GF(2)[x]. Exponents must include the
// degree itself; any degree the catalog uses is fine.
bool is_irreducible(const std::vector<int>& exponents);

// The classic post-synthesis 2-bit multiplier (NAND/NOT/XOR mapping).
std::string two_bit_netlist_text();

// Values of every wire (inputs, internal, outputs) under one input vector.
// Independent walk over the topological order using gate_eval.
Assignment simulate_all_wires(const Netlist& n, const Assignment& inputs);

// Truth-table equality over all primary inputs. Requires identical primary
// input and output name sets; input count capped at 20.
bool same_function(const Netlist& lhs, const Netlist& rhs);

// Backward rewriting of `out` over the FULL gate list, not just its cone.
Polynomial whole_netlist_rewrite(const Netlist& n, VarId out);

// Rewrites the cone of `out` in a randomized valid reverse-topological order.
Polynomial rewrite_shuffled(const Netlist& n, VarId out, std::mt19937_64& rng);

// Random polynomial over a variable pool; may be zero.
Polynomial random_poly(std::mt19937_64& rng, const std::vector<VarId>& pool,
                       int max_terms, int max_degree);

// Number of failures over `cases` randomized substitution-soundness trials:
// evaluate(substitute(f, v, g), s) must equal evaluate(f, s[v := eval(g, s)]).
int substitution_soundness_failures(int cases, std::uint64_t seed);

// Number of gate-model disagreements between gate_polynomial and gate_eval
// over every gate type and every input combination.
int gate_truth_table_failures();

struct Mutant {
  Netlist netlist;
  std::string description;
};

// Single-gate mutation: swaps the gate type within the same arity, or rewires
// one input to a wire available earlier in the topological order. The result
// is always a structurally valid netlist with the same interface.
Mutant random_mutant(const Netlist& n, std::mt19937_64& rng);

// Whether two same-interface netlists differ on some input vector; exhaustive
// for <= 16 inputs, unit/pair/random sampling beyond that.
bool functionally_distinct(const Netlist& x, const Netlist& y, std::mt19937_64& rng);

// Exhaustive 2^(2m) simulation of an identity-named multiplier netlist
// against gf_mult_bits. m <= 8.
bool matches_oracle(const Netlist& n, const IrreduciblePoly& p);

}  // namespace gfrev::test
