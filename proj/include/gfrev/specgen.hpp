#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gfrev/netlist.hpp"
#include "gfrev/poly.hpp"

namespace gfrev {

// P(x) = x^m + sum of x^e over tail exponents; tail always contains 0.
// Irreducibility is assumed for user-supplied polynomials, not checked here.
struct IrreduciblePoly {
  int m = 0;
  std::vector<int> tail;  // strictly descending, last element is 0
  std::string name;       // catalog label; empty for user-supplied polynomials

  // exponents must include m itself, e.g. {4,1,0} for x^4+x+1
  static IrreduciblePoly from_exponents(std::vector<int> exponents);
  static IrreduciblePoly from_csv(const std::string& text);  // "233,74,0"

  std::vector<int> exponents() const;  // {m, tail...}
  std::string to_string() const;       // "x^4+x^1+x^0"
  std::string csv() const;             // "4,1,0"
  bool operator==(const IrreduciblePoly& o) const { return m == o.m && tail == o.tail; }
};

// s_k = sum over i+j=k of a_i * b_j
struct ProductSet {
  int index = 0;
  Polynomial products;
};

// Golden multiplication function of GF(2^m) for a fixed P(x).
// Variable table convention: a_i has id i, b_j has id m+j.
struct GfSpec {
  int m = 0;
  IrreduciblePoly p;
  VarTable vars;
  std::vector<Polynomial> outputs;        // outputs[i] = function of bit z_i
  std::vector<ProductSet> product_sets;   // index k = 0 .. 2m-2
  std::vector<std::vector<int>> assignment;  // k -> ascending output positions receiving s_k

  VarId a(int i) const;
  VarId b(int j) const;
};

// Exponent set of x^k mod P(x), ascending. k must lie in [0, 2m-2].
std::vector<int> reduce_exponent(int k, const IrreduciblePoly& p);

GfSpec build_spec(const IrreduciblePoly& p);

// Number of 2-input XORs in the reduction stage: sum over outputs of
// (number of product sets assigned to that output - 1).
int xor_cost(const IrreduciblePoly& p);

struct GeneratedMultiplier {
  Netlist netlist;
  std::size_t and_gates = 0;
  std::size_t sum_xors = 0;        // XORs building the s_k trees
  std::size_t reduction_xors = 0;  // XORs folding assigned s_k into each output
};

// AND array of all m^2 partial products, one balanced XOR tree per product
// set, then one balanced XOR tree per output over its assigned sets.
// Wire names: inputs a<i>/b<j>, products p<i>_<j>, sets s<k>, outputs z<i>.
GeneratedMultiplier generate_mastrovito_full(const IrreduciblePoly& p);
Netlist generate_mastrovito(const IrreduciblePoly& p);

// Named low-weight irreducible polynomials, verified by the test suite.
// First entry per degree is the default for that m.
const std::vector<IrreduciblePoly>& polynomial_catalog();
std::optional<IrreduciblePoly> catalog_lookup(int m, const std::string& name = "");

}  // namespace gfrev
