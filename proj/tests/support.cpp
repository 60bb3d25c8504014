#include "support.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <set>
#include <stdexcept>

#include <gfrev/errors.hpp>
#include <gfrev/gates.hpp>

namespace gfrev::test {

std::uint64_t gf_mult_bits(std::uint64_t a, std::uint64_t b, const IrreduciblePoly& p) {
  const int m = p.m;
  if (m < 1 || m > 31) throw std::invalid_argument("gf_mult_bits supports 1 <= m <= 31");
  std::uint64_t poly = 0;
  for (int e : p.exponents()) poly |= std::uint64_t{1} << e;

  std::uint64_t prod = 0;  // carry-less product, degree <= 2m-2
  for (int i = 0; i < m; ++i)
    if ((a >> i) & 1) prod ^= b << i;

  for (int k = 2 * m - 2; k >= m; --k)
    if ((prod >> k) & 1) prod ^= poly << (k - m);
  return prod & ((std::uint64_t{1} << m) - 1);
}

namespace {

// GF(2)[x] arithmetic on little-endian 64-bit limb vectors, used only by the
// irreducibility check so it stays independent of the library's polynomials.
using Bits = std::vector<std::uint64_t>;

int bits_degree(const Bits& v) {
  for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
    if (v[i]) return i * 64 + 63 - std::countl_zero(v[i]);
  return -1;
}

void bits_set(Bits& v, int bit) {
  const std::size_t limb = static_cast<std::size_t>(bit) / 64;
  if (v.size() <= limb) v.resize(limb + 1, 0);
  v[limb] |= std::uint64_t{1} << (bit % 64);
}

bool bits_test(const Bits& v, int bit) {
  const std::size_t limb = static_cast<std::size_t>(bit) / 64;
  return limb < v.size() && ((v[limb] >> (bit % 64)) & 1);
}

void bits_xor_shifted(Bits& acc, const Bits& f, int shift) {
  const std::size_t limb = static_cast<std::size_t>(shift) / 64;
  const int off = shift % 64;
  if (acc.size() < f.size() + limb + 1) acc.resize(f.size() + limb + 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    acc[i + limb] ^= f[i] << off;
    if (off) acc[i + limb + 1] ^= f[i] >> (64 - off);
  }
}

void bits_mod(Bits& a, const Bits& f) {
  const int df = bits_degree(f);
  for (int da = bits_degree(a); da >= df; da = bits_degree(a))
    bits_xor_shifted(a, f, da - df);
}

Bits bits_mulmod(const Bits& a, const Bits& b, const Bits& f) {
  Bits r;
  const int da = bits_degree(a);
  for (int i = 0; i <= da; ++i)
    if (bits_test(a, i)) bits_xor_shifted(r, b, i);
  bits_mod(r, f);
  return r;
}

Bits bits_gcd(Bits a, Bits b) {
  while (bits_degree(b) >= 0) {
    if (bits_degree(a) < bits_degree(b)) {
      std::swap(a, b);
      continue;
    }
    bits_mod(a, b);
    std::swap(a, b);
  }
  return a;
}

void bits_toggle_x(Bits& v) {
  if (v.empty()) v.resize(1, 0);
  v[0] ^= 2;  // add/remove the monomial x
}

}  // namespace

bool is_irreducible(const std::vector<int>& exponents) {
  const int m = *std::max_element(exponents.begin(), exponents.end());
  if (m == 1) return true;  // every degree-1 polynomial is irreducible

  Bits f;
  for (int e : exponents) bits_set(f, e);

  // x^(2^m) must equal x mod f, and x^(2^(m/q)) - x must be coprime with f
  // for every prime q dividing m (Rabin's criterion).
  std::set<int> checkpoints;
  int t = m;
  for (int d = 2; d * d <= t; ++d)
    if (t % d == 0) {
      checkpoints.insert(m / d);
      while (t % d == 0) t /= d;
    }
  if (t > 1) checkpoints.insert(m / t);

  Bits x;
  bits_set(x, 1);
  Bits h = x;
  for (int i = 1; i <= m; ++i) {
    h = bits_mulmod(h, h, f);  // h = x^(2^i) mod f
    if (checkpoints.count(i)) {
      Bits g = h;
      bits_toggle_x(g);
      if (bits_degree(bits_gcd(g, f)) != 0) return false;
    }
  }
  Bits g = h;
  bits_toggle_x(g);
  return bits_degree(g) < 0;
}

std::string two_bit_netlist_text() {
  return "# post-synthesis 2-bit field multiplier\n"
         "inputs a0 a1 b0 b1\n"
         "outputs z0 z1\n"
         "i1 = NAND(a0, b0)\n"
         "i2 = NAND(a1, b1)\n"
         "i3 = NAND(a1, b0)\n"
         "i4 = NAND(a0, b1)\n"
         "i5 = NOT(i2)\n"
         "i6 = XOR(i3, i4)\n"
         "z0 = XOR(i1, i2)\n"
         "z1 = XOR(i5, i6)\n";
}

Assignment simulate_all_wires(const Netlist& n, const Assignment& inputs) {
  Assignment values = inputs;
  for (std::uint32_t idx : n.topo_order()) {
    const Gate& g = n.gates()[idx];
    std::vector<bool> in;
    in.reserve(g.inputs.size());
    for (VarId v : g.inputs) in.push_back(values.at(v));
    values[g.output] = gate_eval(g.type, in);
  }
  return values;
}

namespace {

std::vector<std::string> sorted_names(const Netlist& n, const std::vector<VarId>& ids) {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (VarId v : ids) out.push_back(n.vars().name(v));
  std::sort(out.begin(), out.end());
  return out;
}

// Output values of `n` under the input vector encoded by `mask` over the
// (sorted) input name list, keyed by output name order of `names`.
std::vector<bool> outputs_for_mask(const Netlist& n, const std::vector<std::string>& pi_names,
                                   std::uint64_t mask, const std::vector<std::string>& po_names) {
  Assignment asg;
  for (std::size_t i = 0; i < pi_names.size(); ++i)
    asg[*n.vars().find(pi_names[i])] = (mask >> i) & 1;
  std::vector<bool> sim = n.simulate(asg);
  std::vector<bool> out(po_names.size());
  for (std::size_t i = 0; i < po_names.size(); ++i) {
    const VarId v = *n.vars().find(po_names[i]);
    const auto& pos = n.primary_outputs();
    const auto it = std::find(pos.begin(), pos.end(), v);
    out[i] = sim[static_cast<std::size_t>(it - pos.begin())];
  }
  return out;
}

bool differ_on_mask(const Netlist& x, const Netlist& y, const std::vector<std::string>& pis,
                    const std::vector<std::string>& pos, std::uint64_t mask) {
  return outputs_for_mask(x, pis, mask, pos) != outputs_for_mask(y, pis, mask, pos);
}

}  // namespace

bool same_function(const Netlist& lhs, const Netlist& rhs) {
  const auto pis = sorted_names(lhs, lhs.primary_inputs());
  const auto pos = sorted_names(lhs, lhs.primary_outputs());
  if (pis != sorted_names(rhs, rhs.primary_inputs())) return false;
  if (pos != sorted_names(rhs, rhs.primary_outputs())) return false;
  if (pis.size() > 20) throw std::invalid_argument("same_function: too many inputs");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pis.size()); ++mask)
    if (differ_on_mask(lhs, rhs, pis, pos, mask)) return false;
  return true;
}

Polynomial whole_netlist_rewrite(const Netlist& n, VarId out) {
  RewriteExpr expr(Polynomial::var(out));
  const auto& order = n.topo_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Gate& g = n.gates()[*it];
    if (!expr.mentions(g.output)) continue;
    std::vector<Polynomial> in;
    in.reserve(g.inputs.size());
    for (VarId v : g.inputs) in.push_back(Polynomial::var(v));
    expr.substitute(g.output, gate_polynomial(g.type, in));
  }
  return expr.poly();
}

Polynomial rewrite_shuffled(const Netlist& n, VarId out, std::mt19937_64& rng) {
  const Cone cone = n.extract_cone(out);
  std::set<std::uint32_t> in_cone(cone.gates.begin(), cone.gates.end());

  // Random valid topological order of the cone subgraph.
  std::unordered_map<std::uint32_t, int> pending;  // gate -> unplaced driver count
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> fanout;
  for (std::uint32_t gi : cone.gates) {
    int deps = 0;
    for (VarId v : n.gates()[gi].inputs) {
      const std::uint32_t d = n.driver(v);
      if (d != UINT32_MAX && in_cone.count(d)) {
        ++deps;
        fanout[d].push_back(gi);
      }
    }
    pending[gi] = deps;
  }
  std::vector<std::uint32_t> ready, order;
  for (std::uint32_t gi : cone.gates)
    if (pending[gi] == 0) ready.push_back(gi);
  while (!ready.empty()) {
    const std::size_t pick = rng() % ready.size();
    const std::uint32_t gi = ready[pick];
    ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(pick));
    order.push_back(gi);
    for (std::uint32_t succ : fanout[gi])
      if (--pending[succ] == 0) ready.push_back(succ);
  }
  assert(order.size() == cone.gates.size());

  RewriteExpr expr(Polynomial::var(out));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Gate& g = n.gates()[*it];
    if (!expr.mentions(g.output)) continue;
    std::vector<Polynomial> in;
    in.reserve(g.inputs.size());
    for (VarId v : g.inputs) in.push_back(Polynomial::var(v));
    expr.substitute(g.output, gate_polynomial(g.type, in));
  }
  return expr.poly();
}

Polynomial random_poly(std::mt19937_64& rng, const std::vector<VarId>& pool,
                       int max_terms, int max_degree) {
  Polynomial p;
  const int terms = static_cast<int>(rng() % (static_cast<std::uint64_t>(max_terms) + 1));
  for (int t = 0; t < terms; ++t) {
    const int deg = static_cast<int>(rng() % (static_cast<std::uint64_t>(max_degree) + 1));
    std::vector<VarId> vars;
    for (int d = 0; d < deg; ++d) vars.push_back(pool[rng() % pool.size()]);
    p.toggle(Monomial::from_vars(std::move(vars)));
  }
  return p;
}

int substitution_soundness_failures(int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  VarTable vars;
  std::vector<VarId> pool;
  for (char c : {'u', 'v', 'w', 'x', 'y', 'z'}) pool.push_back(vars.intern(std::string(1, c)));

  int failures = 0;
  for (int i = 0; i < cases; ++i) {
    const Polynomial f = random_poly(rng, pool, 8, 3);
    const VarId v = pool[rng() % pool.size()];
    std::vector<VarId> rest;
    for (VarId u : pool)
      if (u != v) rest.push_back(u);
    const Polynomial g = random_poly(rng, rest, 6, 3);

    Assignment sigma;
    for (VarId u : pool) sigma[u] = rng() & 1;
    const bool lhs = evaluate(substitute(f, v, g), sigma);
    Assignment shifted = sigma;
    shifted[v] = evaluate(g, sigma);
    const bool rhs = evaluate(f, shifted);
    if (lhs != rhs) ++failures;
  }
  return failures;
}

int gate_truth_table_failures() {
  static const GateType kAll[] = {
      GateType::AND,  GateType::OR,   GateType::XOR,    GateType::XNOR,
      GateType::NAND, GateType::NOR,  GateType::NOT,    GateType::BUF,
      GateType::AOI21, GateType::OAI21, GateType::CONST0, GateType::CONST1,
  };
  int failures = 0;
  for (GateType t : kAll) {
    const std::size_t arity = gate_arity(t);
    VarTable vars;
    std::vector<Polynomial> in_polys;
    std::vector<VarId> in_vars;
    for (std::size_t i = 0; i < arity; ++i) {
      const VarId v = vars.intern("x" + std::to_string(i));
      in_vars.push_back(v);
      in_polys.push_back(Polynomial::var(v));
    }
    const Polynomial model = gate_polynomial(t, in_polys);
    for (std::uint32_t mask = 0; mask < (1u << arity); ++mask) {
      Assignment asg;
      std::vector<bool> bits;
      for (std::size_t i = 0; i < arity; ++i) {
        const bool bit = (mask >> i) & 1;
        asg[in_vars[i]] = bit;
        bits.push_back(bit);
      }
      if (evaluate(model, asg) != gate_eval(t, bits)) ++failures;
    }
  }
  return failures;
}

namespace {

Netlist rebuild_with_gates(const Netlist& n, const std::vector<Gate>& gates) {
  Netlist out;
  for (std::uint32_t id = 0; id < n.vars().size(); ++id)
    out.vars().intern(n.vars().name(VarId{id}));
  for (VarId v : n.primary_inputs()) out.add_primary_input(v);
  for (const Gate& g : gates) out.add_gate(g);
  for (VarId v : n.primary_outputs()) out.add_primary_output(v);
  out.validate();
  return out;
}

const std::vector<GateType>& swap_pool(std::size_t arity) {
  static const std::vector<GateType> unary = {GateType::NOT, GateType::BUF};
  static const std::vector<GateType> binary = {GateType::AND,  GateType::OR,  GateType::XOR,
                                               GateType::XNOR, GateType::NAND, GateType::NOR};
  static const std::vector<GateType> ternary = {GateType::AOI21, GateType::OAI21};
  static const std::vector<GateType> none;
  switch (arity) {
    case 1: return unary;
    case 2: return binary;
    case 3: return ternary;
    default: return none;
  }
}

}  // namespace

Mutant random_mutant(const Netlist& n, std::mt19937_64& rng) {
  std::vector<int> topo_pos(n.gates().size(), 0);
  for (std::size_t i = 0; i < n.topo_order().size(); ++i)
    topo_pos[n.topo_order()[i]] = static_cast<int>(i);

  for (int attempt = 0; attempt < 1000; ++attempt) {
    const std::uint32_t gi = static_cast<std::uint32_t>(rng() % n.gates().size());
    const Gate& g = n.gates()[gi];
    if (g.inputs.empty()) continue;  // constants have nothing to mutate

    std::vector<Gate> gates = n.gates();
    std::string desc;
    if (rng() & 1) {
      const auto& pool = swap_pool(g.inputs.size());
      if (pool.size() < 2) continue;
      GateType nt = pool[rng() % pool.size()];
      if (nt == g.type) continue;
      gates[gi].type = nt;
      desc = "gate " + n.vars().name(g.output) + ": " + std::string(gate_name(g.type)) +
             " -> " + std::string(gate_name(nt));
    } else {
      // Rewire one input to a wire defined strictly earlier, so the graph
      // stays acyclic.
      std::vector<VarId> candidates(n.primary_inputs().begin(), n.primary_inputs().end());
      for (std::uint32_t oi = 0; oi < n.gates().size(); ++oi)
        if (topo_pos[oi] < topo_pos[gi]) candidates.push_back(n.gates()[oi].output);
      const std::size_t slot = rng() % g.inputs.size();
      const VarId replacement = candidates[rng() % candidates.size()];
      if (replacement == g.inputs[slot]) continue;
      gates[gi].inputs[slot] = replacement;
      desc = "gate " + n.vars().name(g.output) + ": input " + std::to_string(slot) + " " +
             n.vars().name(g.inputs[slot]) + " -> " + n.vars().name(replacement);
    }
    return Mutant{rebuild_with_gates(n, gates), desc};
  }
  throw std::runtime_error("random_mutant: no mutation found");
}

bool functionally_distinct(const Netlist& x, const Netlist& y, std::mt19937_64& rng) {
  const auto pis = sorted_names(x, x.primary_inputs());
  const auto pos = sorted_names(x, x.primary_outputs());
  assert(pis == sorted_names(y, y.primary_inputs()));
  assert(pos == sorted_names(y, y.primary_outputs()));

  const std::size_t k = pis.size();
  if (k <= 16) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask)
      if (differ_on_mask(x, y, pis, pos, mask)) return true;
    return false;
  }

  std::vector<std::uint64_t> masks = {0, (k >= 64 ? ~0ull : (std::uint64_t{1} << k) - 1)};
  for (std::size_t i = 0; i < k; ++i) {
    masks.push_back(std::uint64_t{1} << i);
    for (std::size_t j = i + 1; j < k; ++j)
      masks.push_back((std::uint64_t{1} << i) | (std::uint64_t{1} << j));
  }
  for (int i = 0; i < 4096; ++i) masks.push_back(rng());
  for (std::uint64_t mask : masks)
    if (differ_on_mask(x, y, pis, pos, mask)) return true;
  return false;
}

bool matches_oracle(const Netlist& n, const IrreduciblePoly& p) {
  const int m = p.m;
  if (m > 8) throw std::invalid_argument("matches_oracle: exhaustive check capped at m = 8");
  std::vector<VarId> a(m), b(m), z(m);
  for (int i = 0; i < m; ++i) {
    a[i] = *n.vars().find("a" + std::to_string(i));
    b[i] = *n.vars().find("b" + std::to_string(i));
    z[i] = *n.vars().find("z" + std::to_string(i));
  }
  std::vector<std::size_t> z_slot(m);
  for (int i = 0; i < m; ++i) {
    const auto& pos = n.primary_outputs();
    z_slot[i] = static_cast<std::size_t>(
        std::find(pos.begin(), pos.end(), z[i]) - pos.begin());
  }

  for (std::uint64_t av = 0; av < (std::uint64_t{1} << m); ++av)
    for (std::uint64_t bv = 0; bv < (std::uint64_t{1} << m); ++bv) {
      Assignment asg;
      for (int i = 0; i < m; ++i) {
        asg[a[i]] = (av >> i) & 1;
        asg[b[i]] = (bv >> i) & 1;
      }
      const std::vector<bool> sim = n.simulate(asg);
      std::uint64_t got = 0;
      for (int i = 0; i < m; ++i)
        if (sim[z_slot[i]]) got |= std::uint64_t{1} << i;
      if (got != gf_mult_bits(av, bv, p)) return false;
    }
  return true;
}

}  // namespace gfrev::test
