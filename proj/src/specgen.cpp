#include "gfrev/specgen.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gfrev {

IrreduciblePoly IrreduciblePoly::from_exponents(std::vector<int> exponents) {
  if (exponents.empty()) throw Error("polynomial needs at least the exponents m and 0");
  std::sort(exponents.begin(), exponents.end(), std::greater<int>());
  if (std::adjacent_find(exponents.begin(), exponents.end()) != exponents.end())
    throw Error("duplicate exponent in polynomial");
  if (exponents.front() < 1) throw Error("polynomial degree must be at least 1");
  if (exponents.back() < 0) throw Error("negative exponent in polynomial");
  if (exponents.back() != 0)
    throw Error("polynomial must have constant term 1 (exponent 0)");
  IrreduciblePoly p;
  p.m = exponents.front();
  p.tail.assign(exponents.begin() + 1, exponents.end());
  if (p.tail.empty()) throw Error("polynomial x^m alone is not irreducible; need a tail");
  return p;
}

IrreduciblePoly IrreduciblePoly::from_csv(const std::string& text) {
  std::vector<int> exps;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
      exps.push_back(v);
    } catch (const std::exception&) {
      throw Error("invalid exponent '" + item + "' in polynomial '" + text + "'");
    }
  }
  return from_exponents(std::move(exps));
}

std::vector<int> IrreduciblePoly::exponents() const {
  std::vector<int> out{m};
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

std::string IrreduciblePoly::to_string() const {
  std::string out;
  for (int e : exponents()) {
    if (!out.empty()) out += '+';
    out += "x^" + std::to_string(e);
  }
  return out;
}

std::string IrreduciblePoly::csv() const {
  std::string out;
  for (int e : exponents()) {
    if (!out.empty()) out += ',';
    out += std::to_string(e);
  }
  return out;
}

VarId GfSpec::a(int i) const { return VarId{static_cast<std::uint32_t>(i)}; }
VarId GfSpec::b(int j) const { return VarId{static_cast<std::uint32_t>(m + j)}; }

std::vector<int> reduce_exponent(int k, const IrreduciblePoly& p) {
  const int m = p.m;
  if (k < 0 || k > 2 * m - 2)
    throw InvalidExponent("exponent " + std::to_string(k) + " outside [0, " +
                          std::to_string(2 * m - 2) + "] for m=" + std::to_string(m));
  std::set<int> result;
  std::set<int> work{k};
  auto toggle = [](std::set<int>& s, int e) {
    auto [it, inserted] = s.insert(e);
    if (!inserted) s.erase(it);
  };
  while (!work.empty()) {
    int e = *work.rbegin();
    work.erase(std::prev(work.end()));
    if (e < m) {
      toggle(result, e);
      continue;
    }
    // x^e = x^(e-m) * P'(x) mod P(x)
    for (int t : p.tail) toggle(work, e - m + t);
  }
  return std::vector<int>(result.begin(), result.end());
}

GfSpec build_spec(const IrreduciblePoly& p) {
  GfSpec spec;
  spec.m = p.m;
  spec.p = p;
  const int m = p.m;
  for (int i = 0; i < m; ++i) spec.vars.intern("a" + std::to_string(i));
  for (int j = 0; j < m; ++j) spec.vars.intern("b" + std::to_string(j));

  spec.outputs.assign(m, Polynomial::zero());
  for (int k = 0; k <= 2 * m - 2; ++k) {
    ProductSet s;
    s.index = k;
    for (int i = std::max(0, k - m + 1); i <= std::min(k, m - 1); ++i)
      s.products.toggle(Monomial::from_vars({spec.a(i), spec.b(k - i)}));
    std::vector<int> targets = reduce_exponent(k, p);
    for (int i : targets)
      for (const Monomial& mon : s.products.terms()) spec.outputs[i].toggle(mon);
    spec.assignment.push_back(std::move(targets));
    spec.product_sets.push_back(std::move(s));
  }
  return spec;
}

int xor_cost(const IrreduciblePoly& p) {
  const int m = p.m;
  std::vector<int> column(m, 0);
  for (int k = 0; k <= 2 * m - 2; ++k)
    for (int i : reduce_exponent(k, p)) ++column[i];
  int cost = 0;
  for (int c : column) cost += std::max(c - 1, 0);
  return cost;
}

namespace {

// Pairwise halving passes over the wire list; the last XOR gets top_name,
// interior nodes get <prefix>_t<n>. Requires wires.size() >= 2.
std::string build_xor_tree(Netlist& n, std::vector<std::string> level, const std::string& prefix,
                           const std::string& top_name, std::size_t& xor_count) {
  std::size_t aux = 0;
  while (level.size() > 1) {
    std::vector<std::string> next;
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
      std::string out = level.size() == 2 ? top_name : prefix + "_t" + std::to_string(aux++);
      Gate g;
      g.output = n.vars().intern(out);
      g.type = GateType::XOR;
      g.inputs = {n.vars().intern(level[i]), n.vars().intern(level[i + 1])};
      n.add_gate(std::move(g));
      ++xor_count;
      next.push_back(std::move(out));
    }
    if (level.size() % 2) next.push_back(level.back());
    level = std::move(next);
  }
  return level[0];
}

}  // namespace

GeneratedMultiplier generate_mastrovito_full(const IrreduciblePoly& p) {
  const int m = p.m;
  GeneratedMultiplier result;
  Netlist& n = result.netlist;

  for (int i = 0; i < m; ++i) n.add_primary_input(n.vars().intern("a" + std::to_string(i)));
  for (int j = 0; j < m; ++j) n.add_primary_input(n.vars().intern("b" + std::to_string(j)));

  std::vector<std::vector<int>> columns(m);  // output i -> product set indices, ascending
  for (int k = 0; k <= 2 * m - 2; ++k)
    for (int i : reduce_exponent(k, p)) columns[i].push_back(k);

  auto product_name = [&](int i, int j) {
    // The lone multiplier of GF(2) is its output directly.
    if (m == 1) return std::string("z0");
    return "p" + std::to_string(i) + "_" + std::to_string(j);
  };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Gate g;
      g.output = n.vars().intern(product_name(i, j));
      g.type = GateType::AND;
      g.inputs = {n.vars().intern("a" + std::to_string(i)),
                  n.vars().intern("b" + std::to_string(j))};
      n.add_gate(std::move(g));
      ++result.and_gates;
    }

  // Product-set stage: one wire per s_k. A set whose output column is just
  // itself feeds nothing downstream, so its tree top is the output wire.
  std::vector<std::string> set_wire(std::max(2 * m - 1, 1));
  for (int k = 0; k <= 2 * m - 2; ++k) {
    std::vector<std::string> wires;
    for (int i = std::max(0, k - m + 1); i <= std::min(k, m - 1); ++i)
      wires.push_back(product_name(i, k - i));
    bool is_sole_column_entry = k < m && columns[k].size() == 1;
    if (wires.size() == 1) {
      set_wire[k] = wires[0];
      continue;
    }
    std::string prefix = "s" + std::to_string(k);
    std::string top = is_sole_column_entry ? "z" + std::to_string(k) : prefix;
    set_wire[k] = build_xor_tree(n, std::move(wires), prefix, top, result.sum_xors);
  }

  for (int i = 0; i < m; ++i) {
    if (columns[i].size() == 1) {
      // set_wire[i] is already named z<i> (or is the single AND gate at m=1)
      n.add_primary_output(n.vars().intern("z" + std::to_string(i)));
      continue;
    }
    std::vector<std::string> wires;
    for (int k : columns[i]) wires.push_back(set_wire[k]);
    std::string name = "z" + std::to_string(i);
    build_xor_tree(n, std::move(wires), name, name, result.reduction_xors);
    n.add_primary_output(n.vars().intern(name));
  }

  n.validate();
  return result;
}

Netlist generate_mastrovito(const IrreduciblePoly& p) {
  return generate_mastrovito_full(p).netlist;
}

const std::vector<IrreduciblePoly>& polynomial_catalog() {
  static const std::vector<IrreduciblePoly> catalog = [] {
    auto mk = [](std::vector<int> exps, const char* name) {
      IrreduciblePoly p = IrreduciblePoly::from_exponents(std::move(exps));
      p.name = name;
      return p;
    };
    return std::vector<IrreduciblePoly>{
        mk({1, 0}, "linear"),
        mk({2, 1, 0}, "trinomial-1"),
        mk({3, 1, 0}, "trinomial-1"),
        mk({4, 1, 0}, "p2"),
        mk({4, 3, 0}, "p1"),
        mk({5, 2, 0}, "trinomial-2"),
        mk({6, 1, 0}, "trinomial-1"),
        mk({6, 3, 0}, "trinomial-3"),
        mk({7, 1, 0}, "trinomial-1"),
        mk({8, 4, 3, 1, 0}, "pentanomial-4-3-1"),
        mk({8, 4, 3, 2, 0}, "pentanomial-4-3-2"),
        mk({16, 5, 3, 1, 0}, "pentanomial-5-3-1"),
        mk({16, 5, 3, 2, 0}, "pentanomial-5-3-2"),
        mk({32, 7, 3, 2, 0}, "pentanomial-7-3-2"),
        mk({32, 22, 2, 1, 0}, "pentanomial-22-2-1"),
        mk({64, 21, 19, 4, 0}, "pentanomial-21-19-4"),
        mk({64, 4, 3, 1, 0}, "pentanomial-4-3-1"),
        mk({163, 80, 47, 9, 0}, "pentanomial-80-47-9"),
        mk({163, 7, 6, 3, 0}, "pentanomial-7-6-3"),
        mk({233, 74, 0}, "trinomial-74"),
        mk({233, 159, 0}, "trinomial-159"),
        mk({409, 87, 0}, "trinomial-87"),
    };
  }();
  return catalog;
}

std::optional<IrreduciblePoly> catalog_lookup(int m, const std::string& name) {
  for (const IrreduciblePoly& p : polynomial_catalog())
    if (p.m == m && (name.empty() || p.name == name)) return p;
  return std::nullopt;
}

}  // namespace gfrev
