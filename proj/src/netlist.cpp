#include "gfrev/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>

namespace gfrev {

namespace {
constexpr std::uint32_t kNoDriver = UINT32_MAX;
}

bool Netlist::is_primary_input(VarId v) const {
  return std::find(primary_inputs_.begin(), primary_inputs_.end(), v) != primary_inputs_.end();
}

bool Netlist::is_primary_output(VarId v) const {
  return std::find(primary_outputs_.begin(), primary_outputs_.end(), v) != primary_outputs_.end();
}

std::uint32_t Netlist::driver(VarId v) const {
  return v.value < driver_.size() ? driver_[v.value] : kNoDriver;
}

void Netlist::add_primary_input(VarId v) { primary_inputs_.push_back(v); }

void Netlist::add_primary_output(VarId v) { primary_outputs_.push_back(v); }

void Netlist::add_gate(Gate g) { gates_.push_back(std::move(g)); }

void Netlist::check_drivers_and_wires() const {
  std::vector<bool> is_pi(vars_.size(), false);
  for (VarId v : primary_inputs_) {
    if (is_pi[v.value])
      throw MultipleDrivers("wire '" + vars_.name(v) + "' declared as primary input twice");
    is_pi[v.value] = true;
  }
  std::vector<bool> driven(vars_.size(), false);
  for (const Gate& g : gates_) {
    if (is_pi[g.output.value])
      throw MultipleDrivers("primary input '" + vars_.name(g.output) + "' is driven by a gate");
    if (driven[g.output.value])
      throw MultipleDrivers("wire '" + vars_.name(g.output) + "' has more than one driver");
    driven[g.output.value] = true;
    if (g.inputs.size() != gate_arity(g.type))
      throw Error("gate '" + vars_.name(g.output) + "': " + std::string(gate_name(g.type)) +
                  " expects " + std::to_string(gate_arity(g.type)) + " inputs");
  }
  for (const Gate& g : gates_)
    for (VarId in : g.inputs)
      if (!is_pi[in.value] && !driven[in.value])
        throw UndeclaredWire("wire '" + vars_.name(in) + "' used by gate '" +
                             vars_.name(g.output) + "' is neither a primary input nor driven");
  std::vector<bool> is_po(vars_.size(), false);
  for (VarId v : primary_outputs_) {
    if (is_po[v.value])
      throw Error("wire '" + vars_.name(v) + "' declared as primary output twice");
    is_po[v.value] = true;
    if (!is_pi[v.value] && !driven[v.value])
      throw UndrivenSignal("primary output '" + vars_.name(v) + "' has no driver");
  }
}

void Netlist::compute_topo_order() {
  driver_.assign(vars_.size(), kNoDriver);
  for (std::uint32_t i = 0; i < gates_.size(); ++i) driver_[gates_[i].output.value] = i;

  std::vector<std::uint32_t> indegree(gates_.size(), 0);
  std::vector<std::vector<std::uint32_t>> fanout(gates_.size());
  for (std::uint32_t i = 0; i < gates_.size(); ++i) {
    for (VarId in : gates_[i].inputs) {
      std::uint32_t d = driver_[in.value];
      if (d != kNoDriver) {
        fanout[d].push_back(i);
        ++indegree[i];
      }
    }
  }

  auto by_output = [this](std::uint32_t a, std::uint32_t b) {
    return gates_[a].output > gates_[b].output;  // min-heap on output VarId
  };
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, decltype(by_output)> ready(
      by_output);
  for (std::uint32_t i = 0; i < gates_.size(); ++i)
    if (indegree[i] == 0) ready.push(i);

  topo_order_.clear();
  topo_order_.reserve(gates_.size());
  while (!ready.empty()) {
    std::uint32_t g = ready.top();
    ready.pop();
    topo_order_.push_back(g);
    for (std::uint32_t succ : fanout[g])
      if (--indegree[succ] == 0) ready.push(succ);
  }

  if (topo_order_.size() != gates_.size()) {
    // Walk the residual graph to name one cycle.
    std::vector<bool> sorted(gates_.size(), false);
    for (std::uint32_t g : topo_order_) sorted[g] = true;
    std::uint32_t start = 0;
    while (sorted[start]) ++start;
    std::vector<std::uint32_t> path;
    std::vector<int> seen_at(gates_.size(), -1);
    std::uint32_t cur = start;
    while (seen_at[cur] < 0) {
      seen_at[cur] = static_cast<int>(path.size());
      path.push_back(cur);
      for (VarId in : gates_[cur].inputs) {
        std::uint32_t d = driver_[in.value];
        if (d != kNoDriver && !sorted[d]) {
          cur = d;
          break;
        }
      }
    }
    std::string msg = "combinational cycle:";
    for (std::size_t i = seen_at[cur]; i < path.size(); ++i)
      msg += " " + vars_.name(gates_[path[i]].output);
    msg += " -> " + vars_.name(gates_[cur].output);
    throw CombinationalCycle(msg);
  }
}

void Netlist::validate() {
  check_drivers_and_wires();
  compute_topo_order();
}

Cone Netlist::extract_cone(VarId out) const {
  if (!is_primary_output(out))
    throw NotAnOutput("wire '" + vars_.name(out) + "' is not a primary output");

  Cone cone;
  cone.output = out;
  std::vector<bool> in_cone(gates_.size(), false);
  std::vector<bool> support(vars_.size(), false);
  std::vector<VarId> stack{out};
  while (!stack.empty()) {
    VarId v = stack.back();
    stack.pop_back();
    std::uint32_t d = driver(v);
    if (d == kNoDriver) {
      support[v.value] = true;  // primary input
      continue;
    }
    if (in_cone[d]) continue;
    in_cone[d] = true;
    for (VarId in : gates_[d].inputs) stack.push_back(in);
  }
  for (std::uint32_t g : topo_order_)
    if (in_cone[g]) cone.gates.push_back(g);
  for (std::uint32_t v = 0; v < support.size(); ++v)
    if (support[v]) cone.support.push_back(VarId{v});
  return cone;
}

std::vector<std::uint32_t> Netlist::unreachable_gates() const {
  std::vector<bool> reached(gates_.size(), false);
  std::vector<VarId> stack(primary_outputs_.begin(), primary_outputs_.end());
  while (!stack.empty()) {
    VarId v = stack.back();
    stack.pop_back();
    std::uint32_t d = driver(v);
    if (d == kNoDriver || reached[d]) continue;
    reached[d] = true;
    for (VarId in : gates_[d].inputs) stack.push_back(in);
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < gates_.size(); ++i)
    if (!reached[i]) out.push_back(i);
  return out;
}

std::vector<bool> Netlist::simulate(const Assignment& inputs) const {
  std::vector<char> value(vars_.size(), 0);
  std::vector<bool> known(vars_.size(), false);
  for (VarId v : primary_inputs_) {
    auto it = inputs.find(v);
    if (it == inputs.end())
      throw UnboundVariable("simulate: primary input '" + vars_.name(v) + "' unassigned");
    value[v.value] = it->second;
    known[v.value] = true;
  }
  std::vector<bool> pins;
  for (std::uint32_t gi : topo_order_) {
    const Gate& g = gates_[gi];
    pins.clear();
    for (VarId in : g.inputs) pins.push_back(value[in.value] != 0);
    value[g.output.value] = gate_eval(g.type, pins);
    known[g.output.value] = true;
  }
  std::vector<bool> out;
  out.reserve(primary_outputs_.size());
  for (VarId v : primary_outputs_) {
    if (!known[v.value])
      throw UndrivenSignal("simulate: output '" + vars_.name(v) + "' never computed");
    out.push_back(value[v.value] != 0);
  }
  return out;
}

bool Netlist::simulate_cone(const Cone& cone, const Assignment& inputs) const {
  std::vector<char> value(vars_.size(), 0);
  for (VarId v : cone.support) {
    auto it = inputs.find(v);
    if (it == inputs.end())
      throw UnboundVariable("simulate_cone: input '" + vars_.name(v) + "' unassigned");
    value[v.value] = it->second;
  }
  std::vector<bool> pins;
  for (std::uint32_t gi : cone.gates) {
    const Gate& g = gates_[gi];
    pins.clear();
    for (VarId in : g.inputs) pins.push_back(value[in.value] != 0);
    value[g.output.value] = gate_eval(g.type, pins);
  }
  return value[cone.output.value] != 0;
}

std::string Netlist::to_equations() const {
  std::ostringstream os;
  os << "inputs";
  for (VarId v : primary_inputs_) os << ' ' << vars_.name(v);
  os << "\noutputs";
  for (VarId v : primary_outputs_) os << ' ' << vars_.name(v);
  os << '\n';
  for (const Gate& g : gates_) {
    os << vars_.name(g.output) << " = " << gate_name(g.type) << '(';
    for (std::size_t i = 0; i < g.inputs.size(); ++i) {
      if (i) os << ", ";
      os << vars_.name(g.inputs[i]);
    }
    os << ")\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Equation format parser
// ---------------------------------------------------------------------------

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$' || c == '.' ||
         c == '[' || c == ']';
}

struct LineScanner {
  const std::string& text;
  std::size_t lineno;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      throw ParseError(std::string("expected '") + c + "'", lineno, pos + 1);
    ++pos;
  }
  std::string ident() {
    skip_ws();
    if (pos >= text.size() || !ident_start(text[pos]))
      throw ParseError("expected identifier", lineno, pos + 1);
    std::size_t start = pos;
    while (pos < text.size() && ident_char(text[pos])) ++pos;
    return text.substr(start, pos - start);
  }
};

}  // namespace

Netlist parse_equations(const std::string& text) {
  Netlist n;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;

  std::unordered_map<std::string, std::size_t> driver_line;
  std::vector<std::pair<std::size_t, std::size_t>> gate_lines;  // (gate index, line)

  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    LineScanner sc{raw, lineno};
    if (sc.at_end()) continue;

    std::string first = sc.ident();
    if (first == "inputs" || first == "outputs") {
      while (!sc.at_end()) {
        VarId v = n.vars().intern(sc.ident());
        if (first == "inputs")
          n.add_primary_input(v);
        else
          n.add_primary_output(v);
      }
      continue;
    }

    // gate line: <out> = <TYPE>(<in>[, <in>]*)
    sc.expect('=');
    std::size_t type_col = sc.pos + 1;
    std::string type_name = sc.ident();
    auto type = gate_from_name(type_name);
    if (!type)
      throw UnsupportedGate("line " + std::to_string(lineno) + ": unknown gate type '" +
                            type_name + "'");
    Gate g;
    g.output = n.vars().intern(first);
    g.type = *type;
    sc.expect('(');
    if (sc.peek() != ')') {
      g.inputs.push_back(n.vars().intern(sc.ident()));
      while (sc.peek() == ',') {
        sc.expect(',');
        g.inputs.push_back(n.vars().intern(sc.ident()));
      }
    }
    sc.expect(')');
    if (!sc.at_end()) throw ParseError("trailing characters after gate", lineno, sc.pos + 1);
    if (g.inputs.size() != gate_arity(g.type))
      throw ParseError(std::string(gate_name(g.type)) + " expects " +
                           std::to_string(gate_arity(g.type)) + " inputs, got " +
                           std::to_string(g.inputs.size()),
                       lineno, type_col);

    if (auto it = driver_line.find(first); it != driver_line.end())
      throw MultipleDrivers("line " + std::to_string(lineno) + ": wire '" + first +
                            "' already driven at line " + std::to_string(it->second));
    driver_line.emplace(first, lineno);
    gate_lines.emplace_back(n.gates().size(), lineno);
    n.add_gate(std::move(g));
  }

  // Undeclared wires, reported with the line of the offending gate.
  {
    std::unordered_set<std::string> defined;
    for (VarId v : n.primary_inputs()) defined.insert(n.vars().name(v));
    for (const Gate& g : n.gates()) defined.insert(n.vars().name(g.output));
    for (const auto& [gi, line] : gate_lines)
      for (VarId in : n.gates()[gi].inputs)
        if (!defined.count(n.vars().name(in)))
          throw UndeclaredWire("line " + std::to_string(line) + ": wire '" + n.vars().name(in) +
                               "' is neither a primary input nor driven by any gate");
  }

  n.validate();
  return n;
}

Netlist parse_netlist_file(const std::string& path, const std::string& format) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open netlist file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();

  std::string fmt = format;
  if (fmt == "auto") {
    bool looks_verilog = text.find("module") != std::string::npos &&
                         text.find("endmodule") != std::string::npos;
    fmt = looks_verilog ? "verilog" : "equations";
  }
  if (fmt == "verilog") return parse_structural_verilog(text);
  if (fmt == "equations") return parse_equations(text);
  throw Error("unknown netlist format '" + format + "'");
}

// ---------------------------------------------------------------------------
// Scrambling and structural comparison
// ---------------------------------------------------------------------------

ScrambleResult scramble_netlist(const Netlist& n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);

  const std::size_t nvars = n.vars().size();
  std::vector<std::uint32_t> perm(nvars);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);

  ScrambleResult result;
  auto new_name = [&](VarId v) {
    std::string nm = "n" + std::to_string(perm[v.value]);
    result.renamed.emplace(n.vars().name(v), nm);
    return nm;
  };
  std::vector<std::string> renamed(nvars);
  for (std::uint32_t v = 0; v < nvars; ++v) renamed[v] = new_name(VarId{v});

  std::vector<VarId> pis = n.primary_inputs();
  std::vector<VarId> pos = n.primary_outputs();
  std::vector<std::uint32_t> gate_order(n.gates().size());
  std::iota(gate_order.begin(), gate_order.end(), 0);
  std::shuffle(pis.begin(), pis.end(), rng);
  std::shuffle(pos.begin(), pos.end(), rng);
  std::shuffle(gate_order.begin(), gate_order.end(), rng);

  Netlist& out = result.netlist;
  for (VarId v : pis) out.add_primary_input(out.vars().intern(renamed[v.value]));
  for (std::uint32_t gi : gate_order) {
    const Gate& g = n.gates()[gi];
    Gate ng;
    ng.output = out.vars().intern(renamed[g.output.value]);
    ng.type = g.type;
    for (VarId in : g.inputs) ng.inputs.push_back(out.vars().intern(renamed[in.value]));
    out.add_gate(std::move(ng));
  }
  for (VarId v : pos) out.add_primary_output(out.vars().intern(renamed[v.value]));
  out.validate();
  return result;
}

bool structurally_equal(const Netlist& a, const Netlist& b) {
  auto names = [](const Netlist& n, const std::vector<VarId>& ids) {
    std::vector<std::string> out;
    for (VarId v : ids) out.push_back(n.vars().name(v));
    return out;
  };
  if (names(a, a.primary_inputs()) != names(b, b.primary_inputs())) return false;
  if (names(a, a.primary_outputs()) != names(b, b.primary_outputs())) return false;
  if (a.gates().size() != b.gates().size()) return false;
  for (std::size_t i = 0; i < a.gates().size(); ++i) {
    const Gate& ga = a.gates()[i];
    const Gate& gb = b.gates()[i];
    if (ga.type != gb.type) return false;
    if (a.vars().name(ga.output) != b.vars().name(gb.output)) return false;
    if (names(a, ga.inputs) != names(b, gb.inputs)) return false;
  }
  return true;
}

}  // namespace gfrev
