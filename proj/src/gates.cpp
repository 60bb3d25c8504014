#include "gfrev/gates.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace gfrev {

namespace {

struct GateInfo {
  GateType type;
  std::string_view name;
  std::size_t arity;
};

constexpr std::array<GateInfo, 12> kGates{{
    {GateType::AND, "AND", 2},
    {GateType::OR, "OR", 2},
    {GateType::XOR, "XOR", 2},
    {GateType::XNOR, "XNOR", 2},
    {GateType::NAND, "NAND", 2},
    {GateType::NOR, "NOR", 2},
    {GateType::NOT, "NOT", 1},
    {GateType::BUF, "BUF", 1},
    {GateType::AOI21, "AOI21", 3},
    {GateType::OAI21, "OAI21", 3},
    {GateType::CONST0, "CONST0", 0},
    {GateType::CONST1, "CONST1", 0},
}};

const GateInfo& info(GateType t) {
  for (const GateInfo& g : kGates)
    if (g.type == t) return g;
  throw UnsupportedGate("unknown gate type code " +
                        std::to_string(static_cast<int>(t)));
}

}  // namespace

std::size_t gate_arity(GateType t) { return info(t).arity; }

std::string_view gate_name(GateType t) { return info(t).name; }

std::optional<GateType> gate_from_name(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (const GateInfo& g : kGates)
    if (g.name == upper) return g.type;
  return std::nullopt;
}

Polynomial gate_polynomial(GateType t, const std::vector<Polynomial>& inputs) {
  const GateInfo& g = info(t);
  if (inputs.size() != g.arity)
    throw Error(std::string(g.name) + " expects " + std::to_string(g.arity) +
                " inputs, got " + std::to_string(inputs.size()));

  const Polynomial one = Polynomial::one();
  switch (t) {
    case GateType::AND:
      return poly_mul(inputs[0], inputs[1]);
    case GateType::OR:
      return poly_add(poly_add(inputs[0], inputs[1]), poly_mul(inputs[0], inputs[1]));
    case GateType::XOR:
      return poly_add(inputs[0], inputs[1]);
    case GateType::XNOR:
      return poly_add(one, poly_add(inputs[0], inputs[1]));
    case GateType::NAND:
      return poly_add(one, poly_mul(inputs[0], inputs[1]));
    case GateType::NOR:
      return poly_add(one, poly_add(poly_add(inputs[0], inputs[1]),
                                    poly_mul(inputs[0], inputs[1])));
    case GateType::NOT:
      return poly_add(one, inputs[0]);
    case GateType::BUF:
      return inputs[0];
    case GateType::AOI21: {
      Polynomial inner = gate_polynomial(
          GateType::OR, {poly_mul(inputs[0], inputs[1]), inputs[2]});
      return poly_add(one, inner);
    }
    case GateType::OAI21: {
      Polynomial inner = poly_mul(
          gate_polynomial(GateType::OR, {inputs[0], inputs[1]}), inputs[2]);
      return poly_add(one, inner);
    }
    case GateType::CONST0:
      return Polynomial::zero();
    case GateType::CONST1:
      return one;
  }
  throw UnsupportedGate("unknown gate type code " + std::to_string(static_cast<int>(t)));
}

bool gate_eval(GateType t, const std::vector<bool>& inputs) {
  const GateInfo& g = info(t);
  if (inputs.size() != g.arity)
    throw Error(std::string(g.name) + " expects " + std::to_string(g.arity) +
                " inputs, got " + std::to_string(inputs.size()));
  switch (t) {
    case GateType::AND:
      return inputs[0] && inputs[1];
    case GateType::OR:
      return inputs[0] || inputs[1];
    case GateType::XOR:
      return inputs[0] != inputs[1];
    case GateType::XNOR:
      return inputs[0] == inputs[1];
    case GateType::NAND:
      return !(inputs[0] && inputs[1]);
    case GateType::NOR:
      return !(inputs[0] || inputs[1]);
    case GateType::NOT:
      return !inputs[0];
    case GateType::BUF:
      return inputs[0];
    case GateType::AOI21:
      return !((inputs[0] && inputs[1]) || inputs[2]);
    case GateType::OAI21:
      return !((inputs[0] || inputs[1]) && inputs[2]);
    case GateType::CONST0:
      return false;
    case GateType::CONST1:
      return true;
  }
  throw UnsupportedGate("unknown gate type code " + std::to_string(static_cast<int>(t)));
}

}  // namespace gfrev
