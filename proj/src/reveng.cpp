#include "gfrev/reveng.hpp"

#include <algorithm>

#include <json.hpp>

namespace gfrev {

InFieldAssignment find_output_encoding(const Netlist& n, const ExtractionResult& r) {
  const std::size_t m = r.outputs.size();
  if (m == 0) throw NoValidEncoding("netlist has no primary outputs");

  std::unordered_map<Monomial, int, MonomialHash> occurrences;
  for (std::size_t i = 0; i < m; ++i) {
    for (const Monomial& mon : r.per_output[i].terms()) {
      if (mon.degree() != 2)
        throw NoValidEncoding("output '" + n.vars().name(r.outputs[i]) +
                              "' has a term of degree " + std::to_string(mon.degree()) +
                              "; a multiplier output is a sum of input-pair products");
      ++occurrences[mon];
    }
  }

  std::vector<Polynomial> core(m);
  for (std::size_t i = 0; i < m; ++i)
    for (const Monomial& mon : r.per_output[i].terms())
      if (occurrences.at(mon) == 1) core[i].toggle(mon);

  std::vector<std::size_t> owner(m + 1, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t size = core[i].term_count();
    if (size < 1 || size > m || owner[size] != SIZE_MAX) {
      std::string sizes;
      for (std::size_t j = 0; j < m; ++j)
        sizes += (j ? "," : "") + std::to_string(core[j].term_count());
      throw NoValidEncoding("unique-product set sizes {" + sizes + "} are not {1.." +
                            std::to_string(m) + "}");
    }
    owner[size] = i;
  }

  InFieldAssignment assign;
  assign.m = static_cast<int>(m);
  assign.output_at.resize(m);
  assign.core_at.resize(m);
  for (std::size_t pos = 0; pos < m; ++pos) {
    std::size_t idx = owner[pos + 1];
    assign.output_at[pos] = r.outputs[idx];
    assign.core_at[pos] = core[idx];
  }
  return assign;
}

InputPositionMap find_input_encoding(const InFieldAssignment& assign, const VarTable& vars) {
  const int m = assign.m;
  InputPositionMap map;
  map.m = m;
  map.pair_at.resize(m);

  // first-seen walk: any wire new to s_i sits at position i
  std::vector<std::vector<VarId>> fresh_at(m);
  for (int i = 0; i < m; ++i) {
    const Polynomial& s = assign.core_at[i];
    for (const Monomial& mon : s.terms())
      for (VarId v : mon.vars())
        if (!map.position.count(v)) {
          map.position.emplace(v, i);
          fresh_at[i].push_back(v);
        }
    if (fresh_at[i].size() != 2)
      throw InconsistentEncoding("product set at position " + std::to_string(i) +
                                 " introduces " + std::to_string(fresh_at[i].size()) +
                                 " new wires, expected 2");
    for (const Monomial& mon : s.terms()) {
      auto span = mon.vars();
      if (map.position.at(span[0]) + map.position.at(span[1]) != i)
        throw InconsistentEncoding("product " + to_string(mon, vars) + " violates the position-" +
                                   std::to_string(i) + " convolution structure");
    }
  }

  // word split: lexicographically smaller position-0 wire anchors word a;
  // in s_i the wire multiplied with it is word b's position-i wire
  VarId a0 = fresh_at[0][0], b0 = fresh_at[0][1];
  if (vars.name(b0) < vars.name(a0)) std::swap(a0, b0);
  map.pair_at[0] = {a0, b0};
  for (int i = 1; i < m; ++i) {
    VarId with_a0{}, with_b0{};
    for (const Monomial& mon : assign.core_at[i].terms()) {
      auto span = mon.vars();
      if (mon.contains(a0)) with_a0 = span[0] == a0 ? span[1] : span[0];
      if (mon.contains(b0)) with_b0 = span[0] == b0 ? span[1] : span[0];
    }
    bool pair_ok = with_a0.valid() && with_b0.valid() && !(with_a0 == with_b0) &&
                   ((with_a0 == fresh_at[i][0] && with_b0 == fresh_at[i][1]) ||
                    (with_a0 == fresh_at[i][1] && with_b0 == fresh_at[i][0]));
    if (!pair_ok)
      throw InconsistentEncoding("cannot split the position-" + std::to_string(i) +
                                 " pair into words from its cross products");
    map.pair_at[i] = {with_b0, with_a0};  // a0*b_i and a_i*b0 are the cross products
  }
  return map;
}

IrreduciblePoly recover_irreducible(const ExtractionResult& r, const InFieldAssignment& assign,
                                    const InputPositionMap& inputs) {
  const int m = assign.m;
  if (m < 2)
    throw Error("irreducible polynomial recovery needs m >= 2; GF(2) has no out-of-field set");

  // candidate products of the first out-of-field set: position sum == m,
  // including same-word pairs that dummy elimination will discard
  std::vector<Monomial> candidates;
  for (int i = 1; 2 * i <= m; ++i) {
    int j = m - i;  // j <= m-1 since i >= 1
    auto [ui, vi] = inputs.pair_at[i];
    auto [uj, vj] = inputs.pair_at[j];
    if (i == j) {
      candidates.push_back(Monomial::from_vars({ui, vi}));
    } else {
      candidates.push_back(Monomial::from_vars({ui, uj}));
      candidates.push_back(Monomial::from_vars({ui, vj}));
      candidates.push_back(Monomial::from_vars({vi, uj}));
      candidates.push_back(Monomial::from_vars({vi, vj}));
    }
  }

  std::vector<Monomial> sm;
  for (const Monomial& mon : candidates) {
    bool present = false;
    for (const Polynomial& f : r.per_output)
      if (f.contains(mon)) {
        present = true;
        break;
      }
    if (present) sm.push_back(mon);
  }
  if (sm.empty())
    throw EmptySm("every position-sum-" + std::to_string(m) +
                  " candidate product is a dummy; no out-of-field set found");

  std::vector<int> exponents{m};
  for (int i = m - 1; i >= 0; --i) {
    auto it = std::find(r.outputs.begin(), r.outputs.end(), assign.output_at[i]);
    const Polynomial& expr = r.per_output[it - r.outputs.begin()];
    bool all = true;
    for (const Monomial& mon : sm)
      if (!expr.contains(mon)) {
        all = false;
        break;
      }
    if (all) exponents.push_back(i);
  }
  if (exponents.size() == 1)
    throw NotReducible("no output contains the full out-of-field product set");
  if (exponents.back() != 0)
    throw NotReducible("recovered tail lacks the constant term; not an irreducible polynomial");
  return IrreduciblePoly::from_exponents(std::move(exponents));
}

std::string power_of_two_decimal(int exponent) {
  std::string digits = "1";
  for (int i = 0; i < exponent; ++i) {
    int carry = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
      int d = (*it - '0') * 2 + carry;
      *it = static_cast<char>('0' + d % 10);
      carry = d / 10;
    }
    if (carry) digits.insert(digits.begin(), static_cast<char>('0' + carry));
  }
  return digits;
}

IoMap RevengReport::recovered_io(const VarTable& vars) const {
  IoMap io;
  io.m = m;
  for (int i = 0; i < m; ++i) {
    io.inputs.emplace(vars.name(input_map.pair_at[i].first), std::make_pair('a', i));
    io.inputs.emplace(vars.name(input_map.pair_at[i].second), std::make_pair('b', i));
    io.outputs.emplace(vars.name(output_order.output_at[i]), i);
  }
  return io;
}

std::string RevengReport::to_json(const VarTable& vars) const {
  nlohmann::json j;
  j["m"] = m;
  j["irreducible"] = p.exponents();
  j["outputs"] = nlohmann::json::array();
  for (int i = 0; i < m; ++i)
    j["outputs"].push_back(
        {{"wire", vars.name(output_order.output_at[i])}, {"position", i}});
  j["inputs"] = nlohmann::json::array();
  for (int i = 0; i < m; ++i) {
    j["inputs"].push_back(
        {{"wire", vars.name(input_map.pair_at[i].first)}, {"position", i}, {"word", "a"}});
    j["inputs"].push_back(
        {{"wire", vars.name(input_map.pair_at[i].second)}, {"position", i}, {"word", "b"}});
  }
  j["verified"] = spec_check.equal;
  j["ambiguity"] = ambiguity;
  return j.dump(2) + "\n";
}

RevengReport reverse_engineer(const Netlist& n, unsigned thread_limit,
                              std::size_t term_ceiling) {
  ExtractionResult r = extract_all(n, thread_limit, term_ceiling);

  RevengReport rep;
  rep.output_order = find_output_encoding(n, r);
  rep.m = rep.output_order.m;
  rep.input_map = find_input_encoding(rep.output_order, n.vars());
  // GF(2) has exactly one irreducible polynomial with a constant term
  rep.p = rep.m == 1 ? IrreduciblePoly::from_exponents({1, 0})
                     : recover_irreducible(r, rep.output_order, rep.input_map);
  rep.spec_check = verify_extraction(n, r, rep.p, rep.recovered_io(n.vars()));
  rep.ambiguity = power_of_two_decimal(rep.m - 1);
  return rep;
}

}  // namespace gfrev
