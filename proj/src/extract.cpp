#include "gfrev/extract.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <thread>
#include <unordered_set>

#include <json.hpp>

namespace gfrev {

unsigned default_thread_limit() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return std::min(hw, 16u);
}

Polynomial rewrite_cone(const Netlist& n, const Cone& cone, Polynomial seed,
                        std::size_t term_ceiling, OutputStats* stats) {
  auto start = std::chrono::steady_clock::now();
  const std::string out_name = n.vars().name(cone.output);

  RewriteExpr expr(std::move(seed));
  for (auto it = cone.gates.rbegin(); it != cone.gates.rend(); ++it) {
    const Gate& g = n.gates()[*it];
    if (!expr.mentions(g.output)) continue;
    std::vector<Polynomial> ins;
    ins.reserve(g.inputs.size());
    for (VarId v : g.inputs) ins.push_back(Polynomial::var(v));
    expr.substitute(g.output, gate_polynomial(g.type, ins));
    if (expr.term_count() > term_ceiling)
      throw TermCeilingExceeded("output '" + out_name + "': expression grew to " +
                                std::to_string(expr.term_count()) + " terms (ceiling " +
                                std::to_string(term_ceiling) + ")");
  }

  std::unordered_set<std::uint32_t> support;
  for (VarId v : cone.support) support.insert(v.value);
  for (VarId v : expr.poly().vars())
    if (!support.count(v.value))
      throw UndrivenSignal("output '" + out_name + "': signal '" + n.vars().name(v) +
                           "' is neither a primary input nor a gate output");

  if (stats) {
    stats->output = cone.output;
    stats->gate_count = cone.gates.size();
    stats->peak_terms = expr.peak_terms();
    stats->substitutions = expr.substitutions();
    stats->time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
  }
  return expr.poly();
}

ExtractionResult extract_all(const Netlist& n, unsigned thread_limit,
                             std::size_t term_ceiling) {
  if (thread_limit < 1) thread_limit = 1;
  const std::vector<VarId>& outs = n.primary_outputs();
  ExtractionResult result;
  result.outputs = outs;
  result.per_output.assign(outs.size(), Polynomial::zero());
  result.stats.assign(outs.size(), OutputStats{});

  std::vector<std::exception_ptr> errors(outs.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= outs.size()) return;
      try {
        Cone cone = n.extract_cone(outs[i]);
        result.per_output[i] = rewrite_cone(n, cone, Polynomial::var(outs[i]), term_ceiling,
                                            &result.stats[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(thread_limit, std::max<std::size_t>(outs.size(), 1)));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  for (std::size_t i = 0; i < outs.size(); ++i)
    if (errors[i]) std::rethrow_exception(errors[i]);
  return result;
}

std::vector<Polynomial> assemble_signature(const ExtractionResult& r,
                                           const std::vector<VarId>& output_order) {
  std::unordered_map<std::uint32_t, std::size_t> index;
  for (std::size_t i = 0; i < r.outputs.size(); ++i) index.emplace(r.outputs[i].value, i);
  if (output_order.size() != r.outputs.size())
    throw InvalidOutputOrder("output order has " + std::to_string(output_order.size()) +
                             " entries, result has " + std::to_string(r.outputs.size()));
  std::unordered_set<std::uint32_t> seen;
  std::vector<Polynomial> coeffs;
  coeffs.reserve(output_order.size());
  for (VarId v : output_order) {
    auto it = index.find(v.value);
    if (it == index.end()) throw InvalidOutputOrder("order names a wire that is not an output");
    if (!seen.insert(v.value).second)
      throw InvalidOutputOrder("order repeats an output wire");
    coeffs.push_back(r.per_output[it->second]);
  }
  return coeffs;
}

IoMap IoMap::identity(int m) {
  IoMap io;
  io.m = m;
  for (int i = 0; i < m; ++i) {
    io.inputs.emplace("a" + std::to_string(i), std::make_pair('a', i));
    io.inputs.emplace("b" + std::to_string(i), std::make_pair('b', i));
    io.outputs.emplace("z" + std::to_string(i), i);
  }
  return io;
}

IoMap IoMap::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw MappingError(std::string("bad io map JSON: ") + e.what());
  }
  IoMap io;
  try {
    io.m = j.at("m").get<int>();
    for (const auto& item : j.at("inputs")) {
      std::string word = item.at("word").get<std::string>();
      if (word != "a" && word != "b")
        throw MappingError("input word must be \"a\" or \"b\", got \"" + word + "\"");
      auto [it, fresh] = io.inputs.emplace(
          item.at("wire").get<std::string>(),
          std::make_pair(word[0], item.at("position").get<int>()));
      if (!fresh) throw MappingError("wire '" + it->first + "' mapped twice");
    }
    for (const auto& item : j.at("outputs")) {
      auto [it, fresh] = io.outputs.emplace(item.at("wire").get<std::string>(),
                                            item.at("position").get<int>());
      if (!fresh) throw MappingError("wire '" + it->first + "' mapped twice");
    }
  } catch (const nlohmann::json::exception& e) {
    throw MappingError(std::string("bad io map JSON: ") + e.what());
  }
  return io;
}

std::string IoMap::to_json() const {
  nlohmann::json j;
  j["m"] = m;
  std::vector<std::pair<std::string, std::pair<char, int>>> ins(inputs.begin(), inputs.end());
  std::sort(ins.begin(), ins.end(), [](const auto& x, const auto& y) {
    return std::tie(x.second.first, x.second.second, x.first) <
           std::tie(y.second.first, y.second.second, y.first);
  });
  j["inputs"] = nlohmann::json::array();
  for (const auto& [wire, wp] : ins)
    j["inputs"].push_back({{"wire", wire}, {"word", std::string(1, wp.first)},
                           {"position", wp.second}});
  std::vector<std::pair<std::string, int>> outs(outputs.begin(), outputs.end());
  std::sort(outs.begin(), outs.end(), [](const auto& x, const auto& y) {
    return std::tie(x.second, x.first) < std::tie(y.second, y.first);
  });
  j["outputs"] = nlohmann::json::array();
  for (const auto& [wire, pos] : outs)
    j["outputs"].push_back({{"wire", wire}, {"position", pos}});
  return j.dump(2) + "\n";
}

IoMap IoMap::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MappingError("cannot open io map file '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_json(text);
}

void IoMap::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write io map file '" + path + "'");
  out << to_json();
}

namespace {

// netlist VarId -> spec VarId (a_i -> i, b_i -> m+i), built from the io map
std::vector<VarId> input_remap(const Netlist& n, const IrreduciblePoly& p, const IoMap& io) {
  const int m = p.m;
  if (io.m != m)
    throw MappingError("io map is for m=" + std::to_string(io.m) + ", polynomial has m=" +
                       std::to_string(m));
  const auto& pis = n.primary_inputs();
  if (pis.size() != static_cast<std::size_t>(2 * m))
    throw MappingError("netlist has " + std::to_string(pis.size()) + " inputs, expected " +
                       std::to_string(2 * m));

  std::vector<VarId> remap(n.vars().size(), VarId{});
  std::vector<int> seen_a(m, 0), seen_b(m, 0);
  for (VarId v : pis) {
    auto it = io.inputs.find(n.vars().name(v));
    if (it == io.inputs.end())
      throw MappingError("input wire '" + n.vars().name(v) + "' missing from io map");
    auto [word, pos] = it->second;
    if (pos < 0 || pos >= m)
      throw MappingError("input wire '" + n.vars().name(v) + "' has position " +
                         std::to_string(pos) + " outside [0, m)");
    (word == 'a' ? seen_a : seen_b)[pos]++;
    remap[v.value] = VarId{static_cast<std::uint32_t>(word == 'a' ? pos : m + pos)};
  }
  for (int i = 0; i < m; ++i)
    if (seen_a[i] != 1 || seen_b[i] != 1)
      throw MappingError("io map does not assign each of a" + std::to_string(i) + "/b" +
                         std::to_string(i) + " exactly once");
  return remap;
}

Polynomial remap_polynomial(const Polynomial& f, const std::vector<VarId>& remap) {
  Polynomial out;
  for (const Monomial& mon : f.terms()) {
    std::vector<VarId> vars;
    vars.reserve(mon.vars().size());
    for (VarId v : mon.vars()) vars.push_back(remap[v.value]);
    out.toggle(Monomial::from_vars(std::move(vars)));
  }
  return out;
}

}  // namespace

Verdict verify_extraction(const Netlist& n, const ExtractionResult& r,
                          const IrreduciblePoly& p, const IoMap& io) {
  const int m = p.m;
  std::vector<VarId> remap = input_remap(n, p, io);

  const auto& pos = n.primary_outputs();
  if (pos.size() != static_cast<std::size_t>(m))
    throw MappingError("netlist has " + std::to_string(pos.size()) + " outputs, expected " +
                       std::to_string(m));
  std::vector<std::size_t> output_at(m, SIZE_MAX);
  for (std::size_t i = 0; i < pos.size(); ++i) {
    auto it = io.outputs.find(n.vars().name(pos[i]));
    if (it == io.outputs.end())
      throw MappingError("output wire '" + n.vars().name(pos[i]) + "' missing from io map");
    int bit = it->second;
    if (bit < 0 || bit >= m)
      throw MappingError("output wire '" + n.vars().name(pos[i]) + "' has position " +
                         std::to_string(bit) + " outside [0, m)");
    if (output_at[bit] != SIZE_MAX)
      throw MappingError("two output wires mapped to position " + std::to_string(bit));
    output_at[bit] = i;
  }

  GfSpec spec = build_spec(p);
  Verdict verdict;
  verdict.equal = true;
  verdict.residuals.reserve(m);
  for (int i = 0; i < m; ++i) {
    Polynomial got = remap_polynomial(r.per_output[output_at[i]], remap);
    Polynomial residual = poly_add(got, spec.outputs[i]);
    if (!residual.is_zero()) verdict.equal = false;
    verdict.residuals.push_back(std::move(residual));
  }
  return verdict;
}

Verdict verify(const Netlist& n, const IrreduciblePoly& p, const IoMap& io,
               unsigned thread_limit, std::size_t term_ceiling) {
  input_remap(n, p, io);  // reject a bad io map before the expensive part
  ExtractionResult r = extract_all(n, thread_limit, term_ceiling);
  return verify_extraction(n, r, p, io);
}

}  // namespace gfrev
