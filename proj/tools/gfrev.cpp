#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gfrev/extract.hpp"
#include "gfrev/netlist.hpp"
#include "gfrev/reveng.hpp"
#include "gfrev/specgen.hpp"

namespace {

using namespace gfrev;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

IrreduciblePoly resolve_poly(int m, const std::string& p_csv) {
  if (!p_csv.empty()) {
    IrreduciblePoly p = IrreduciblePoly::from_csv(p_csv);
    if (m > 0 && p.m != m)
      throw Error("-m " + std::to_string(m) + " disagrees with -p degree " +
                  std::to_string(p.m));
    if (!catalog_lookup(p.m, p.name).has_value()) {
      bool known = false;
      for (const IrreduciblePoly& c : polynomial_catalog())
        if (c == p) known = true;
      if (!known)
        std::cerr << "note: irreducibility of " << p.to_string()
                  << " is assumed, not checked\n";
    }
    return p;
  }
  if (m <= 0) throw Error("need -p <exponents> or -m <degree> with a catalog entry");
  auto p = catalog_lookup(m);
  if (!p) throw Error("no catalog polynomial for m=" + std::to_string(m) + "; pass -p");
  return *p;
}

std::string spec_text(const GfSpec& spec, const GeneratedMultiplier& gen) {
  std::ostringstream os;
  os << "m " << spec.m << "\n";
  os << "p " << spec.p.to_string() << "\n";
  for (int i = 0; i < spec.m; ++i)
    os << "z" << i << " = " << to_string(spec.outputs[i], spec.vars) << "\n";
  for (int k = spec.m; k <= 2 * spec.m - 2; ++k) {
    os << "s" << k << " ->";
    const auto& targets = spec.assignment[k];
    for (auto it = targets.rbegin(); it != targets.rend(); ++it) os << " z" << *it;
    os << "\n";
  }
  os << "xor_cost " << xor_cost(spec.p) << "\n";
  os << "gates " << gen.netlist.gates().size() << "\n";
  return os.str();
}

IoMap remap_io(const IoMap& io, const std::unordered_map<std::string, std::string>& renamed) {
  IoMap out;
  out.m = io.m;
  for (const auto& [wire, wp] : io.inputs) out.inputs.emplace(renamed.at(wire), wp);
  for (const auto& [wire, pos] : io.outputs) out.outputs.emplace(renamed.at(wire), pos);
  return out;
}

int cmd_generate(int m, const std::string& p_csv, std::string prefix,
                 std::int64_t scramble_seed, bool scramble) {
  IrreduciblePoly p = resolve_poly(m, p_csv);
  if (prefix.empty()) prefix = "mult" + std::to_string(p.m);

  GeneratedMultiplier gen = generate_mastrovito_full(p);
  GfSpec spec = build_spec(p);
  IoMap io = IoMap::identity(p.m);

  Netlist* netlist = &gen.netlist;
  ScrambleResult scrambled;
  if (scramble) {
    scrambled = scramble_netlist(gen.netlist, static_cast<std::uint64_t>(scramble_seed));
    io = remap_io(io, scrambled.renamed);
    netlist = &scrambled.netlist;
  }

  write_file(prefix + ".eqn", netlist->to_equations());
  write_file(prefix + ".v", netlist->to_verilog("gf_mult_" + std::to_string(p.m)));
  io.save(prefix + ".iomap.json");
  write_file(prefix + ".spec.txt", spec_text(spec, gen));
  std::cout << "wrote " << prefix << ".eqn, " << prefix << ".v, " << prefix
            << ".iomap.json, " << prefix << ".spec.txt\n";
  return 0;
}

nlohmann::json outputs_json(const Netlist& n, const ExtractionResult& r) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < r.outputs.size(); ++i) {
    const OutputStats& st = r.stats[i];
    arr.push_back({{"name", n.vars().name(r.outputs[i])},
                   {"polynomial", to_string(r.per_output[i], n.vars())},
                   {"gate_count", st.gate_count},
                   {"peak_terms", st.peak_terms},
                   {"time_ms", st.time_ms}});
  }
  return arr;
}

void print_output_stats(std::ostream& os, const Netlist& n, const ExtractionResult& r,
                        bool with_polys) {
  for (std::size_t i = 0; i < r.outputs.size(); ++i) {
    const OutputStats& st = r.stats[i];
    os << n.vars().name(r.outputs[i]);
    if (with_polys) os << " = " << to_string(r.per_output[i], n.vars());
    os << "  [gates=" << st.gate_count << " peak_terms=" << st.peak_terms
       << " substitutions=" << st.substitutions << " time_ms=" << st.time_ms << "]\n";
  }
}

int cmd_extract(const std::string& input, const std::string& format, unsigned threads,
                std::size_t ceiling, const std::string& report, const std::string& out_path) {
  Netlist n = parse_netlist_file(input, format);
  ExtractionResult r = extract_all(n, threads, ceiling);

  std::ostringstream os;
  if (report == "json") {
    nlohmann::json j;
    j["outputs"] = outputs_json(n, r);
    j["verdict"] = nullptr;
    j["residuals"] = nlohmann::json::array();
    os << j.dump(2) << "\n";
  } else {
    print_output_stats(os, n, r, true);
  }
  if (out_path.empty())
    std::cout << os.str();
  else
    write_file(out_path, os.str());
  return 0;
}

IoMap find_sidecar(const std::string& input, const std::string& iomap_path) {
  if (!iomap_path.empty()) return IoMap::load(iomap_path);
  std::filesystem::path in(input);
  std::filesystem::path beside = in;
  beside += ".iomap.json";
  if (std::filesystem::exists(beside)) return IoMap::load(beside.string());
  std::filesystem::path stripped = in;
  stripped.replace_extension(".iomap.json");
  if (std::filesystem::exists(stripped)) return IoMap::load(stripped.string());
  throw MappingError("no io map: pass --iomap or place " + stripped.string() +
                     " next to the netlist");
}

int cmd_verify(const std::string& input, const std::string& format, int m,
               const std::string& p_csv, const std::string& iomap_path, unsigned threads,
               std::size_t ceiling, const std::string& report, const std::string& out_path) {
  Netlist n = parse_netlist_file(input, format);
  IrreduciblePoly p = resolve_poly(m, p_csv);
  IoMap io = find_sidecar(input, iomap_path);

  ExtractionResult r = extract_all(n, threads, ceiling);
  Verdict v = verify_extraction(n, r, p, io);
  GfSpec spec = build_spec(p);

  std::ostringstream os;
  if (report == "json") {
    nlohmann::json j;
    j["outputs"] = outputs_json(n, r);
    j["verdict"] = v.equal;
    j["residuals"] = nlohmann::json::array();
    for (int i = 0; i < p.m; ++i)
      if (!v.residuals[i].is_zero())
        j["residuals"].push_back(
            {{"position", i}, {"polynomial", to_string(v.residuals[i], spec.vars)}});
    os << j.dump(2) << "\n";
  } else {
    os << "p: " << p.to_string() << "\n";
    print_output_stats(os, n, r, false);
    os << "verdict: " << (v.equal ? "equal" : "mismatch") << "\n";
    for (int i = 0; i < p.m; ++i)
      if (!v.residuals[i].is_zero())
        os << "residual[" << i << "] = " << to_string(v.residuals[i], spec.vars) << "\n";
  }
  if (out_path.empty())
    std::cout << os.str();
  else
    write_file(out_path, os.str());
  return v.equal ? 0 : 1;
}

int cmd_reveng(const std::string& input, const std::string& format, unsigned threads,
               std::size_t ceiling, const std::string& report, const std::string& out_path) {
  Netlist n = parse_netlist_file(input, format);
  RevengReport rep = reverse_engineer(n, threads, ceiling);

  std::ostringstream os;
  if (report == "json") {
    os << rep.to_json(n.vars());
  } else {
    os << "m: " << rep.m << "\n";
    os << "irreducible: " << rep.p.to_string() << "\n";
    for (int i = 0; i < rep.m; ++i)
      os << "output position " << i << ": " << n.vars().name(rep.output_order.output_at[i])
         << "\n";
    for (int i = 0; i < rep.m; ++i)
      os << "input position " << i << ": a=" << n.vars().name(rep.input_map.pair_at[i].first)
         << " b=" << n.vars().name(rep.input_map.pair_at[i].second) << "\n";
    os << "verified: " << (rep.spec_check.equal ? "yes" : "no") << "\n";
    os << "word pairings consistent with the positions: " << rep.ambiguity << "\n";
  }
  if (out_path.empty())
    std::cout << os.str();
  else
    write_file(out_path, os.str());
  return rep.spec_check.equal ? 0 : 1;
}

int cmd_bench(const std::string& sizes_csv, const std::string& threads_csv,
              const std::string& p_csv, std::size_t ceiling, const std::string& out_path) {
  std::vector<int> sizes;
  {
    std::stringstream ss(sizes_csv);
    std::string item;
    while (std::getline(ss, item, ',')) sizes.push_back(std::stoi(item));
  }
  std::vector<unsigned> threads;
  {
    std::stringstream ss(threads_csv);
    std::string item;
    while (std::getline(ss, item, ',')) threads.push_back(std::stoul(item));
  }
  if (sizes.empty() || threads.empty()) throw Error("bench needs --sizes and --threads");
  if (!p_csv.empty() && sizes.size() != 1)
    throw Error("-p applies only when --sizes has a single entry");

  std::ostringstream os;
  os << "m,p,gates,T,wall_time_ms,peak_terms\n";
  for (int m : sizes) {
    IrreduciblePoly p = p_csv.empty() ? resolve_poly(m, "") : resolve_poly(m, p_csv);
    Netlist n = generate_mastrovito(p);
    std::vector<Polynomial> reference;
    for (unsigned t : threads) {
      auto start = std::chrono::steady_clock::now();
      ExtractionResult r = extract_all(n, t, ceiling);
      double wall =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
              .count();
      if (reference.empty())
        reference = r.per_output;
      else if (reference != r.per_output)
        throw Error("results differ between thread counts at m=" + std::to_string(m) +
                    ", T=" + std::to_string(t));
      std::size_t peak = 0;
      for (const OutputStats& st : r.stats) peak = std::max(peak, st.peak_terms);
      os << m << "," << p.to_string() << "," << n.gates().size() << "," << t << "," << wall
         << "," << peak << "\n";
    }
  }
  if (out_path.empty())
    std::cout << os.str();
  else
    write_file(out_path, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GF(2^m) multiplier toolkit: generate, extract, verify, reverse engineer"};
  app.require_subcommand(1);

  int m = 0;
  std::string p_csv;
  unsigned threads = default_thread_limit();
  std::string format = "auto";
  std::string report = "text";
  std::size_t ceiling = kDefaultTermCeiling;
  std::int64_t scramble_seed = 0;
  bool scramble = false;
  std::string input, out_path, iomap_path;
  std::string sizes_csv, threads_csv;

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    sub->add_option("-T,--threads", threads, "worker thread limit")
        ->check(CLI::PositiveNumber);
    sub->add_option("--term-ceiling", ceiling, "abort extraction past this many terms");
    if (needs_input) {
      sub->add_option("input", input, "netlist file")->required();
      sub->add_option("--format", format, "input netlist format")
          ->check(CLI::IsMember({"auto", "equations", "verilog"}));
    }
    sub->add_option("-o,--out", out_path, "output file (default stdout)");
    sub->add_option("--report", report, "report style")
        ->check(CLI::IsMember({"text", "json"}));
  };

  CLI::App* gen = app.add_subcommand("generate", "emit a reference multiplier netlist");
  gen->add_option("-m", m, "field degree");
  gen->add_option("-p", p_csv, "irreducible polynomial exponents, e.g. 233,74,0");
  gen->add_option("-o,--out", out_path, "output file prefix");
  gen->add_option("--scramble-seed", scramble_seed, "emit with scrambled wire names")
      ->each([&](const std::string&) { scramble = true; });

  CLI::App* ext = app.add_subcommand("extract", "extract per-output polynomials");
  add_common(ext, true);

  CLI::App* ver = app.add_subcommand("verify", "verify a netlist against GF(2^m) multiplication");
  add_common(ver, true);
  ver->add_option("-m", m, "field degree");
  ver->add_option("-p", p_csv, "irreducible polynomial exponents");
  ver->add_option("--iomap", iomap_path, "io map JSON (default: sidecar next to input)");

  CLI::App* rev = app.add_subcommand("reveng", "recover bit order and P(x) from a netlist");
  add_common(rev, true);

  CLI::App* bench = app.add_subcommand("bench", "time extraction across thread counts");
  bench->add_option("--sizes", sizes_csv, "comma-separated list of m")->required();
  bench->add_option("--threads", threads_csv, "comma-separated list of T")->required();
  bench->add_option("-p", p_csv, "polynomial for a single-size run");
  bench->add_option("--term-ceiling", ceiling, "abort extraction past this many terms");
  bench->add_option("-o,--out", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
    if (gen->parsed()) return cmd_generate(m, p_csv, out_path, scramble_seed, scramble);
    if (ext->parsed()) return cmd_extract(input, format, threads, ceiling, report, out_path);
    if (ver->parsed())
      return cmd_verify(input, format, m, p_csv, iomap_path, threads, ceiling, report,
                        out_path);
    if (rev->parsed()) return cmd_reveng(input, format, threads, ceiling, report, out_path);
    if (bench->parsed()) return cmd_bench(sizes_csv, threads_csv, p_csv, ceiling, out_path);
    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const NoValidEncoding& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
