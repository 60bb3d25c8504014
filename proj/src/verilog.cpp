#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "gfrev/netlist.hpp"

namespace gfrev {

namespace {

struct Token {
  enum Kind { Ident, Number, Lit0, Lit1, Punct, End } kind = End;
  std::string text;
  std::size_t line = 0, col = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_space_and_comments();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= text_.size()) return t;  // End

    char c = text_[pos_];
    if (c == '\\') {  // escaped identifier: backslash to next whitespace
      advance();
      std::string name;
      while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        name += text_[pos_];
        advance();
      }
      if (name.empty()) throw ParseError("empty escaped identifier", t.line, t.col);
      t.kind = Token::Ident;
      t.text = std::move(name);
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (pos_ < text_.size()) {
        char d = text_[pos_];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '$') {
          name += d;
          advance();
        } else {
          break;
        }
      }
      t.kind = Token::Ident;
      t.text = std::move(name);
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        digits += text_[pos_];
        advance();
      }
      if (pos_ < text_.size() && text_[pos_] == '\'') {
        advance();
        if (pos_ >= text_.size() || (text_[pos_] != 'b' && text_[pos_] != 'B'))
          throw UnsupportedVerilog("line " + std::to_string(t.line) +
                                   ": only binary literals 1'b0 and 1'b1 are supported");
        advance();
        std::string bits;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
          bits += text_[pos_];
          advance();
        }
        if (digits != "1" || (bits != "0" && bits != "1"))
          throw UnsupportedVerilog("line " + std::to_string(t.line) + ": literal '" + digits +
                                   "'b" + bits + "' unsupported; only 1'b0 and 1'b1");
        t.kind = bits == "0" ? Token::Lit0 : Token::Lit1;
        t.text = digits + "'b" + bits;
        return t;
      }
      t.kind = Token::Number;
      t.text = std::move(digits);
      return t;
    }
    t.kind = Token::Punct;
    t.text = std::string(1, c);
    advance();
    return t;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space_and_comments() {
    for (;;) {
      while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
      if (pos_ >= text_.size()) return;
      if (text_[pos_] == '`') {  // compiler directive: ignore to end of line
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
        continue;
      }
      if (text_[pos_] == '/' && pos_ + 1 < text_.size()) {
        if (text_[pos_ + 1] == '/') {
          while (pos_ < text_.size() && text_[pos_] != '\n') advance();
          continue;
        }
        if (text_[pos_ + 1] == '*') {
          std::size_t cl = line_, cc = col_;
          advance();
          advance();
          while (pos_ < text_.size() &&
                 !(text_[pos_] == '*' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/'))
            advance();
          if (pos_ >= text_.size()) throw ParseError("unterminated block comment", cl, cc);
          advance();
          advance();
          continue;
        }
      }
      return;
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

const std::unordered_set<std::string> kBehavioral = {
    "always",   "assign", "initial",  "reg",      "if",     "else",    "case",
    "casex",    "casez",  "for",      "while",    "repeat", "forever", "function",
    "task",     "specify", "primitive", "table",  "tri",    "tri0",    "tri1",
    "supply0",  "supply1", "parameter", "localparam", "defparam", "genvar", "generate",
    "endgenerate", "real", "integer",  "time",    "event",  "fork",    "join"};

std::optional<GateType> primitive_type(const std::string& name) {
  if (name == "and") return GateType::AND;
  if (name == "or") return GateType::OR;
  if (name == "xor") return GateType::XOR;
  if (name == "xnor") return GateType::XNOR;
  if (name == "nand") return GateType::NAND;
  if (name == "nor") return GateType::NOR;
  if (name == "not") return GateType::NOT;
  if (name == "buf") return GateType::BUF;
  return std::nullopt;
}

// A connection pin: either a wire name (resolved) or a constant literal.
struct Pin {
  std::string wire;  // empty when constant
  int literal = -1;  // 0 or 1 when constant
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) { bump(); }

  Netlist parse() {
    expect_keyword("module");
    expect_ident("module name");
    if (accept_punct("(")) parse_port_header();
    expect_punct(";");

    while (!at_keyword("endmodule")) {
      if (tok_.kind == Token::End)
        throw ParseError("unexpected end of file; missing 'endmodule'", tok_.line, tok_.col);
      parse_statement();
    }
    bump();  // endmodule

    Netlist n;
    for (const std::string& name : input_order_) n.add_primary_input(n.vars().intern(name));
    for (auto& g : gates_) {
      Gate gate;
      gate.output = n.vars().intern(g.output);
      gate.type = g.type;
      for (auto& in : g.inputs) gate.inputs.push_back(n.vars().intern(in));
      n.add_gate(std::move(gate));
    }
    for (const std::string& name : output_order_) n.add_primary_output(n.vars().intern(name));
    n.validate();
    return n;
  }

 private:
  struct PendingGate {
    std::string output;
    GateType type;
    std::vector<std::string> inputs;
  };

  void bump() { tok_ = lex_.next(); }

  bool at_keyword(const std::string& kw) const {
    return tok_.kind == Token::Ident && tok_.text == kw;
  }
  bool accept_punct(const std::string& p) {
    if (tok_.kind == Token::Punct && tok_.text == p) {
      bump();
      return true;
    }
    return false;
  }
  void expect_punct(const std::string& p) {
    if (!accept_punct(p))
      throw ParseError("expected '" + p + "', got '" + tok_.text + "'", tok_.line, tok_.col);
  }
  void expect_keyword(const std::string& kw) {
    if (!at_keyword(kw))
      throw ParseError("expected '" + kw + "', got '" + tok_.text + "'", tok_.line, tok_.col);
    bump();
  }
  std::string expect_ident(const char* what) {
    if (tok_.kind != Token::Ident)
      throw ParseError(std::string("expected ") + what + ", got '" + tok_.text + "'", tok_.line,
                       tok_.col);
    std::string s = tok_.text;
    bump();
    return s;
  }
  long expect_number() {
    if (tok_.kind != Token::Number)
      throw ParseError("expected number, got '" + tok_.text + "'", tok_.line, tok_.col);
    long v = std::stol(tok_.text);
    bump();
    return v;
  }

  // [msb:lsb] -> pair(lo, hi)
  std::optional<std::pair<long, long>> parse_range() {
    if (!accept_punct("[")) return std::nullopt;
    long a = expect_number();
    expect_punct(":");
    long b = expect_number();
    expect_punct("]");
    return std::make_pair(std::min(a, b), std::max(a, b));
  }

  void declare(const std::string& name, std::optional<std::pair<long, long>> range, int dir) {
    // dir: 0 wire, 1 input, 2 output
    if (range)
      ranged_[name] = *range;
    else
      scalars_.insert(name);
    auto expand = [&](std::vector<std::string>& order) {
      if (range) {
        for (long i = range->first; i <= range->second; ++i)
          order.push_back(name + "[" + std::to_string(i) + "]");
      } else {
        order.push_back(name);
      }
    };
    if (dir == 1) expand(input_order_);
    if (dir == 2) expand(output_order_);
  }

  void parse_port_header() {
    if (accept_punct(")")) return;
    for (;;) {
      int dir = 0;
      if (at_keyword("input")) {
        bump();
        dir = 1;
      } else if (at_keyword("output")) {
        bump();
        dir = 2;
      } else if (at_keyword("inout")) {
        throw UnsupportedVerilog("line " + std::to_string(tok_.line) +
                                 ": unsupported construct 'inout'");
      } else if (at_keyword("wire")) {
        bump();  // "input wire" style handled below; bare wire in header is odd but harmless
      }
      if (at_keyword("wire")) bump();
      auto range = parse_range();
      std::string name = expect_ident("port name");
      if (dir == 0) {
        // non-ANSI header: names only; directions come from body declarations
        header_ports_.push_back(name);
        (void)range;
      } else {
        declare(name, range, dir);
      }
      if (accept_punct(")")) return;
      expect_punct(",");
    }
  }

  void parse_decl(int dir) {
    auto range = parse_range();
    for (;;) {
      std::string name = expect_ident("wire name");
      declare(name, range, dir);
      if (accept_punct(";")) return;
      expect_punct(",");
    }
  }

  Pin parse_pin() {
    if (tok_.kind == Token::Lit0 || tok_.kind == Token::Lit1) {
      Pin p;
      p.literal = tok_.kind == Token::Lit1 ? 1 : 0;
      bump();
      return p;
    }
    if (tok_.kind == Token::Punct && tok_.text == ".")
      throw UnsupportedVerilog("line " + std::to_string(tok_.line) +
                               ": named port connections are not supported");
    std::size_t line = tok_.line, col = tok_.col;
    std::string name = expect_ident("wire name");
    Pin p;
    if (tok_.kind == Token::Punct && tok_.text == "[") {
      bump();
      long idx = expect_number();
      expect_punct("]");
      auto it = ranged_.find(name);
      if (it == ranged_.end())
        throw ParseError("wire '" + name + "' is not declared with a range", line, col);
      if (idx < it->second.first || idx > it->second.second)
        throw ParseError("index " + std::to_string(idx) + " out of range for wire '" + name + "'",
                         line, col);
      p.wire = name + "[" + std::to_string(idx) + "]";
    } else {
      if (ranged_.count(name))
        throw ParseError("ranged wire '" + name + "' used without an index", line, col);
      p.wire = name;
    }
    return p;
  }

  std::string const_wire(int value) {
    std::string name = value ? "$const1" : "$const0";
    if (!const_emitted_[value]) {
      const_emitted_[value] = true;
      gates_.push_back({name, value ? GateType::CONST1 : GateType::CONST0, {}});
    }
    return name;
  }

  std::string pin_wire(const Pin& p) {
    return p.wire.empty() ? const_wire(p.literal) : p.wire;
  }

  void emit_instance(GateType type, const std::vector<Pin>& pins, std::size_t line) {
    if (type == GateType::NOT || type == GateType::BUF) {
      // not/buf: one or more outputs, then one input, per the Verilog primitive rule
      if (pins.size() < 2)
        throw ParseError(std::string(gate_name(type)) + " needs an output and an input",
                         line, 1);
      const Pin& in = pins.back();
      for (std::size_t i = 0; i + 1 < pins.size(); ++i) {
        if (pins[i].wire.empty())
          throw ParseError("constant literal cannot be a gate output", line, 1);
        if (type == GateType::BUF && in.wire.empty()) {
          // buf from a literal is a constant driver
          gates_.push_back(
              {pins[i].wire, in.literal ? GateType::CONST1 : GateType::CONST0, {}});
          if (pins[i].wire == (in.literal ? "$const1" : "$const0"))
            const_emitted_[in.literal] = true;
        } else {
          gates_.push_back({pins[i].wire, type, {pin_wire(in)}});
        }
      }
      return;
    }

    if (pins.size() < 3)
      throw ParseError(std::string(gate_name(type)) + " needs at least two inputs", line, 1);
    if (pins[0].wire.empty())
      throw ParseError("constant literal cannot be a gate output", line, 1);
    const std::string& out = pins[0].wire;

    // n-ary semantics: reduce over all inputs, with the inversion (if any) applied once.
    GateType chain;
    switch (type) {
      case GateType::NAND: chain = GateType::AND; break;
      case GateType::NOR: chain = GateType::OR; break;
      case GateType::XNOR: chain = GateType::XOR; break;
      default: chain = type; break;
    }
    std::vector<std::string> ins;
    for (std::size_t i = 1; i < pins.size(); ++i) ins.push_back(pin_wire(pins[i]));
    std::string acc = ins[0];
    for (std::size_t i = 1; i + 1 < ins.size(); ++i) {
      std::string tmp = out + "$x" + std::to_string(aux_counter_++);
      gates_.push_back({tmp, chain, {acc, ins[i]}});
      acc = tmp;
    }
    gates_.push_back({out, type, {acc, ins.back()}});
  }

  void parse_gate_statement(GateType type) {
    std::size_t line = tok_.line;
    // one or more comma-separated instances: [name] ( pins )
    for (;;) {
      if (tok_.kind == Token::Ident) bump();  // optional instance name
      expect_punct("(");
      std::vector<Pin> pins;
      pins.push_back(parse_pin());
      while (accept_punct(",")) pins.push_back(parse_pin());
      expect_punct(")");
      emit_instance(type, pins, line);
      if (accept_punct(";")) return;
      expect_punct(",");
    }
  }

  void parse_statement() {
    if (tok_.kind != Token::Ident)
      throw ParseError("expected a declaration or gate instance, got '" + tok_.text + "'",
                       tok_.line, tok_.col);
    if (kBehavioral.count(tok_.text))
      throw UnsupportedVerilog("line " + std::to_string(tok_.line) +
                               ": unsupported construct '" + tok_.text + "'");
    if (at_keyword("input")) {
      bump();
      parse_decl(1);
      return;
    }
    if (at_keyword("output")) {
      bump();
      parse_decl(2);
      return;
    }
    if (at_keyword("wire")) {
      bump();
      parse_decl(0);
      return;
    }
    if (at_keyword("inout"))
      throw UnsupportedVerilog("line " + std::to_string(tok_.line) +
                               ": unsupported construct 'inout'");
    if (auto prim = primitive_type(tok_.text)) {
      bump();
      parse_gate_statement(*prim);
      return;
    }
    throw UnsupportedVerilog("line " + std::to_string(tok_.line) + ": unsupported cell '" +
                             tok_.text + "' (supported: and, or, xor, xnor, nand, nor, not, buf)");
  }

  Lexer lex_;
  Token tok_;
  std::vector<std::string> header_ports_;
  std::vector<std::string> input_order_;
  std::vector<std::string> output_order_;
  std::unordered_set<std::string> scalars_;
  std::unordered_map<std::string, std::pair<long, long>> ranged_;
  std::vector<PendingGate> gates_;
  bool const_emitted_[2] = {false, false};
  std::size_t aux_counter_ = 0;
};

bool plain_verilog_ident(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '$') return false;
  return true;
}

std::string vname(const std::string& s) {
  return plain_verilog_ident(s) ? s : "\\" + s + " ";
}

const char* primitive_name(GateType t) {
  switch (t) {
    case GateType::AND: return "and";
    case GateType::OR: return "or";
    case GateType::XOR: return "xor";
    case GateType::XNOR: return "xnor";
    case GateType::NAND: return "nand";
    case GateType::NOR: return "nor";
    case GateType::NOT: return "not";
    case GateType::BUF: return "buf";
    default: return nullptr;
  }
}

}  // namespace

Netlist parse_structural_verilog(const std::string& text) {
  Parser p(text);
  return p.parse();
}

std::string Netlist::to_verilog(const std::string& module_name) const {
  for (VarId v : primary_inputs_)
    if (is_primary_output(v))
      throw UnsupportedVerilog("wire '" + vars_.name(v) +
                               "' is both an input and an output port; insert a BUF");

  std::ostringstream os;
  os << "module " << module_name << " (";
  bool first = true;
  auto port = [&](VarId v) {
    os << (first ? "" : ", ") << vname(vars_.name(v));
    first = false;
  };
  for (VarId v : primary_inputs_) port(v);
  for (VarId v : primary_outputs_) port(v);
  os << ");\n";
  for (VarId v : primary_inputs_) os << "  input " << vname(vars_.name(v)) << ";\n";
  for (VarId v : primary_outputs_) os << "  output " << vname(vars_.name(v)) << ";\n";
  for (const Gate& g : gates_)
    if (!is_primary_output(g.output)) os << "  wire " << vname(vars_.name(g.output)) << ";\n";

  std::size_t inst = 0;
  std::size_t aux = 0;
  auto emit = [&](const char* prim, const std::string& out,
                  const std::vector<std::string>& ins) {
    os << "  " << prim << " g" << inst++ << " (" << vname(out);
    for (const std::string& in : ins) os << ", " << vname(in);
    os << ");\n";
  };
  for (const Gate& g : gates_) {
    std::vector<std::string> ins;
    for (VarId in : g.inputs) ins.push_back(vars_.name(in));
    const std::string out = vars_.name(g.output);
    switch (g.type) {
      case GateType::CONST0:
      case GateType::CONST1:
        os << "  buf g" << inst++ << " (" << vname(out) << ", 1'b"
           << (g.type == GateType::CONST1 ? '1' : '0') << ");\n";
        break;
      case GateType::AOI21:
      case GateType::OAI21: {
        // AOI21(a,b,c) = not(or(and(a,b),c)); OAI21(a,b,c) = not(and(or(a,b),c))
        std::string t0 = out + "$x" + std::to_string(aux++);
        std::string t1 = out + "$x" + std::to_string(aux++);
        os << "  wire " << vname(t0) << ";\n  wire " << vname(t1) << ";\n";
        bool aoi = g.type == GateType::AOI21;
        emit(aoi ? "and" : "or", t0, {ins[0], ins[1]});
        emit(aoi ? "or" : "and", t1, {t0, ins[2]});
        emit("not", out, {t1});
        break;
      }
      default:
        emit(primitive_name(g.type), out, ins);
        break;
    }
  }
  os << "endmodule\n";
  return os.str();
}

}  // namespace gfrev
