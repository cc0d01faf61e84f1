// Copyright 2026 The eprroute Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// OpenQASM 2.0 reader/writer for the gate set h,x,y,z,s,sdg,t,tdg,rx,ry,rz,
// u1,u2,u3,cx plus measure, reset, barrier and single-bit `if` conditionals.
// `gate` definitions and includes other than qelib1.inc are rejected.

#ifndef EPRROUTE_QASM_HPP
#define EPRROUTE_QASM_HPP

#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "eprroute/circuit.hpp"

namespace eprroute {

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int col)
      : Error(msg + " at line " + std::to_string(line) + ", column " +
              std::to_string(col)),
        line(line),
        col(col) {}
  int line;
  int col;
};

namespace qasm_detail {

struct Token {
  enum Type { Ident, Number, Str, Sym, End } type = End;
  std::string text;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_ws();
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_.type = Token::End;
      tok_.text.clear();
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_'))
        s += take();
      tok_.type = Token::Ident;
      tok_.text = std::move(s);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::string s;
      while (pos_ < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '.'))
        s += take();
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        s += take();
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-'))
          s += take();
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_])))
          s += take();
      }
      tok_.type = Token::Number;
      tok_.text = std::move(s);
      return;
    }
    if (c == '"') {
      take();
      std::string s;
      while (pos_ < src_.size() && src_[pos_] != '"') s += take();
      if (pos_ >= src_.size())
        throw ParseError("unterminated string", tok_.line, tok_.col);
      take();
      tok_.type = Token::Str;
      tok_.text = std::move(s);
      return;
    }
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      take();
      take();
      tok_.type = Token::Sym;
      tok_.text = "->";
      return;
    }
    if (c == '=' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
      take();
      take();
      tok_.type = Token::Sym;
      tok_.text = "==";
      return;
    }
    tok_.type = Token::Sym;
    tok_.text = std::string(1, take());
  }

  void skip_ws() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') take();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else {
        break;
      }
    }
  }

  char take() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

struct Reg {
  int offset = 0;
  int size = 0;
};

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) {}

  Circuit parse() {
    expect_ident("OPENQASM");
    Token v = expect(Token::Number);
    if (v.text != "2.0")
      throw ParseError("unsupported OpenQASM version " + v.text, v.line,
                       v.col);
    expect_sym(";");
    while (lex_.peek().type != Token::End) statement();
    return std::move(circuit_);
  }

 private:
  void statement() {
    Token t = lex_.peek();
    if (t.type != Token::Ident)
      throw ParseError("expected statement", t.line, t.col);
    if (t.text == "include") {
      lex_.next();
      Token f = expect(Token::Str);
      if (f.text != "qelib1.inc")
        throw ParseError("unsupported include \"" + f.text + "\"", f.line,
                         f.col);
      expect_sym(";");
    } else if (t.text == "qreg" || t.text == "creg") {
      declare(lex_.next().text == "qreg");
    } else if (t.text == "gate" || t.text == "opaque") {
      throw ParseError("gate definitions are not supported", t.line, t.col);
    } else if (t.text == "measure") {
      lex_.next();
      measure();
    } else if (t.text == "reset") {
      lex_.next();
      auto qs = qubit_arg();
      expect_sym(";");
      for (int q : qs) circuit_.add(make_gate(GateKind::Reset, {q}));
    } else if (t.text == "barrier") {
      lex_.next();
      std::vector<int> qs;
      while (true) {
        for (int q : qubit_arg()) qs.push_back(q);
        if (lex_.peek().type == Token::Sym && lex_.peek().text == ",")
          lex_.next();
        else
          break;
      }
      expect_sym(";");
      Gate g;
      g.kind = GateKind::Barrier;
      g.qubits = std::move(qs);
      circuit_.add(std::move(g));
    } else if (t.text == "if") {
      conditional();
    } else {
      gate_application(std::nullopt);
    }
  }

  void declare(bool quantum) {
    Token name = expect(Token::Ident);
    expect_sym("[");
    int size = int_token();
    expect_sym("]");
    expect_sym(";");
    if (size <= 0)
      throw ParseError("register size must be positive", name.line, name.col);
    auto& regs = quantum ? qregs_ : cregs_;
    if (regs.count(name.text) || (quantum ? cregs_ : qregs_).count(name.text))
      throw ParseError("duplicate register '" + name.text + "'", name.line,
                       name.col);
    int& total = quantum ? circuit_.n_qubits : circuit_.n_clbits;
    regs[name.text] = {total, size};
    total += size;
  }

  void conditional() {
    Token kw = lex_.next();  // if
    expect_sym("(");
    Token reg = expect(Token::Ident);
    auto it = cregs_.find(reg.text);
    if (it == cregs_.end())
      throw ParseError("undeclared register '" + reg.text + "'", reg.line,
                       reg.col);
    if (it->second.size != 1)
      throw ParseError("conditions require a 1-bit register", reg.line,
                       reg.col);
    expect_sym("==");
    Token val = expect(Token::Number);
    int v = std::stoi(val.text);
    if (v != 0 && v != 1)
      throw ParseError("condition value must be 0 or 1", val.line, val.col);
    expect_sym(")");
    Token body = lex_.peek();
    if (body.type != Token::Ident || (body.text != "x" && body.text != "z"))
      throw ParseError("conditioned gate must be x or z", body.line, body.col);
    gate_application(Condition{it->second.offset, v});
    (void)kw;
  }

  void gate_application(std::optional<Condition> cond) {
    Token name = expect(Token::Ident);
    GateKind kind = lookup_gate(name);
    std::vector<double> params;
    if (lex_.peek().type == Token::Sym && lex_.peek().text == "(") {
      lex_.next();
      while (true) {
        params.push_back(expression());
        if (lex_.peek().type == Token::Sym && lex_.peek().text == ",")
          lex_.next();
        else
          break;
      }
      expect_sym(")");
    }
    if (static_cast<int>(params.size()) != param_count(kind))
      throw ParseError("gate '" + name.text + "' expects " +
                           std::to_string(param_count(kind)) + " parameter(s)",
                       name.line, name.col);
    std::vector<std::vector<int>> args;
    while (true) {
      args.push_back(qubit_arg());
      if (lex_.peek().type == Token::Sym && lex_.peek().text == ",")
        lex_.next();
      else
        break;
    }
    expect_sym(";");
    const int arity = is_two_qubit(kind) ? 2 : 1;
    if (static_cast<int>(args.size()) != arity)
      throw ParseError("gate '" + name.text + "' expects " +
                           std::to_string(arity) + " qubit argument(s)",
                       name.line, name.col);
    // QASM broadcast: register-valued arguments must agree in size.
    std::size_t width = 1;
    for (const auto& a : args)
      if (a.size() > 1) {
        if (width != 1 && a.size() != width)
          throw ParseError("mismatched register sizes in broadcast", name.line,
                           name.col);
        width = a.size();
      }
    for (std::size_t i = 0; i < width; ++i) {
      Gate g;
      g.kind = kind;
      g.params = params;
      g.condition = cond;
      for (const auto& a : args) g.qubits.push_back(a.size() == 1 ? a[0] : a[i]);
      if (g.qubits.size() == 2 && g.qubits[0] == g.qubits[1])
        throw ParseError("duplicate qubit argument", name.line, name.col);
      circuit_.add(std::move(g));
    }
  }

  void measure() {
    Token at = lex_.peek();
    auto qs = qubit_arg();
    expect_sym("->");
    auto cs = clbit_arg();
    expect_sym(";");
    if (qs.size() != cs.size())
      throw ParseError("measure operands differ in size", at.line, at.col);
    for (std::size_t i = 0; i < qs.size(); ++i)
      circuit_.add(make_measure(qs[i], cs[i]));
  }

  std::vector<int> indexed_arg(const std::map<std::string, Reg>& regs,
                               const char* what) {
    Token name = expect(Token::Ident);
    auto it = regs.find(name.text);
    if (it == regs.end())
      throw ParseError(std::string("undeclared ") + what + " register '" +
                           name.text + "'",
                       name.line, name.col);
    if (lex_.peek().type == Token::Sym && lex_.peek().text == "[") {
      lex_.next();
      Token idx = expect(Token::Number);
      int i = std::stoi(idx.text);
      expect_sym("]");
      if (i < 0 || i >= it->second.size)
        throw ParseError("index " + std::to_string(i) + " out of range for '" +
                             name.text + "'",
                         idx.line, idx.col);
      return {it->second.offset + i};
    }
    std::vector<int> all(it->second.size);
    for (int i = 0; i < it->second.size; ++i) all[i] = it->second.offset + i;
    return all;
  }

  std::vector<int> qubit_arg() { return indexed_arg(qregs_, "quantum"); }
  std::vector<int> clbit_arg() { return indexed_arg(cregs_, "classical"); }

  GateKind lookup_gate(const Token& name) {
    static const std::map<std::string, GateKind> table = {
        {"x", GateKind::X},     {"y", GateKind::Y},     {"z", GateKind::Z},
        {"h", GateKind::H},     {"s", GateKind::S},     {"sdg", GateKind::Sdg},
        {"t", GateKind::T},     {"tdg", GateKind::Tdg}, {"rx", GateKind::Rx},
        {"ry", GateKind::Ry},   {"rz", GateKind::Rz},   {"u1", GateKind::U1},
        {"u2", GateKind::U2},   {"u3", GateKind::U3},   {"cx", GateKind::CX},
    };
    auto it = table.find(name.text);
    if (it == table.end())
      throw ParseError("unsupported gate '" + name.text + "'", name.line,
                       name.col);
    return it->second;
  }

  // expr := term (('+'|'-') term)*
  double expression() {
    double v = term();
    while (lex_.peek().type == Token::Sym &&
           (lex_.peek().text == "+" || lex_.peek().text == "-")) {
      std::string op = lex_.next().text;
      double r = term();
      v = op == "+" ? v + r : v - r;
    }
    return v;
  }

  double term() {
    double v = factor();
    while (lex_.peek().type == Token::Sym &&
           (lex_.peek().text == "*" || lex_.peek().text == "/")) {
      Token op = lex_.next();
      double r = factor();
      if (op.text == "/") {
        if (r == 0.0) throw ParseError("division by zero", op.line, op.col);
        v /= r;
      } else {
        v *= r;
      }
    }
    return v;
  }

  double factor() {
    Token t = lex_.peek();
    if (t.type == Token::Sym && t.text == "-") {
      lex_.next();
      return -factor();
    }
    if (t.type == Token::Sym && t.text == "(") {
      lex_.next();
      double v = expression();
      expect_sym(")");
      return v;
    }
    if (t.type == Token::Ident && t.text == "pi") {
      lex_.next();
      return M_PI;
    }
    if (t.type == Token::Number) {
      lex_.next();
      return std::stod(t.text);
    }
    throw ParseError("malformed expression", t.line, t.col);
  }

  int int_token() {
    Token t = expect(Token::Number);
    if (t.text.find('.') != std::string::npos)
      throw ParseError("expected integer", t.line, t.col);
    return std::stoi(t.text);
  }

  Token expect(Token::Type type) {
    Token t = lex_.next();
    if (t.type != type)
      throw ParseError("unexpected token '" + t.text + "'", t.line, t.col);
    return t;
  }

  void expect_sym(const std::string& s) {
    Token t = lex_.next();
    if (t.type != Token::Sym || t.text != s)
      throw ParseError("expected '" + s + "', got '" + t.text + "'", t.line,
                       t.col);
  }

  void expect_ident(const std::string& s) {
    Token t = lex_.next();
    if (t.type != Token::Ident || t.text != s)
      throw ParseError("expected '" + s + "'", t.line, t.col);
  }

  Lexer lex_;
  Circuit circuit_;
  std::map<std::string, Reg> qregs_;
  std::map<std::string, Reg> cregs_;
};

inline std::string format_angle(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace qasm_detail

inline Circuit parse_qasm(const std::string& text,
                          const std::string& name = "") {
  qasm_detail::Parser p(text);
  Circuit c = p.parse();
  c.name = name;
  validate(c);
  return c;
}

/// Emits OpenQASM 2.0. Classical bits measured inside remote blocks become
/// per-block 1-bit registers rcx<k>a / rcx<k>b (1-bit so the feed-forward
/// conditions stay expressible); other clbits become meas registers, split
/// into contiguous runs. Any other condition-source clbit gets its own 1-bit
/// register. REMOTE_CX must be expanded before emission.
inline std::string emit_qasm(const Circuit& c,
                             const std::vector<std::string>& header_comments =
                                 {}) {
  validate(c);
  for (const Gate& g : c.gates)
    if (g.kind == GateKind::RemoteCX)
      throw Error("composite gate not emittable: expand remote_cx first");

  // Classify every clbit: block-owned, condition-source, or plain.
  // clbit -> register name and offset within it.
  std::vector<std::string> reg_of(c.n_clbits);
  std::vector<int> off_of(c.n_clbits, 0);
  std::map<int, std::vector<int>> block_bits;  // block_id -> measured clbits
  std::vector<bool> cond_source(c.n_clbits, false);
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::Measure && g.provenance == Provenance::RemoteBlock)
      block_bits[g.block_id.value_or(-1)].push_back(g.clbits[0]);
    if (g.condition) cond_source[g.condition->clbit] = true;
  }
  std::vector<bool> is_block_bit(c.n_clbits, false);
  for (auto& [id, bits] : block_bits) {
    std::sort(bits.begin(), bits.end());
    bits.erase(std::unique(bits.begin(), bits.end()), bits.end());
    if (bits.size() != 2)
      throw Error("remote block " + std::to_string(id) +
                  " does not measure exactly 2 clbits");
    is_block_bit[bits[0]] = is_block_bit[bits[1]] = true;
    reg_of[bits[0]] = "rcx" + std::to_string(id) + "a";
    reg_of[bits[1]] = "rcx" + std::to_string(id) + "b";
  }
  // Registers in ascending flattened-index order so re-parsing reproduces the
  // same index space.
  struct Decl {
    std::string name;
    int size;
  };
  std::vector<Decl> decls;
  int meas_runs = 0;
  for (int b = 0; b < c.n_clbits;) {
    if (is_block_bit[b]) {
      decls.push_back({reg_of[b], 1});
      ++b;
    } else if (cond_source[b]) {
      reg_of[b] = "c" + std::to_string(b);
      decls.push_back({reg_of[b], 1});
      ++b;
    } else {
      int e = b;
      while (e < c.n_clbits && !is_block_bit[e] && !cond_source[e]) ++e;
      std::string name = meas_runs == 0 ? "meas" : "meas" + std::to_string(meas_runs);
      ++meas_runs;
      for (int i = b; i < e; ++i) {
        reg_of[i] = name;
        off_of[i] = i - b;
      }
      decls.push_back({name, e - b});
      b = e;
    }
  }
  // A second plain run forces numbered names throughout.
  if (meas_runs > 1)
    for (auto& d : decls)
      if (d.name == "meas") {
        d.name = "meas0";
        for (int i = 0; i < c.n_clbits; ++i)
          if (reg_of[i] == "meas") reg_of[i] = "meas0";
        break;
      }

  std::ostringstream out;
  for (const auto& line : header_comments) out << "// " << line << "\n";
  out << "OPENQASM 2.0;\n";
  out << "include \"qelib1.inc\";\n";
  if (c.n_qubits > 0) out << "qreg q[" << c.n_qubits << "];\n";
  for (const auto& d : decls)
    out << "creg " << d.name << "[" << d.size << "];\n";
  auto qref = [](int q) { return "q[" + std::to_string(q) + "]"; };
  for (const Gate& g : c.gates) {
    if (g.condition) {
      int cb = g.condition->clbit;
      out << "if(" << reg_of[cb] << "==" << g.condition->value << ") ";
    }
    switch (g.kind) {
      case GateKind::Measure:
        out << "measure " << qref(g.qubits[0]) << " -> " << reg_of[g.clbits[0]]
            << "[" << off_of[g.clbits[0]] << "];\n";
        break;
      case GateKind::Reset:
        out << "reset " << qref(g.qubits[0]) << ";\n";
        break;
      case GateKind::Barrier: {
        out << "barrier ";
        for (std::size_t i = 0; i < g.qubits.size(); ++i)
          out << (i ? "," : "") << qref(g.qubits[i]);
        out << ";\n";
        break;
      }
      default: {
        out << gate_name(g.kind);
        if (!g.params.empty()) {
          out << "(";
          for (std::size_t i = 0; i < g.params.size(); ++i)
            out << (i ? "," : "") << qasm_detail::format_angle(g.params[i]);
          out << ")";
        }
        out << " ";
        for (std::size_t i = 0; i < g.qubits.size(); ++i)
          out << (i ? "," : "") << qref(g.qubits[i]);
        out << ";\n";
        break;
      }
    }
  }
  return out.str();
}

}  // namespace eprroute

#endif  // EPRROUTE_QASM_HPP
