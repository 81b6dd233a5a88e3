#ifndef REALWORD_BSS_HPP_
#define REALWORD_BSS_HPP_

// Blum-Shub-Smale machines over Q.
//
// Assembly, one instruction per line, labels 1..N in order:
//
//   <n>: set r<t> <p/q>
//   <n>: add|sub|mul|div r<t> r<a> r<b>
//   <n>: copy                  regs[i] <- regs[j]
//   <n>: brgeq <m>             if r0 >= 0 goto m else goto n + 1
//   <n>: halt                  only as instruction N
//
// Any instruction may end with copy-register updates "i++", "i=0", "j++",
// "j=0", applied after the instruction. '#' starts a comment.

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rat.hpp"

namespace realword {

  using Reg = std::size_t;

  enum class CopyCtl { unchanged, increment, reset };

  struct Instruction {
    enum class Kind { compute, assign, branch, copy, halt };

    Index label = 0;
    Kind kind = Kind::halt;
    ArithOp op = ArithOp::add;
    Reg target = 0, a = 0, b = 0;
    Rat constant;
    Index jump = 0;
    CopyCtl ci = CopyCtl::unchanged, cj = CopyCtl::unchanged;

    std::string str() const;
  };

  class BssProgram {
   public:
    BssProgram() = default;
    //! Raises ParseError unless labels are 1..N and instruction N is halt.
    explicit BssProgram(std::vector<Instruction> instrs) : _instrs(std::move(instrs)) {
      validate();
    }

    static BssProgram parse(std::string const& text);

    Index size() const {
      return _instrs.size();
    }
    Instruction const& at(Index label) const {
      if (label < 1 || label > _instrs.size()) {
        throw IndexError("no instruction labelled " + std::to_string(label));
      }
      return _instrs[label - 1];
    }
    std::vector<Instruction> const& instructions() const {
      return _instrs;
    }

    std::set<Rat> constants() const {
      std::set<Rat> out;
      for (auto const& in : _instrs) {
        if (in.kind == Instruction::Kind::assign) {
          out.insert(in.constant);
        }
      }
      return out;
    }

    //! Largest register index mentioned (0 when none).
    Reg max_register() const {
      Reg m = 0;
      for (auto const& in : _instrs) {
        if (in.kind == Instruction::Kind::compute) {
          m = std::max({m, in.target, in.a, in.b});
        } else if (in.kind == Instruction::Kind::assign) {
          m = std::max(m, in.target);
        }
      }
      return m;
    }

    bool uses(ArithOp op) const {
      for (auto const& in : _instrs) {
        if (in.kind == Instruction::Kind::compute && in.op == op) {
          return true;
        }
      }
      return false;
    }

    std::string str() const {
      std::string out;
      for (auto const& in : _instrs) {
        out += in.str() + "\n";
      }
      return out;
    }

    friend bool operator==(BssProgram const& x, BssProgram const& y) {
      return x.str() == y.str();
    }

   private:
    void validate() const {
      if (_instrs.empty()) {
        throw ParseError("program has no instructions");
      }
      for (std::size_t k = 0; k < _instrs.size(); ++k) {
        auto const& in = _instrs[k];
        if (in.label != k + 1) {
          throw ParseError("labels must be 1..N in order; found " + std::to_string(in.label)
                           + " at position " + std::to_string(k + 1));
        }
        if (in.kind == Instruction::Kind::branch
            && (in.jump < 1 || in.jump > _instrs.size())) {
          throw ParseError("branch target " + std::to_string(in.jump) + " out of range");
        }
        bool last = k + 1 == _instrs.size();
        if ((in.kind == Instruction::Kind::halt) != last) {
          throw ParseError("halt must be exactly the last instruction");
        }
      }
    }

    std::vector<Instruction> _instrs;
  };

  namespace detail {
    inline char const* op_name(ArithOp op) {
      switch (op) {
        case ArithOp::add:
          return "add";
        case ArithOp::sub:
          return "sub";
        case ArithOp::mul:
          return "mul";
        case ArithOp::div:
          return "div";
      }
      return "?";
    }

    inline Reg parse_reg(std::string const& tok, std::size_t line) {
      if (tok.size() < 2 || tok[0] != 'r'
          || tok.find_first_not_of("0123456789", 1) != std::string::npos) {
        throw ParseError("line " + std::to_string(line) + ": expected register, got '"
                         + tok + "'");
      }
      return std::stoull(tok.substr(1));
    }
  }  // namespace detail

  inline std::string Instruction::str() const {
    std::string out = std::to_string(label) + ": ";
    auto r = [](Reg x) { return "r" + std::to_string(x); };
    switch (kind) {
      case Kind::compute:
        out += std::string(detail::op_name(op)) + " " + r(target) + " " + r(a) + " " + r(b);
        break;
      case Kind::assign:
        out += "set " + r(target) + " " + constant.str();
        break;
      case Kind::branch:
        out += "brgeq " + std::to_string(jump);
        break;
      case Kind::copy:
        out += "copy";
        break;
      case Kind::halt:
        out += "halt";
        break;
    }
    if (ci == CopyCtl::increment) {
      out += " i++";
    } else if (ci == CopyCtl::reset) {
      out += " i=0";
    }
    if (cj == CopyCtl::increment) {
      out += " j++";
    } else if (cj == CopyCtl::reset) {
      out += " j=0";
    }
    return out;
  }

  inline BssProgram BssProgram::parse(std::string const& text) {
    std::vector<Instruction> out;
    std::istringstream in(text);
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
      ++line;
      if (auto h = raw.find('#'); h != std::string::npos) {
        raw.erase(h);
      }
      std::istringstream ls(raw);
      std::vector<std::string> toks;
      for (std::string t; ls >> t;) {
        toks.push_back(t);
      }
      if (toks.empty()) {
        continue;
      }
      auto where = [&] { return "line " + std::to_string(line) + ": "; };
      if (toks[0].back() != ':') {
        throw ParseError(where() + "expected '<label>:'");
      }
      Instruction ins;
      try {
        ins.label = std::stoull(toks[0].substr(0, toks[0].size() - 1));
      } catch (std::exception const&) {
        throw ParseError(where() + "bad label '" + toks[0] + "'");
      }
      if (toks.size() < 2) {
        throw ParseError(where() + "missing opcode");
      }
      // trailing copy-register updates
      while (toks.size() > 2) {
        auto const& t = toks.back();
        if (t == "i++") {
          ins.ci = CopyCtl::increment;
        } else if (t == "i=0") {
          ins.ci = CopyCtl::reset;
        } else if (t == "j++") {
          ins.cj = CopyCtl::increment;
        } else if (t == "j=0") {
          ins.cj = CopyCtl::reset;
        } else {
          break;
        }
        toks.pop_back();
      }
      auto const& opc = toks[1];
      auto need = [&](std::size_t n) {
        if (toks.size() != n) {
          throw ParseError(where() + "'" + opc + "' takes " + std::to_string(n - 2)
                           + " operands");
        }
      };
      if (opc == "set") {
        need(4);
        ins.kind = Instruction::Kind::assign;
        ins.target = detail::parse_reg(toks[2], line);
        ins.constant = Rat::parse(toks[3]);
      } else if (opc == "add" || opc == "sub" || opc == "mul" || opc == "div") {
        need(5);
        ins.kind = Instruction::Kind::compute;
        ins.op = opc == "add"   ? ArithOp::add
                 : opc == "sub" ? ArithOp::sub
                 : opc == "mul" ? ArithOp::mul
                                : ArithOp::div;
        ins.target = detail::parse_reg(toks[2], line);
        ins.a = detail::parse_reg(toks[3], line);
        ins.b = detail::parse_reg(toks[4], line);
      } else if (opc == "copy") {
        need(2);
        ins.kind = Instruction::Kind::copy;
      } else if (opc == "brgeq") {
        need(3);
        ins.kind = Instruction::Kind::branch;
        try {
          ins.jump = std::stoull(toks[2]);
        } catch (std::exception const&) {
          throw ParseError(where() + "bad branch target '" + toks[2] + "'");
        }
      } else if (opc == "halt") {
        need(2);
        ins.kind = Instruction::Kind::halt;
      } else {
        throw ParseError(where() + "unknown opcode '" + opc + "'");
      }
      out.push_back(std::move(ins));
    }
    return BssProgram(std::move(out));
  }

  //! (n, i, j, registers); registers not in the map read 0.
  struct Configuration {
    Index n = 1;
    Index i = 1, j = 1;
    std::map<Reg, Rat> regs;

    Rat reg(Reg k) const {
      auto it = regs.find(k);
      return it == regs.end() ? Rat(0) : it->second;
    }
    void set(Reg k, Rat v) {
      regs[k] = std::move(v);
    }

    friend bool operator==(Configuration const&, Configuration const&) = default;
  };

  //! (1, 1, 1, x): input entries in registers r0 .. r(d-1).
  inline Configuration initial_configuration(RatVec const& input) {
    Configuration c;
    for (std::size_t k = 0; k < input.dim(); ++k) {
      c.set(k, input[k]);
    }
    return c;
  }

  namespace detail {
    inline void apply_copy_ctl(Configuration& c, Instruction const& in) {
      if (in.ci == CopyCtl::increment) {
        ++c.i;
      } else if (in.ci == CopyCtl::reset) {
        c.i = 0;
      }
      if (in.cj == CopyCtl::increment) {
        ++c.j;
      } else if (in.cj == CopyCtl::reset) {
        c.j = 0;
      }
    }
  }  // namespace detail

  //! Executes one non-halt instruction; raises DivisionByZero.
  inline Configuration execute(Instruction const& in, Configuration c) {
    using K = Instruction::Kind;
    switch (in.kind) {
      case K::compute:
        c.set(in.target, rat_op(in.op, c.reg(in.a), c.reg(in.b)));
        c.n = in.label + 1;
        break;
      case K::assign:
        c.set(in.target, in.constant);
        c.n = in.label + 1;
        break;
      case K::copy:
        c.set(c.i, c.reg(c.j));
        c.n = in.label + 1;
        break;
      case K::branch:
        c.n = c.reg(0).sign() >= 0 ? in.jump : in.label + 1;
        break;
      case K::halt:
        return c;
    }
    detail::apply_copy_ctl(c, in);
    return c;
  }

  struct StepResult {
    enum class Kind { next, halted, division_by_zero };
    Kind kind = Kind::next;
    Configuration config;
  };

  inline StepResult step(BssProgram const& p, Configuration const& c) {
    if (c.n == p.size()) {
      return {StepResult::Kind::halted, c};
    }
    try {
      return {StepResult::Kind::next, execute(p.at(c.n), c)};
    } catch (DivisionByZero const&) {
      return {StepResult::Kind::division_by_zero, c};
    }
  }

  struct TraceEntry {
    Configuration before;
    Instruction instruction;
    //! For branches: whether the jump was taken.
    std::optional<bool> taken;
  };

  struct Trace {
    std::vector<TraceEntry> entries;
    Configuration final;
  };

  struct RunResult {
    enum class Kind { halted, out_of_fuel, division_by_zero };
    Kind kind = Kind::out_of_fuel;
    RatVec output;
    Trace trace;
    Index steps = 0;

    bool halted() const {
      return kind == Kind::halted;
    }
  };

  //! Iterates step at most fuel times from (1, 1, 1, input). The output is
  //! the register file r0 .. r(max written).
  inline RunResult run(BssProgram const& p, RatVec const& input, Index fuel,
                       bool keep_trace = true) {
    RunResult res;
    Configuration c = initial_configuration(input);
    for (; res.steps < fuel; ++res.steps) {
      if (c.n == p.size()) {
        ++res.steps;
        res.kind = RunResult::Kind::halted;
        Reg top = c.regs.empty() ? 0 : c.regs.rbegin()->first + 1;
        for (Reg k = 0; k < top; ++k) {
          res.output.push_back(c.reg(k));
        }
        break;
      }
      Instruction const& in = p.at(c.n);
      auto s = step(p, c);
      if (s.kind == StepResult::Kind::division_by_zero) {
        res.kind = RunResult::Kind::division_by_zero;
        break;
      }
      if (keep_trace) {
        std::optional<bool> taken;
        if (in.kind == Instruction::Kind::branch) {
          taken = c.reg(0).sign() >= 0;
        }
        res.trace.entries.push_back({c, in, taken});
      }
      c = std::move(s.config);
    }
    res.trace.final = c;
    return res;
  }

}  // namespace realword

#endif  // REALWORD_BSS_HPP_
