#ifndef REALWORD_PATH_HPP_
#define REALWORD_PATH_HPP_

// Computation paths: the branch-resolved, single-assignment straight-line
// programs a machine follows on the inputs of one branch class.
//
// Indices are 1-based; 1..d are the inputs and every value-producing op
// assigns the next index. A register that is read before being written
// contributes Assign(k, 0), its initial content.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bss.hpp"
#include "enumerate.hpp"

namespace realword {

  struct PathOp {
    enum class Kind { assign, copy, add, neg, mul, inv, guard_geq, guard_lt };

    Kind kind = Kind::assign;
    std::size_t i = 0, j = 0, k = 0;
    Rat alpha;

    bool is_guard() const {
      return kind == Kind::guard_geq || kind == Kind::guard_lt;
    }

    static PathOp assign(std::size_t i, Rat a) {
      return {Kind::assign, i, 0, 0, std::move(a)};
    }
    static PathOp copy(std::size_t i, std::size_t j) {
      return {Kind::copy, i, j, 0, {}};
    }
    static PathOp add(std::size_t i, std::size_t j, std::size_t k) {
      return {Kind::add, i, j, k, {}};
    }
    static PathOp neg(std::size_t i, std::size_t j) {
      return {Kind::neg, i, j, 0, {}};
    }
    static PathOp mul(std::size_t i, std::size_t j, std::size_t k) {
      return {Kind::mul, i, j, k, {}};
    }
    static PathOp inv(std::size_t i, std::size_t j) {
      return {Kind::inv, i, j, 0, {}};
    }
    static PathOp guard_geq(std::size_t j) {
      return {Kind::guard_geq, 0, j, 0, {}};
    }
    static PathOp guard_lt(std::size_t j) {
      return {Kind::guard_lt, 0, j, 0, {}};
    }

    std::string str() const {
      auto r = [](std::size_t x) { return "r" + std::to_string(x); };
      switch (kind) {
        case Kind::assign:
          return r(i) + " <- " + alpha.str();
        case Kind::copy:
          return r(i) + " <- " + r(j);
        case Kind::add:
          return r(i) + " <- " + r(j) + " + " + r(k);
        case Kind::neg:
          return r(i) + " <- -" + r(j);
        case Kind::mul:
          return r(i) + " <- " + r(j) + " * " + r(k);
        case Kind::inv:
          return r(i) + " <- 1/" + r(j);
        case Kind::guard_geq:
          return r(j) + " >= 0";
        case Kind::guard_lt:
          return r(j) + " < 0";
      }
      return "?";
    }

    friend bool operator==(PathOp const&, PathOp const&) = default;
  };

  struct Path {
    std::size_t d = 0;
    std::size_t D = 0;
    std::vector<PathOp> ops;

    //! Guard outcomes in order: true for >=, false for <.
    std::vector<bool> guard_string() const {
      std::vector<bool> out;
      for (auto const& o : ops) {
        if (o.is_guard()) {
          out.push_back(o.kind == PathOp::Kind::guard_geq);
        }
      }
      return out;
    }

    //! Raises IndexError unless every index is assigned exactly once, in
    //! order, after its operands.
    void validate() const {
      std::size_t next = d + 1;
      auto operand = [&](std::size_t x) {
        if (x < 1 || x >= next) {
          throw IndexError("path operand r" + std::to_string(x) + " not yet assigned");
        }
      };
      for (auto const& o : ops) {
        switch (o.kind) {
          case PathOp::Kind::guard_geq:
          case PathOp::Kind::guard_lt:
            operand(o.j);
            continue;
          case PathOp::Kind::assign:
            break;
          case PathOp::Kind::copy:
          case PathOp::Kind::neg:
          case PathOp::Kind::inv:
            operand(o.j);
            break;
          case PathOp::Kind::add:
          case PathOp::Kind::mul:
            operand(o.j);
            operand(o.k);
            break;
        }
        if (o.i != next) {
          throw IndexError("path assigns r" + std::to_string(o.i) + ", expected r"
                           + std::to_string(next));
        }
        ++next;
      }
      if (next != D + 1) {
        throw IndexError("path D does not match its assignments");
      }
    }

    std::string str() const {
      std::string out = "d=" + std::to_string(d) + " D=" + std::to_string(D) + " [";
      for (std::size_t k = 0; k < ops.size(); ++k) {
        out += (k ? "; " : "") + ops[k].str();
      }
      return out + "]";
    }

    friend bool operator==(Path const&, Path const&) = default;
  };

  //! r_1..r_D over input when input lies in A_gamma.
  inline std::optional<RatVec> path_extend(Path const& path, RatVec const& input) {
    if (input.dim() != path.d) {
      throw ArityMismatch("path expects " + std::to_string(path.d) + " inputs, got "
                          + std::to_string(input.dim()));
    }
    std::vector<Rat> r(path.D + 1);
    for (std::size_t k = 0; k < path.d; ++k) {
      r[k + 1] = input[k];
    }
    for (auto const& o : path.ops) {
      switch (o.kind) {
        case PathOp::Kind::assign:
          r[o.i] = o.alpha;
          break;
        case PathOp::Kind::copy:
          r[o.i] = r[o.j];
          break;
        case PathOp::Kind::add:
          r[o.i] = r[o.j] + r[o.k];
          break;
        case PathOp::Kind::neg:
          r[o.i] = -r[o.j];
          break;
        case PathOp::Kind::mul:
          r[o.i] = r[o.j] * r[o.k];
          break;
        case PathOp::Kind::inv:
          if (r[o.j].is_zero()) {
            return std::nullopt;
          }
          r[o.i] = Rat(1) / r[o.j];
          break;
        case PathOp::Kind::guard_geq:
          if (r[o.j].sign() < 0) {
            return std::nullopt;
          }
          break;
        case PathOp::Kind::guard_lt:
          if (r[o.j].sign() >= 0) {
            return std::nullopt;
          }
          break;
      }
    }
    return RatVec(std::vector<Rat>(r.begin() + 1, r.end()));
  }

  inline bool path_membership(Path const& path, RatVec const& input) {
    return path_extend(path, input).has_value();
  }

  namespace detail {
    // Turns executed instructions into path ops.
    class PathBuilder {
     public:
      explicit PathBuilder(std::size_t d) {
        _path.d = d;
        _path.D = d;
        for (std::size_t k = 0; k < d; ++k) {
          _where[k] = k + 1;
        }
      }

      std::size_t read(Reg r) {
        auto it = _where.find(r);
        if (it != _where.end()) {
          return it->second;
        }
        std::size_t k = emit_value(PathOp::assign(0, Rat(0)));
        _where[r] = k;
        return k;
      }

      void exec(Instruction const& in, Index ci, Index cj, std::optional<bool> taken) {
        using K = Instruction::Kind;
        switch (in.kind) {
          case K::compute: {
            std::size_t a = read(in.a), b = read(in.b), out = 0;
            switch (in.op) {
              case ArithOp::add:
                out = emit_value(PathOp::add(0, a, b));
                break;
              case ArithOp::sub:
                out = emit_value(PathOp::add(0, a, emit_value(PathOp::neg(0, b))));
                break;
              case ArithOp::mul:
                out = emit_value(PathOp::mul(0, a, b));
                break;
              case ArithOp::div:
                out = emit_value(PathOp::mul(0, a, emit_value(PathOp::inv(0, b))));
                break;
            }
            _where[in.target] = out;
            break;
          }
          case K::assign:
            _where[in.target] = emit_value(PathOp::assign(0, in.constant));
            break;
          case K::copy:
            _where[ci] = emit_value(PathOp::copy(0, read(cj)));
            break;
          case K::branch: {
            std::size_t y = read(0);
            _path.ops.push_back(*taken ? PathOp::guard_geq(y) : PathOp::guard_lt(y));
            break;
          }
          case K::halt:
            break;
        }
      }

      Path const& path() const {
        return _path;
      }
      std::size_t index_of(Reg r) const {
        auto it = _where.find(r);
        return it == _where.end() ? 0 : it->second;
      }

     private:
      std::size_t emit_value(PathOp o) {
        std::size_t k = ++_path.D;
        o.i = k;
        _path.ops.push_back(std::move(o));
        return k;
      }

      Path _path;
      std::map<Reg, std::size_t> _where;
    };
  }  // namespace detail

  //! The path followed by a halting run on a d-dimensional input. Raises
  //! MalformedTrace when consecutive configurations are not related by the
  //! recorded instruction.
  inline Path extract_path(Trace const& trace, std::size_t d) {
    detail::PathBuilder b(d);
    auto const& es = trace.entries;
    if (!es.empty()) {
      auto const& c0 = es.front().before;
      if (c0.n != 1 || c0.i != 1 || c0.j != 1
          || (!c0.regs.empty() && c0.regs.rbegin()->first >= d)) {
        throw MalformedTrace("trace does not start in an initial configuration");
      }
    }
    for (std::size_t k = 0; k < es.size(); ++k) {
      auto const& e = es[k];
      if (e.before.n != e.instruction.label) {
        throw MalformedTrace("entry " + std::to_string(k) + " executes label "
                             + std::to_string(e.instruction.label) + " at label "
                             + std::to_string(e.before.n));
      }
      if (e.instruction.kind == Instruction::Kind::halt) {
        throw MalformedTrace("halt inside a trace");
      }
      bool is_branch = e.instruction.kind == Instruction::Kind::branch;
      if (is_branch != e.taken.has_value()
          || (is_branch && *e.taken != (e.before.reg(0).sign() >= 0))) {
        throw MalformedTrace("branch outcome of entry " + std::to_string(k)
                             + " is inconsistent");
      }
      Configuration next;
      try {
        next = execute(e.instruction, e.before);
      } catch (DivisionByZero const&) {
        throw MalformedTrace("entry " + std::to_string(k) + " divides by zero");
      }
      auto const& expect = k + 1 < es.size() ? es[k + 1].before : trace.final;
      if (!(next == expect)) {
        throw MalformedTrace("entry " + std::to_string(k) + " is not followed by its successor");
      }
      b.exec(e.instruction, e.before.i, e.before.j, e.taken);
    }
    return b.path();
  }

  //! k + 1 in binary without its leading 1; true means the jump is taken.
  inline std::vector<bool> branch_string(Index k) {
    std::vector<bool> out;
    unsigned __int128 x = static_cast<unsigned __int128>(k) + 1;
    int top = 127;
    while (!((x >> top) & 1)) {
      --top;
    }
    for (int b = top - 1; b >= 0; --b) {
      out.push_back((x >> b) & 1);
    }
    return out;
  }

  inline std::optional<Index> branch_string_index(std::vector<bool> const& bits) {
    if (bits.size() >= 64) {
      return std::nullopt;
    }
    Index x = 1;
    for (bool b : bits) {
      x = 2 * x + (b ? 1 : 0);
    }
    return x - 1;
  }

  //! The enumeration index of the candidate (d, branch string, steps).
  inline std::optional<Index> path_index(std::size_t d, std::vector<bool> const& bits,
                                         Index steps) {
    auto k = branch_string_index(bits);
    if (!k) {
      return std::nullopt;
    }
    return pair_tuple({static_cast<Index>(d), *k, steps});
  }

  //! Candidate n = (d, k, f): run the program symbolically on d inputs with
  //! branch outcomes forced by branch_string(k). Returns the path when the
  //! machine reaches halt after exactly f steps having used every outcome.
  inline std::optional<Path> enumerate_paths(BssProgram const& p, Index n) {
    auto t = unpair_tuple(n, 3);
    std::size_t d = t[0];
    auto bits = branch_string(t[1]);
    Index f = t[2];
    detail::PathBuilder b(d);
    Index label = 1, ci = 1, cj = 1;
    std::size_t used = 0;
    for (Index s = 0; s < f; ++s) {
      if (label == p.size()) {
        return std::nullopt;
      }
      auto const& in = p.at(label);
      std::optional<bool> taken;
      if (in.kind == Instruction::Kind::branch) {
        if (used == bits.size()) {
          return std::nullopt;
        }
        taken = bits[used++];
      }
      b.exec(in, ci, cj, taken);
      label = in.kind == Instruction::Kind::branch && *taken ? in.jump : label + 1;
      Configuration c;
      c.i = ci;
      c.j = cj;
      detail::apply_copy_ctl(c, in);
      ci = c.i;
      cj = c.j;
    }
    if (label != p.size() || used != bits.size()) {
      return std::nullopt;
    }
    return b.path();
  }

  struct PathWitness {
    Index n = 0;
    Path path;
  };

  //! Depth-first search over path prefixes for a path gamma with input in
  //! A_gamma: at each branch both outcomes are tried and a prefix is cut as
  //! soon as its last guard fails on the input. fuel counts steps as run()
  //! does, halt included; nullopt means no witness within fuel.
  inline std::optional<PathWitness> find_path_witness(BssProgram const& p,
                                                      RatVec const& input, Index fuel) {
    std::size_t d = input.dim();
    detail::PathBuilder b(d);
    std::vector<Rat> vals{Rat(0)};
    vals.insert(vals.end(), input.begin(), input.end());
    std::vector<bool> bits;
    Index label = 1, ci = 1, cj = 1, steps = 0, spent = 0;

    // Appends the values of ops emitted since the last sync; false when an
    // inversion of zero makes the prefix empty.
    std::size_t synced = 0;
    auto sync = [&]() {
      auto const& ops = b.path().ops;
      for (; synced < ops.size(); ++synced) {
        auto const& o = ops[synced];
        if (o.is_guard()) {
          continue;
        }
        switch (o.kind) {
          case PathOp::Kind::assign:
            vals.push_back(o.alpha);
            break;
          case PathOp::Kind::copy:
            vals.push_back(vals[o.j]);
            break;
          case PathOp::Kind::add:
            vals.push_back(vals[o.j] + vals[o.k]);
            break;
          case PathOp::Kind::neg:
            vals.push_back(-vals[o.j]);
            break;
          case PathOp::Kind::mul:
            vals.push_back(vals[o.j] * vals[o.k]);
            break;
          case PathOp::Kind::inv:
            if (vals[o.j].is_zero()) {
              return false;
            }
            vals.push_back(Rat(1) / vals[o.j]);
            break;
          default:
            break;
        }
      }
      return true;
    };

    while (spent < fuel) {
      if (label == p.size()) {
        auto n = path_index(d, bits, steps);
        if (!n) {
          return std::nullopt;
        }
        return PathWitness{*n, b.path()};
      }
      auto const& in = p.at(label);
      std::optional<bool> taken;
      if (in.kind == Instruction::Kind::branch) {
        std::size_t y = b.read(0);
        if (!sync()) {
          return std::nullopt;
        }
        for (bool outcome : {true, false}) {
          if ((vals[y].sign() >= 0) == outcome) {
            taken = outcome;
            break;
          }
        }
        bits.push_back(*taken);
      }
      b.exec(in, ci, cj, taken);
      if (!sync()) {
        return std::nullopt;
      }
      ++steps;
      ++spent;
      label = in.kind == Instruction::Kind::branch && *taken ? in.jump : label + 1;
      Configuration c;
      c.i = ci;
      c.j = cj;
      detail::apply_copy_ctl(c, in);
      ci = c.i;
      cj = c.j;
    }
    return std::nullopt;
  }

}  // namespace realword

#endif  // REALWORD_PATH_HPP_
