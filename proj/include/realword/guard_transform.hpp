#ifndef REALWORD_GUARD_TRANSFORM_HPP_
#define REALWORD_GUARD_TRANSFORM_HPP_

// Rewrites a program so that no multiplication ever sees a zero operand and
// no division a zero divisor:
//
//   mul t a b   ->  if a = 0 or b = 0 then t <- 0 else t <- a * b
//   div t a b   ->  if b = 0 then loop forever else t <- a / b
//
// Zero tests use only brgeq: a = 0 iff a >= 0 and -a >= 0. Three scratch
// registers above every register of the program hold saved copies of r0
// and a constant zero; r0 is restored before the original operation runs.

#include <map>
#include <vector>

#include "bss.hpp"

namespace realword {

  namespace detail {
    class Assembler {
     public:
      using Anchor = std::size_t;

      Anchor fresh_anchor() {
        return _next_anchor++;
      }
      void mark(Anchor a) {
        _anchor_pos[a] = _items.size();
      }

      void compute(ArithOp op, Reg t, Reg a, Reg b, Instruction const* ctl = nullptr) {
        Instruction in;
        in.kind = Instruction::Kind::compute;
        in.op = op;
        in.target = t;
        in.a = a;
        in.b = b;
        copy_ctl(in, ctl);
        _items.push_back({in, std::nullopt});
      }
      void assign(Reg t, Rat c, Instruction const* ctl = nullptr) {
        Instruction in;
        in.kind = Instruction::Kind::assign;
        in.target = t;
        in.constant = std::move(c);
        copy_ctl(in, ctl);
        _items.push_back({in, std::nullopt});
      }
      void branch(Anchor to) {
        Instruction in;
        in.kind = Instruction::Kind::branch;
        _items.push_back({in, to});
      }
      //! An unconditional jump; clobbers r0.
      void jump(Anchor to) {
        assign(0, Rat(0));
        branch(to);
      }
      void raw(Instruction in, std::optional<Anchor> to = std::nullopt) {
        _items.push_back({std::move(in), to});
      }

      BssProgram finish() {
        std::vector<Instruction> out;
        for (std::size_t k = 0; k < _items.size(); ++k) {
          Instruction in = _items[k].first;
          in.label = k + 1;
          if (_items[k].second) {
            in.jump = _anchor_pos.at(*_items[k].second) + 1;
          }
          out.push_back(std::move(in));
        }
        return BssProgram(std::move(out));
      }

     private:
      static void copy_ctl(Instruction& in, Instruction const* ctl) {
        if (ctl) {
          in.ci = ctl->ci;
          in.cj = ctl->cj;
        }
      }

      std::vector<std::pair<Instruction, std::optional<Anchor>>> _items;
      std::map<Anchor, std::size_t> _anchor_pos;
      Anchor _next_anchor = 0;
    };
  }  // namespace detail

  //! Scratch registers used by mult_guard_transform for a given program.
  struct GuardScratch {
    Reg saved, zero, parked;
  };

  inline GuardScratch guard_scratch(BssProgram const& p) {
    Reg m = p.max_register();
    return {m + 1, m + 2, m + 3};
  }

  inline BssProgram mult_guard_transform(BssProgram const& p) {
    if (!p.uses(ArithOp::mul) && !p.uses(ArithOp::div)) {
      return p;
    }
    auto [S, Z, G] = guard_scratch(p);
    detail::Assembler as;
    // anchors 0..N-1 stand for the original labels 1..N
    for (Index l = 1; l <= p.size(); ++l) {
      as.fresh_anchor();
    }
    auto orig = [](Index label) { return label - 1; };

    // Jumps to `zero` when register r (read as S if it is r0) is 0.
    auto zero_test = [&](Reg r, detail::Assembler::Anchor zero) {
      Reg src = r == 0 ? S : r;
      auto nonneg = as.fresh_anchor(), nonzero = as.fresh_anchor();
      as.compute(ArithOp::add, 0, src, Z);
      as.branch(nonneg);
      as.jump(nonzero);
      as.mark(nonneg);
      as.compute(ArithOp::sub, 0, Z, src);
      as.branch(zero);
      as.mark(nonzero);
    };

    for (auto const& in : p.instructions()) {
      as.mark(orig(in.label));
      bool guarded = in.kind == Instruction::Kind::compute
                     && (in.op == ArithOp::mul || in.op == ArithOp::div);
      if (!guarded) {
        Instruction copy = in;
        if (in.kind == Instruction::Kind::branch) {
          as.raw(copy, orig(in.jump));
        } else {
          as.raw(copy);
        }
        continue;
      }
      auto zero = as.fresh_anchor(), done = as.fresh_anchor();
      as.compute(ArithOp::add, S, 0, Z);
      if (in.op == ArithOp::mul) {
        zero_test(in.a, zero);
      }
      zero_test(in.b, zero);
      as.compute(ArithOp::add, 0, S, Z);
      as.compute(in.op, in.target, in.a, in.b, &in);
      as.compute(ArithOp::add, G, 0, Z);
      as.jump(done);
      as.mark(zero);
      if (in.op == ArithOp::mul) {
        as.compute(ArithOp::add, 0, S, Z);
        as.assign(in.target, Rat(0), &in);
        as.compute(ArithOp::add, G, 0, Z);
      } else {
        auto loop = as.fresh_anchor();
        as.mark(loop);
        as.jump(loop);
      }
      as.mark(done);
      as.compute(ArithOp::add, 0, G, Z);
    }
    return as.finish();
  }

}  // namespace realword

#endif  // REALWORD_GUARD_TRANSFORM_HPP_
