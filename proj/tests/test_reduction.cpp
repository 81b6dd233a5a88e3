#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "realword/reduction.hpp"

using namespace realword;

namespace {
  BssProgram load(std::string const& name) {
    std::ifstream in(std::string(REALWORD_DATA_DIR) + "/programs/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return BssProgram::parse(ss.str());
  }

  Path sign_path() {
    return Path{1, 3, {PathOp::assign(2, Rat(-1)), PathOp::add(3, 1, 2), PathOp::guard_geq(3)}};
  }

  Rat rnd(std::mt19937_64& g) {
    std::uniform_int_distribution<long> num(-12, 12), den(1, 5);
    return Rat(num(g), den(g));
  }
}  // namespace

TEST(OpTable, Predicates) {
  EXPECT_TRUE(build_W(PathOp::add(3, 1, 2), 0, 3).W_pred(RatVec{Rat(2), Rat(-1), Rat(1)}));
  EXPECT_FALSE(build_W(PathOp::add(3, 1, 2), 0, 3).W_pred(RatVec{Rat(2), Rat(-1), Rat(0)}));
  EXPECT_FALSE(build_W(PathOp::inv(2, 1), 0, 2).W_pred(RatVec{Rat(0), Rat(5)}));
  EXPECT_TRUE(build_W(PathOp::inv(2, 1), 0, 2).W_pred(RatVec{Rat(4), Rat(1, 4)}));
  EXPECT_TRUE(build_W(PathOp::guard_geq(1), 0, 1).W_pred(RatVec{Rat(0)}));
  EXPECT_FALSE(build_W(PathOp::guard_lt(1), 0, 1).W_pred(RatVec{Rat(0)}));
  EXPECT_TRUE(build_W(PathOp::copy(2, 1), 0, 2).W_pred(RatVec{Rat(7), Rat(7)}));
  EXPECT_TRUE(build_W(PathOp::neg(2, 1), 0, 2).W_pred(RatVec{Rat(7), Rat(-7)}));
  EXPECT_TRUE(build_W(PathOp::assign(2, Rat(3)), 0, 2).W_pred(RatVec{Rat(7), Rat(3)}));
  EXPECT_FALSE(build_W(PathOp::mul(3, 1, 2), 0, 3).W_pred(RatVec{Rat(0), Rat(2), Rat(0)}));
}

TEST(OpTable, MalformedOps) {
  EXPECT_THROW(build_W(PathOp::add(2, 1, 3), 0, 3), IndexError);
  EXPECT_THROW(build_W(PathOp::add(4, 1, 2), 0, 3), IndexError);
  EXPECT_THROW(build_W(PathOp::copy(1, 1), 0, 3), IndexError);
  EXPECT_THROW(build_W(PathOp::guard_geq(0), 0, 3), IndexError);
  EXPECT_THROW(build_W(PathOp::assign(1, Rat(2)), 1, 3), IndexError);
}

TEST(OpTable, Membership) {
  auto spec = build_W(PathOp::add(3, 1, 2), 0, 3);
  Word g1 = encode_w(RatVec{Rat(2), Rat(-1), Rat(1)});
  Word g2 = encode_w(RatVec{Rat(1, 2), Rat(1, 2), Rat(1)});
  EXPECT_TRUE(W_membership(spec, g1));
  EXPECT_TRUE(W_membership(spec, free_reduce(concat(g1, invert(g2)))));
  EXPECT_TRUE(W_membership(spec, Word{}));
  EXPECT_FALSE(W_membership(spec, Word{pos(xgen(Rat(1), Rat(1)))}));
  Word bad = encode_w(RatVec{Rat(2), Rat(-1), Rat(0)});
  EXPECT_FALSE(W_membership(spec, free_reduce(concat(g1, bad))));
}

TEST(OpTable, Reachability) {
  auto add = build_W(PathOp::add(3, 1, 2), 0, 3);
  auto r = L_reachability_check(add, encode_w(RatVec{Rat(2), Rat(-1), Rat(1)}));
  EXPECT_TRUE(r.reached) << r.reason;
  EXPECT_TRUE(L_reachability_check(add, add.base_word()).reached);
  EXPECT_TRUE(L_reachability_check(add, add.base_word()).moves.empty());

  auto c = build_W(PathOp::assign(2, Rat(1)), 0, 3);
  auto n = L_reachability_check(c, encode_w(RatVec{Rat(0), Rat(2), Rat(0)}));
  EXPECT_FALSE(n.reached);
  EXPECT_FALSE(n.reason.empty());
  EXPECT_TRUE(L_reachability_check(c, encode_w(RatVec{Rat(5), Rat(1), Rat(-3)})).reached);

  auto dbl = build_W(PathOp::add(2, 1, 1), 0, 2);
  EXPECT_TRUE(L_reachability_check(dbl, encode_w(RatVec{Rat(3), Rat(6)})).reached);
  EXPECT_FALSE(L_reachability_check(dbl, encode_w(RatVec{Rat(3), Rat(5)})).reached);
  auto sq = build_W(PathOp::mul(2, 1, 1), 0, 2);
  EXPECT_TRUE(L_reachability_check(sq, encode_w(RatVec{Rat(-3), Rat(9)})).reached);
  EXPECT_FALSE(L_reachability_check(sq, encode_w(RatVec{Rat(-3), Rat(-9)})).reached);
  EXPECT_FALSE(L_reachability_check(add, Word{pos(gen(Family::y))}).reached);
  EXPECT_FALSE(L_reachability_check(add, encode_w(RatVec{Rat(2), Rat(-1), Rat(1)}), 1).reached);
}

TEST(OpTable, Coherence) {
  for (auto k : {PathOp::Kind::copy, PathOp::Kind::assign, PathOp::Kind::add, PathOp::Kind::neg,
                 PathOp::Kind::mul, PathOp::Kind::inv, PathOp::Kind::guard_geq,
                 PathOp::Kind::guard_lt}) {
    auto rep = op_table_check(k, 100, 20, 42);
    EXPECT_EQ(rep.positives, 100u);
    EXPECT_EQ(rep.negatives, 20u);
    EXPECT_TRUE(rep.ok()) << rep.row << ": " << (rep.failures.empty() ? "" : rep.failures[0]);
  }
}

TEST(StableConjugate, Examples) {
  Word w = encode_w(RatVec{Rat(1), Rat(3)});
  EXPECT_EQ(stable_conjugate(a_letter(Rat(2), Rat(5)), w), encode_w(RatVec{Rat(1), Rat(8)}));
  EXPECT_EQ(stable_conjugate(m_letter(Rat(1), Rat(1)), w), w);
  EXPECT_EQ(stable_conjugate(a_letter(Rat(7), Rat(5)), w), w);
  EXPECT_EQ(stable_conjugate(m_letter(Rat(1), Rat(4)), w), encode_w(RatVec{Rat(4), Rat(3)}));
  EXPECT_THROW(stable_conjugate(m_letter(Rat(1), Rat(0)), w), ZeroScale);
  EXPECT_THROW(stable_conjugate(gen(Family::t), w), IndexError);
}

TEST(StableConjugate, ActionLaws) {
  std::mt19937_64 g(11);
  std::uniform_int_distribution<long> slot(1, 4);
  for (int n = 0; n < 1000; ++n) {
    std::vector<Rat> r;
    for (int k = 0; k < 4; ++k) {
      r.push_back(rnd(g));
    }
    Word w = free_reduce(concat(encode_w(RatVec(r)), invert(encode_w(RatVec{rnd(g), rnd(g)}))));
    Rat i(slot(g)), j(slot(g)), t = rnd(g), u = rnd(g);
    EXPECT_EQ(stable_conjugate(a_letter(i, t), stable_conjugate(a_letter(i, u), w)),
              stable_conjugate(a_letter(i, t + u), w));
    if (!t.is_zero() && !u.is_zero()) {
      EXPECT_EQ(stable_conjugate(m_letter(i, t), stable_conjugate(m_letter(i, u), w)),
                stable_conjugate(m_letter(i, t * u), w));
    }
    if (!(i == j) && !u.is_zero()) {
      EXPECT_EQ(stable_conjugate(a_letter(i, t), stable_conjugate(m_letter(j, u), w)),
                stable_conjugate(m_letter(j, u), stable_conjugate(a_letter(i, t), w)));
    }
  }
}

TEST(ExtensionC, RelatorsMatchAction) {
  auto c = extension_C();
  EXPECT_TRUE(check_generator(c, a_letter(Rat(2), Rat(1, 3))));
  EXPECT_TRUE(check_generator(c, m_letter(Rat(2), Rat(-1, 3))));
  EXPECT_FALSE(check_generator(c, m_letter(Rat(2), Rat(0))));
  EXPECT_FALSE(check_generator(c, a_letter(Rat(1, 2), Rat(1))));
  std::mt19937_64 g(3);
  std::uniform_int_distribution<long> slot(0, 3);
  int checked = 0;
  for (int n = 0; n < 300; ++n) {
    for (auto const& schema : c.relators) {
      std::vector<Rat> params{Rat(slot(g)), rnd(g)};
      if (schema.arity == 4) {
        params.push_back(Rat(slot(g)));
        params.push_back(rnd(g));
      }
      RatVec pv(params);
      if (!schema.constraint(pv)) {
        continue;
      }
      auto inst = schema.instantiate(pv);
      ASSERT_TRUE(inst.has_value());
      // phi(v) . t . v^-1 . t^-1
      ASSERT_EQ(inst->size(), 4u);
      Letter t = (*inst)[1];
      Word v{(*inst)[2].inverse()};
      EXPECT_EQ(Word{(*inst)[0]}, stable_conjugate(t.gen, v)) << inst->str();
      EXPECT_TRUE(check_relator(c, *inst));
      ++checked;
    }
  }
  EXPECT_GT(checked, 300);
}

TEST(PathGroups, VMembership) {
  Path p = sign_path();
  EXPECT_TRUE(V_membership(p, RatVec{Rat(2), Rat(-1), Rat(1)}));
  EXPECT_FALSE(V_membership(p, RatVec{Rat(2), Rat(-1), Rat(0)}));
  EXPECT_FALSE(V_membership(p, RatVec{Rat(1, 2), Rat(-1), Rat(-1, 2)}));
  EXPECT_TRUE(V_membership(Path{2, 2, {}}, RatVec{Rat(5), Rat(-5)}));
  EXPECT_THROW(V_membership(p, RatVec{Rat(2)}), ArityMismatch);
}

TEST(PathGroups, UMembership) {
  Path p = sign_path();
  EXPECT_TRUE(U_membership(p, encode_w(RatVec{Rat(2)})));
  EXPECT_FALSE(U_membership(p, encode_w(RatVec{Rat(0)})));
  EXPECT_TRUE(U_membership(p, Word{}));
  Word two = free_reduce(concat(encode_w(RatVec{Rat(2)}), invert(encode_w(RatVec{Rat(5, 2)}))));
  EXPECT_TRUE(U_membership(p, two));
  EXPECT_FALSE(U_membership(p, encode_w(RatVec{Rat(2), Rat(1)})));
}

TEST(PathGroups, ExtensionLiesInV) {
  std::mt19937_64 g(17);
  for (auto name : {"poly_sign.bss", "div2d.bss", "countdown.bss", "sign.bss"}) {
    auto prog = mult_guard_transform(load(name));
    std::size_t d = std::string(name) == "div2d.bss" ? 2 : 1;
    for (int n = 0; n < 50; ++n) {
      std::vector<Rat> xs;
      for (std::size_t k = 0; k < d; ++k) {
        xs.push_back(n % 5 == 0 ? Rat(0) : rnd(g));
      }
      RatVec x(xs);
      auto r = run(prog, x, 5000);
      if (!r.halted()) {
        continue;
      }
      Path path = extract_path(r.trace, d);
      auto s = path_extend(path, x);
      ASSERT_TRUE(s.has_value());
      EXPECT_TRUE(V_membership(path, *s));
      EXPECT_EQ(project_H_le(encode_w(*s), d), encode_w(x));
      EXPECT_TRUE(U_membership(path, encode_w(x)));
    }
  }
}

TEST(UHandle, Sign) {
  auto u = assemble_U(load("sign.bss"));
  auto m = u.member(encode_w(RatVec{Rat(2)}), 1000);
  ASSERT_EQ(m.verdict, UVerdict::member);
  ASSERT_EQ(m.factors.size(), 1u);
  EXPECT_EQ(m.factors[0].witness.path, sign_path());
  EXPECT_EQ(*u.path(m.factors[0].witness.n), sign_path());
  EXPECT_EQ(UHandle::untag(m.factors[0].tagged), encode_w(RatVec{Rat(2)}));
  EXPECT_EQ(u.member(encode_w(RatVec{Rat(0)}), 1000).verdict, UVerdict::not_found_within_fuel);
  EXPECT_EQ(u.member(encode_w(RatVec{Rat(0)}), 100000).verdict,
            UVerdict::not_found_within_fuel);
  EXPECT_EQ(u.member(Word{}, 10).verdict, UVerdict::member);
  EXPECT_EQ(u.member(Word{pos(xgen(Rat(1), Rat(1)))}, 10).verdict, UVerdict::non_member);
}

TEST(Reduction, Shapes) {
  auto p = load("sign.bss");
  auto q = reduce_halting(p, RatVec{Rat(2)});
  EXPECT_EQ(q.query, encode_w(RatVec{Rat(2)}));
  EXPECT_EQ(q.commutator.size(), 8u);
  EXPECT_EQ(reduce_halting(p, RatVec{}).query, Word{pos(gen(Family::y))});
}

TEST(Reduction, SignReport) {
  auto p = load("sign.bss");
  std::vector<RatVec> in{RatVec{Rat(0)}, RatVec{Rat(1, 2)}, RatVec{Rat(1)}, RatVec{Rat(2)},
                         RatVec{Rat(100)}};
  auto rep = check_reduction(p, in, 10000);
  ASSERT_EQ(rep.records.size(), 5u);
  EXPECT_EQ(rep.disagreements(), 0u);
  std::vector<bool> halted;
  for (auto const& r : rep.records) {
    halted.push_back(r.halted);
    EXPECT_EQ(r.group == GroupSide::identity, r.halted);
  }
  EXPECT_EQ(halted, (std::vector<bool>{false, false, true, true, true}));
}

TEST(Reduction, ImmediateHaltAndZeroFuel) {
  std::vector<RatVec> in{RatVec{Rat(0)}, RatVec{Rat(-3), Rat(1, 2)}, RatVec{}};
  auto rep = check_reduction(load("halt.bss"), in, 100);
  for (auto const& r : rep.records) {
    EXPECT_TRUE(r.halted);
    EXPECT_TRUE(r.agree());
  }
  auto zero = check_reduction(load("sign.bss"), {RatVec{Rat(2)}, RatVec{Rat(0)}}, 0);
  for (auto const& r : zero.records) {
    EXPECT_FALSE(r.conclusive());
    EXPECT_TRUE(r.agree());
  }
}

TEST(Reduction, FaultIsDetected) {
  auto rep = check_reduction(load("sign.bss"), {RatVec{Rat(2)}}, 1000, true);
  EXPECT_EQ(rep.disagreements(), 1u);
}

TEST(Reduction, DifferentialAcrossPrograms) {
  std::mt19937_64 g(2026);
  for (auto name : {"sign.bss", "poly_sign.bss", "muldiv.bss", "div2d.bss", "countdown.bss"}) {
    auto prog = load(name);
    std::size_t d = std::string(name) == "muldiv.bss" || std::string(name) == "div2d.bss" ? 2 : 1;
    std::vector<RatVec> in;
    for (int n = 0; n < 60; ++n) {
      std::vector<Rat> xs;
      for (std::size_t k = 0; k < d; ++k) {
        xs.push_back(n % 7 == 0 ? Rat(0) : rnd(g));
      }
      in.emplace_back(xs);
    }
    auto rep = check_reduction(prog, in, 10000);
    EXPECT_EQ(rep.disagreements(), 0u) << name;
  }
}

TEST(Reduction, ConstantHygiene) {
  std::mt19937_64 g(5);
  for (auto name : {"countdown.bss", "muldiv.bss"}) {
    auto prog = load(name);
    auto guarded = mult_guard_transform(prog);
    std::set<Rat> allowed = prog.constants();
    allowed.insert(Rat(0));
    for (auto const& c : guarded.constants()) {
      EXPECT_TRUE(allowed.count(c)) << c.str();
    }
  }
  // a program without constants
  auto prog = load("muldiv.bss");
  ASSERT_TRUE(prog.constants().empty());
  auto u = assemble_U(prog);
  for (int n = 0; n < 50; ++n) {
    RatVec x{rnd(g), rnd(g)};
    std::set<Rat> inputs(x.begin(), x.end());
    auto q = reduce_halting(prog, x);
    for (auto const& s : x_values(q.commutator)) {
      EXPECT_TRUE(inputs.count(s)) << s.str();
    }
    auto m = u.member(q.query, 1000);
    for (auto const& f : m.factors) {
      for (auto const& c : path_constants(f.witness.path)) {
        EXPECT_TRUE(c.is_zero()) << c.str();
      }
    }
  }
}
