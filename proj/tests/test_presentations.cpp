#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "realword/constructions.hpp"
#include "realword/groups.hpp"
#include "realword/presentation.hpp"
#include "realword/wordproblem.hpp"

using namespace realword;

namespace {
  Word x1(Rat t, int exp = 1) {
    return Word{Letter{GenSym{Family::x, RatVec{std::move(t)}}, exp}};
  }
  Word cat(std::initializer_list<Word> ws) {
    Word out;
    for (auto const& w : ws) {
      out.append(w);
    }
    return out;
  }
}  // namespace

TEST(Predicate, EvalAndUnify) {
  Pred p = Pred::all({ge(v(0) * v(0), 4), Pred::is_integer(v(1)), !eq(v(1), 0)});
  EXPECT_TRUE(p(RatVec{Rat(-2), Rat(3)}));
  EXPECT_FALSE(p(RatVec{Rat(1), Rat(3)}));
  EXPECT_FALSE(p(RatVec{Rat(3), Rat(1, 2)}));
  EXPECT_FALSE(p(RatVec{Rat(3), Rat(0)}));
  EXPECT_FALSE(eq(Expr(1) / v(0), 1)(RatVec{Rat(0)}));
  EXPECT_FALSE(p(RatVec{Rat(3)}));

  Bindings b(2);
  b[0] = Rat(2);
  EXPECT_EQ(unify(v(1) * v(0) * v(0), Rat(12), b), Unify::ok);
  EXPECT_EQ(*b[1], Rat(3));
  Bindings c(2);
  EXPECT_EQ(unify(v(0) + v(1), Rat(1), c), Unify::defer);
  EXPECT_EQ(unify(Expr(1) / v(0), Rat(1, 4), c), Unify::ok);
  EXPECT_EQ(*c[0], Rat(4));
  EXPECT_EQ(unify(v(0) - v(1), Rat(1), c), Unify::ok);
  EXPECT_EQ(*c[1], Rat(3));
  EXPECT_EQ(unify(v(0) + v(1), Rat(8), c), Unify::fail);
}

TEST(Predicate, JsonRoundTrip) {
  Pred p = Pred::all({ge(v(0) * v(0), Rat(4, 3)), Pred::is_natural(v(1)),
                      !eq(-v(1), Expr(1) / v(0)) || lt(v(0) - v(1), 0)});
  auto j = p.to_json();
  Pred q = Pred::from_json(j);
  EXPECT_EQ(q.to_json(), j);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    RatVec x{Rat(static_cast<long>(rng() % 7) - 3), Rat(static_cast<long>(rng() % 5))};
    EXPECT_EQ(p(x), q(x));
  }
  EXPECT_THROW(Pred::from_json(nlohmann::json::parse(R"({"foo": 1})")), ParseError);
  EXPECT_FALSE(Pred::from_callback([](RatVec const&) { return true; }).serializable());
}

TEST(Presentation, CheckGenerator) {
  auto circle = circle_presentation();
  EXPECT_TRUE(check_generator(circle, xgen(2, 0)));
  EXPECT_FALSE(check_generator(circle, xgen(0, 0)));
  EXPECT_THROW(check_generator(circle, gen(Family::x, RatVec{1, 2, 3})), ArityMismatch);
  auto free = free_presentation(1);
  EXPECT_TRUE(check_generator(free, gen(Family::x, RatVec{Rat(7, 3)})));
  EXPECT_FALSE(check_generator(free, gen(Family::y)));
}

TEST(Presentation, CheckRelator) {
  auto torus = torus_presentation();
  EXPECT_TRUE(check_relator(torus, cat({x1(Rat(1, 3)), x1(Rat(1, 4)), x1(Rat(7, 12), -1)})));
  EXPECT_FALSE(check_relator(torus, cat({x1(Rat(1, 3)), x1(Rat(1, 4)), x1(Rat(1, 2), -1)})));
  EXPECT_FALSE(check_relator(torus, Word()));
  auto m = match_relator(torus, cat({x1(Rat(5)), x1(Rat(6), -1)}));
  ASSERT_TRUE(m);
  EXPECT_EQ(m->schema, 0u);
  EXPECT_EQ(m->params, RatVec{Rat(5)});

  Presentation en = torus;
  en.relators[1].mode = Mode::enumerable;
  EXPECT_THROW(check_relator(en, Word()), SemiDecidableOnly);
}

TEST(Presentation, EnumerateRelators) {
  auto torus = torus_presentation();
  bool found = false;
  Word target = cat({x1(0), x1(0), x1(0, -1)});
  RelatorStream s(torus);
  for (int i = 0; i < 200; ++i) {
    auto inst = s.next();
    EXPECT_TRUE(check_relator(torus, inst.word)) << inst.word;
    found = found || inst.word == target;
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(enumerate_relators(torus, 17), enumerate_relators(torus, 17));
  RelatorStream s2(torus);
  for (Index i = 0; i < 17; ++i) {
    s2.next();
  }
  EXPECT_EQ(s2.next().word, enumerate_relators(torus, 17));
}

TEST(Presentation, JsonRoundTrip) {
  for (auto const& p : {circle_presentation(), torus_presentation(), sl2_presentation(),
                        rationals_b_presentation(), qgroup_presentation()}) {
    auto j = p.to_json();
    auto q = Presentation::from_json(j);
    EXPECT_EQ(q.to_json(), j);
    RelatorStream s(p);
    for (int i = 0; i < 30; ++i) {
      auto inst = s.next();
      EXPECT_TRUE(check_relator(q, inst.word)) << p.label << ": " << inst.word;
    }
  }
  EXPECT_THROW(Presentation::from_json(nlohmann::json::parse(R"({"generators": []})")),
               ParseError);
}

TEST(Presentation, DataFilesLoad) {
  for (auto name : {"circle", "torus", "sl2", "rationals-a", "rationals-b", "qgroup", "free"}) {
    std::ifstream in(std::string(REALWORD_DATA_DIR) + "/presentations/" + name + ".json");
    ASSERT_TRUE(in) << name;
    auto p = Presentation::from_json(nlohmann::json::parse(in));
    EXPECT_FALSE(p.generators.empty()) << name;
  }
}

TEST(Constructions, FreeProduct) {
  auto fp = free_product(free_presentation(1), free_presentation(1));
  EXPECT_TRUE(fp.relators.empty());
  EXPECT_EQ(fp.dim, 2u);
  auto tp = free_product(torus_presentation(), circle_presentation());
  EXPECT_EQ(tp.dim, 3u);
  EXPECT_TRUE(check_generator(tp, tag_generator(gen(Family::x, RatVec{Rat(1, 2)}), 1)));
  EXPECT_TRUE(check_generator(tp, tag_generator(xgen(1, 1), 2)));
  EXPECT_FALSE(check_generator(tp, tag_generator(gen(Family::x, RatVec{Rat(1, 2)}), 2)));
  EXPECT_FALSE(check_generator(tp, tag_generator(xgen(1, 1), 1)));
  Word rel = cat({x1(Rat(1, 3)), x1(Rat(1, 4)), x1(Rat(7, 12), -1)});
  EXPECT_TRUE(check_relator(tp, tag_word(rel, 1)));
  EXPECT_FALSE(check_relator(tp, tag_word(rel, 2)));

  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    std::size_t d1 = rng() % 4, d2 = rng() % 4;
    EXPECT_EQ(free_product(free_presentation(d1), free_presentation(d2)).dim,
              std::max(d1, d2) + 1);
  }
}

TEST(Constructions, Amalgamate) {
  auto k = free_presentation(1);
  auto l = free_presentation(1);
  auto plain = amalgamate(k, l, {}, IsoRealization{});
  EXPECT_TRUE(plain.relators.empty());

  // P = <K * L | phi(psi^-1(l)) = l>, with A = {x_r : r >= 0} in K mapped
  // to x_(2r) in L.
  IsoRealization iso;
  iso.forward_clauses.push_back(IsoClause{Family::x, 1, ge(v(0), 0),
                                          {lt_pos(Family::x, {v(0) * 2})}});
  iso.backward_clauses.push_back(IsoClause{Family::x, 1, ge(v(0), 0),
                                           {lt_pos(Family::x, {v(0) / 2})}});
  auto P = amalgamate(k, l, {GenClause{Family::x, 1, ge(v(0), 0)}}, iso);
  ASSERT_EQ(P.relators.size(), 1u);
  auto const& s = P.relators[0];
  EXPECT_EQ(s.mode, Mode::decidable);
  ASSERT_EQ(s.tmpl.size(), 2u);
  auto inst = s.instantiate(RatVec{Rat(3)});
  ASSERT_TRUE(inst);
  Word expect = cat({tag_word(x1(6), 2), tag_word(x1(3, -1), 1)});
  EXPECT_EQ(*inst, expect);
  EXPECT_TRUE(check_relator(P, expect));
  EXPECT_FALSE(s.instantiate(RatVec{Rat(-1)}).has_value());
  RelatorStream st(P);
  for (int i = 0; i < 20; ++i) {
    EXPECT_TRUE(check_relator(P, st.next().word));
  }
  EXPECT_EQ(iso.backward(*iso.forward(x1(5))), x1(5));
}

TEST(Constructions, HnnTrivial) {
  auto p = hnn_extend(free_presentation(1), StableFamily{Family::t, 0, Pred(true)},
                      IsoRealization{});
  EXPECT_TRUE(p.relators.empty());
  EXPECT_TRUE(check_generator(p, gen(Family::t)));
  EXPECT_EQ(p.dim, 1u);
}

TEST(WordProblem, RelatorIsProvedWithOneEntry) {
  auto torus = torus_presentation();
  Word r = cat({x1(Rat(1, 3)), x1(Rat(1, 4)), x1(Rat(7, 12), -1)});
  auto res = wp_semidecide(torus, r, 100);
  ASSERT_TRUE(res.proved());
  EXPECT_EQ(res.certificate.size(), 1u);
  EXPECT_TRUE(res.certificate.entries[0].conjugator.empty());
  EXPECT_TRUE(verify_certificate(torus, r, res.certificate));
}

TEST(WordProblem, TorusTwoRelatorCertificate) {
  auto torus = torus_presentation();
  Word w = cat({x1(Rat(1, 3)), x1(Rat(2, 3)), x1(0, -1)});
  // Hand certificate: x_(1/3) x_(2/3) x_1^-1 . x_0 x_1^-1 inverted.
  Certificate hand;
  hand.entries.push_back({Word(), cat({x1(Rat(1, 3)), x1(Rat(2, 3)), x1(1, -1)}), 1,
                          RatVec{Rat(1, 3), Rat(2, 3)}, false});
  hand.entries.push_back({Word(), cat({x1(0), x1(1, -1)}), 0, RatVec{Rat(0)}, true});
  EXPECT_TRUE(verify_certificate(torus, w, hand));

  auto res = wp_semidecide(torus, w, 1000);
  ASSERT_TRUE(res.proved());
  EXPECT_EQ(res.certificate.size(), 2u);
  EXPECT_TRUE(verify_certificate(torus, w, res.certificate));

  Word direct = cat({x1(Rat(1, 3)), x1(Rat(2, 3)), x1(1, -1)});
  EXPECT_EQ(wp_semidecide(torus, direct, 10).certificate.size(), 1u);
}

TEST(WordProblem, FreeGroupStaysUnknown) {
  auto free = free_presentation(1);
  for (Index fuel : {Index(0), Index(10), Index(1000)}) {
    auto res = wp_semidecide(free, cat({x1(1), x1(2)}), fuel);
    EXPECT_FALSE(res.proved());
  }
}

TEST(WordProblem, CorruptedCertificateFails) {
  auto torus = torus_presentation();
  Word w = cat({x1(Rat(1, 3)), x1(Rat(2, 3)), x1(0, -1)});
  auto res = wp_semidecide(torus, w, 1000);
  ASSERT_TRUE(res.proved());
  auto bad = res.certificate;
  bad.entries[0].params[0] = bad.entries[0].params[0] + Rat(1, 7);
  EXPECT_FALSE(verify_certificate(torus, w, bad));
  auto bad2 = res.certificate;
  bad2.entries[0].schema = 7;
  EXPECT_FALSE(verify_certificate(torus, w, bad2));
  EXPECT_TRUE(verify_certificate(torus, Word(), Certificate()));
  EXPECT_FALSE(verify_certificate(torus, x1(1), Certificate()));
  auto back = Certificate::from_json(res.certificate.to_json());
  EXPECT_TRUE(verify_certificate(torus, w, back));
}

TEST(WordProblem, FuelMonotone) {
  auto torus = torus_presentation();
  Word w = cat({x1(Rat(1, 5)), x1(Rat(3, 5)), x1(Rat(1, 5)), x1(2, -1), x1(Rat(1, 2)),
                x1(Rat(-1, 2))});
  auto r1 = wp_semidecide(torus, w, 500);
  ASSERT_TRUE(r1.proved());
  auto r2 = wp_semidecide(torus, w, 5000);
  ASSERT_TRUE(r2.proved());
  EXPECT_EQ(r1.certificate.entries, r2.certificate.entries);
}

TEST(WordProblem, ConjugatedRelators) {
  auto p = sl2_presentation();
  Word g = cat({weil::u(Rat(2)), weil::vv()});
  Word r = *p.relators[3].instantiate(RatVec{Rat(2), Rat(3)});
  Word w = free_reduce(cat({g, r, invert(g)}));
  auto res = wp_semidecide(p, w, 2000);
  ASSERT_TRUE(res.proved());
  EXPECT_TRUE(verify_certificate(p, w, res.certificate));
}
