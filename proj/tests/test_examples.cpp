#include <gtest/gtest.h>

#include <random>

#include "realword/corpus.hpp"
#include "realword/groups.hpp"
#include "realword/wordproblem.hpp"

using namespace realword;

namespace {
  Word X(Rat a, Rat b = Rat(0), int exp = 1, bool pair = false) {
    return Word{Letter{GenSym{Family::x, pair ? RatVec{a, b} : RatVec{a}}, exp}};
  }
  Word C(Rat r, Rat s, int exp = 1) {
    return X(std::move(r), std::move(s), exp, true);
  }
  Word cat(std::initializer_list<Word> ws) {
    Word out;
    for (auto const& w : ws) {
      out.append(w);
    }
    return out;
  }
}  // namespace

TEST(Circle, Examples) {
  EXPECT_TRUE(circle_wp(cat({C(2, 0), C(Rat(1, 2), 0), C(1, 0, -1)})));
  EXPECT_TRUE(circle_wp(cat({C(0, 1), C(0, 1), C(-1, 0, -1)})));
  EXPECT_TRUE(circle_wp(Word{}));
  EXPECT_FALSE(circle_wp(C(0, 1)));
  EXPECT_FALSE(circle_wp(C(-1, 0)));
  EXPECT_TRUE(circle_wp(cat({C(3, 4), C(3, 4, -1)})));
  EXPECT_THROW(circle_wp(C(0, 0)), IndexError);
}

TEST(Circle, RayBoundary) {
  CircleElem a{Rat(0), Rat(1)}, b{Rat(0), Rat(3)}, c{Rat(2), Rat(4)}, d{Rat(1), Rat(2)};
  EXPECT_FALSE(a.equivalent(b));
  EXPECT_TRUE(a.same_ray(b));
  EXPECT_TRUE(c.equivalent(d));
  EXPECT_FALSE(c.equivalent(CircleElem{Rat(-1), Rat(-2)}));
}

TEST(Circle, GroupLaws) {
  auto corpus = example_corpus();
  auto const& circle = corpus[0];
  std::mt19937_64 g(8);
  for (int n = 0; n < 1000; ++n) {
    Word a = random_corpus_word(circle, g, 3), b = random_corpus_word(circle, g, 3),
         c = random_corpus_word(circle, g, 3);
    // commutativity, inverses, associativity of the folded product
    EXPECT_TRUE(circle_wp(cat({a, b, invert(a), invert(b)})));
    EXPECT_TRUE(circle_wp(cat({a, invert(a)})));
    EXPECT_TRUE(circle_wp(cat({a, b, c, invert(cat({a, cat({b, c})}))})));
  }
}

TEST(Torus, Examples) {
  EXPECT_TRUE(torus_wp(cat({X(Rat(1, 3)), X(Rat(2, 3))})));
  EXPECT_FALSE(torus_wp(X(Rat(1, 2))));
  EXPECT_TRUE(torus_wp(Word{}));
  EXPECT_TRUE(torus_wp(cat({X(Rat(5, 2)), X(Rat(1, 2), 0, -1)})));
}

TEST(Weil, Examples) {
  using namespace weil;
  Word v4 = cat({vv(), vv(), vv(), vv()});
  EXPECT_TRUE(sl2_wp(v4));
  EXPECT_EQ(sl2_eval(cat({vv(), vv()})), sl2_eval(s(Rat(-1))));
  EXPECT_TRUE(sl2_wp(cat({u(Rat(1)), u(Rat(2)), u(Rat(3), -1)})));
  EXPECT_TRUE(sl2_wp(cat({s(Rat(2)), u(Rat(3)), s(Rat(1, 2)), u(Rat(12), -1)})));
  EXPECT_FALSE(sl2_wp(vv()));
}

TEST(Weil, RelationsAndDeterminant) {
  auto p = sl2_presentation();
  auto corpus = example_corpus();
  auto const& sl2 = corpus[2];
  std::mt19937_64 g(9);
  for (int n = 0; n < 100; ++n) {
    for (std::size_t k = 0; k < p.relators.size(); ++k) {
      Word r = *p.relators[k].instantiate(sample_relator_params(sl2, k, g));
      EXPECT_TRUE(sl2_wp(r)) << p.relators[k].name << " " << r.str();
      EXPECT_EQ(sl2_eval(r).det(), Rat(1));
    }
    EXPECT_EQ(sl2_eval(random_corpus_word(sl2, g, 12)).det(), Rat(1));
  }
}

TEST(Rationals, Examples) {
  EXPECT_TRUE(rationals_wp_a(cat({X(Rat(1, 2)), X(Rat(-1, 2))})));
  EXPECT_FALSE(rationals_wp_a(X(Rat(1, 2))));
  EXPECT_TRUE(rationals_wp_b(cat({C(1, 2), C(1, 3), C(5, 6, -1)})));
  EXPECT_TRUE(rationals_wp_b(cat({C(1, 2), C(2, 4, -1)})));
  EXPECT_FALSE(rationals_wp_b(cat({C(1, 2), C(2, 3, -1)})));
  EXPECT_THROW(rationals_wp_b(C(1, 0)), IndexError);
  EXPECT_THROW(rationals_wp_b(C(Rat(1, 2), 3)), IndexError);
}

TEST(QGroup, Normalize) {
  auto p = qgroup_presentation();
  auto x = [](Rat r) { return X(std::move(r)); };
  auto five_thirds = qgroup_normalize(Rat(5, 3));
  EXPECT_EQ(five_thirds.chain, (std::vector<Word>{x(Rat(5, 3)), x(Rat(5)), x(Rat(0))}));
  EXPECT_TRUE(verify_certificate(p, cat({x(Rat(5, 3)), X(0, 0, -1)}), five_thirds.certificate));
  EXPECT_TRUE(qgroup_normalize(Rat(0)).chain.empty());
  auto neg = qgroup_normalize(Rat(-7, 2));
  EXPECT_EQ(neg.chain, (std::vector<Word>{x(Rat(-7, 2)), x(Rat(-7)), x(Rat(0))}));
  EXPECT_TRUE(verify_certificate(p, cat({x(Rat(-7, 2)), X(0, 0, -1)}), neg.certificate));
}

TEST(Corpus, RelatorBuiltIdentitiesAreProved) {
  std::mt19937_64 g(1234);
  for (auto const& c : example_corpus()) {
    for (int n = 0; n < 84; ++n) {
      Word w = relator_built_identity(c, g, 1 + n % 2, 2);
      ASSERT_TRUE(c.oracle(w)) << c.name << " " << w.str();
      auto res = wp_semidecide(c.presentation, w, 100000);
      ASSERT_TRUE(res.proved()) << c.name << " " << w.str() << " nodes " << res.nodes;
      EXPECT_TRUE(verify_certificate(c.presentation, w, res.certificate));
    }
  }
}

TEST(Corpus, RefutedWordsAreNeverProved) {
  std::mt19937_64 g(4321);
  for (auto const& c : example_corpus()) {
    int refuted = 0;
    while (refuted < 84) {
      Word w = random_corpus_word(c, g, 4);
      if (c.oracle(w)) {
        continue;
      }
      ++refuted;
      EXPECT_FALSE(wp_semidecide(c.presentation, w, 2000).proved()) << c.name << " " << w.str();
    }
  }
}
