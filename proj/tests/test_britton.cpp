#include <gtest/gtest.h>

#include <random>

#include "realword/britton.hpp"
#include "realword/pattern.hpp"
#include "realword/wordproblem.hpp"

using namespace realword;

namespace {
  Letter A(int e = 1) {
    return Letter{bs12::a(), e};
  }
  Letter T(int e = 1) {
    return Letter{bs12::t(), e};
  }

  // All freely reduced words of length <= n over a, t.
  std::vector<Word> all_words(std::size_t n) {
    std::vector<Letter> alphabet{A(), A(-1), T(), T(-1)};
    std::vector<Word> out{Word{}}, layer{Word{}};
    for (std::size_t len = 1; len <= n; ++len) {
      std::vector<Word> next;
      for (auto const& w : layer) {
        for (auto const& l : alphabet) {
          if (!w.empty() && w.letters().back().cancels(l)) {
            continue;
          }
          Word v = w;
          v.push_back(l);
          next.push_back(v);
        }
      }
      out.insert(out.end(), next.begin(), next.end());
      layer = std::move(next);
    }
    return out;
  }

  // Free group on y and x(1, s); A = < w_r : r >= 0 >, phi = id.
  HnnStructure fixing_structure() {
    HnnStructure h;
    h.label = "fixing";
    h.base_identity = [](Word const& w) -> Tri { return free_reduce(w).empty(); };
    StableLetterSpec s;
    s.family = Family::t;
    auto member = [](Word const& g, RatVec const&) -> Tri {
      auto fs = nielsen_decompose(free_reduce(g));
      if (!fs) {
        return false;
      }
      for (auto const& f : *fs) {
        if (f.r.dim() != 1 || f.r[0].sign() < 0) {
          return false;
        }
      }
      return true;
    };
    s.in_A = member;
    s.in_B = member;
    s.phi = [](Word const& g, RatVec const&) -> std::optional<Word> { return free_reduce(g); };
    s.phi_inverse = s.phi;
    h.stable.push_back(std::move(s));
    return h;
  }
}  // namespace

TEST(Britton, FindPinch) {
  auto h = bs12::structure();
  auto site = find_pinch(h, Word{T(), A(), T(-1)});
  ASSERT_TRUE(site.has_value());
  EXPECT_EQ(site->kind, PinchSite::Kind::pos_neg_with_B);
  EXPECT_EQ(site->begin, 0u);
  EXPECT_EQ(site->end, 3u);
  EXPECT_FALSE(find_pinch(h, Word{A(), A(), A(-1)}));
  EXPECT_FALSE(find_pinch(h, Word{T(), A(), T()}));
  EXPECT_FALSE(find_pinch(h, Word{T(-1), A(), T()}));
  auto s2 = find_pinch(h, Word{A(), T(-1), A(), A(), T(), T()});
  ASSERT_TRUE(s2.has_value());
  EXPECT_EQ(s2->kind, PinchSite::Kind::neg_pos_with_A);
  EXPECT_EQ(s2->begin, 1u);
  EXPECT_EQ(s2->end, 5u);
}

TEST(Britton, Reduce) {
  auto h = bs12::structure();
  EXPECT_TRUE(britton_reduce(h, Word{T(), A(), T(-1), A(-1), A(-1)}).empty());
  EXPECT_EQ(britton_reduce(h, Word{T(), A(), A(), T(-1)}), bs12::a_pow(4));
  EXPECT_EQ(britton_reduce(h, Word{A(), A(-1), A()}), Word{A()});
  EXPECT_EQ(britton_reduce(h, Word{T(-1), A(), A(), T()}), Word{A()});
  Word w{T(), A(), T()};
  EXPECT_EQ(britton_reduce(h, w), w);
}

TEST(Britton, PartialOracle) {
  auto h = bs12::structure();
  h.stable[0].in_B = [](Word const&, RatVec const&) -> Tri { return std::nullopt; };
  EXPECT_THROW(find_pinch(h, Word{T(), A(), T(-1)}), OracleUndefined);
  EXPECT_THROW(hnn_is_identity(h, Word{T(), A(), T(-1)}), OracleUndefined);
  EXPECT_NO_THROW(find_pinch(h, Word{A()}));
}

TEST(Britton, AgreesWithAffineRepresentation) {
  auto h = bs12::structure();
  for (auto const& w : all_words(8)) {
    auto r = britton_reduce_counted(h, w);
    EXPECT_LE(r.pinches, stable_letter_count(h, w) / 2);
    EXPECT_FALSE(find_pinch(h, r.word).has_value());
    EXPECT_EQ(hnn_is_identity(h, w), bs12::eval(w).is_identity()) << w.str();
  }
}

TEST(Britton, AgreesWithRelatorRewriting) {
  auto h = bs12::structure();
  auto p = bs12::presentation();
  std::size_t trivial = 0;
  for (auto const& w : all_words(8)) {
    if (w.empty() || !hnn_is_identity(h, w)) {
      continue;
    }
    ++trivial;
    auto res = wp_semidecide(p, w, 20000);
    ASSERT_TRUE(res.proved()) << w.str();
    EXPECT_TRUE(verify_certificate(p, w, res.certificate));
  }
  EXPECT_GT(trivial, 0u);
}

TEST(Britton, BaseEmbeds) {
  auto h = bs12::structure();
  for (long k = -6; k <= 6; ++k) {
    EXPECT_EQ(hnn_is_identity(h, bs12::a_pow(k)), k == 0);
  }
}

TEST(Britton, CommutatorWithFixedSubgroup) {
  auto h = fixing_structure();
  std::mt19937_64 g(5);
  std::uniform_int_distribution<int> num(-5, 5), len(1, 3), coin(0, 3);
  Letter t{gen(Family::t), 1};
  EXPECT_TRUE(hnn_is_identity(h, Word{}));
  int members = 0;
  for (int n = 0; n < 200; ++n) {
    Word w;
    int k = len(g);
    for (int i = 0; i < k; ++i) {
      Word f = encode_w(RatVec{Rat(num(g))});
      if (coin(g) == 0) {
        f = invert(f);
      }
      if (coin(g) == 0) {
        f.push_back(pos(xgen(Rat(1), Rat(num(g)))));
      }
      w.append(f);
    }
    w = free_reduce(w);
    Word c{t};
    c.append(w);
    c.push_back(t.inverse());
    c.append(invert(w));
    bool in = *h.stable[0].in_A(w, {});
    members += in;
    EXPECT_EQ(hnn_is_identity(h, c), in) << w.str();
    EXPECT_EQ(hnn_is_identity(h, w), w.empty());
  }
  EXPECT_GT(members, 20);
  EXPECT_LT(members, 180);
}

TEST(Amalgam, NormalForm) {
  // Both factors free on one generator, amalgamated along the squares.
  AmalgamOracles o;
  o.is_identity = [](int, Word const& w) -> Tri { return free_reduce(w).empty(); };
  o.in_amalgamated = [](int, Word const& w) -> Tri {
    auto k = bs12::a_exponent(w);
    return k ? Tri(*k % 2 == 0) : std::nullopt;
  };
  auto a = [](long k) { return bs12::a_pow(k); };
  EXPECT_EQ(amalgam_nontrivial({{1, a(1)}}, o), AmalgamVerdict::certified);
  EXPECT_EQ(amalgam_nontrivial({{1, a(0)}}, o), AmalgamVerdict::inconclusive);
  EXPECT_EQ(amalgam_nontrivial({{1, a(1)}, {1, a(1)}}, o), AmalgamVerdict::inconclusive);
  EXPECT_EQ(amalgam_nontrivial({{1, a(2)}, {2, a(1)}}, o), AmalgamVerdict::inconclusive);
  EXPECT_EQ(amalgam_nontrivial({{1, a(1)}, {2, a(3)}, {1, a(-1)}}, o),
            AmalgamVerdict::certified);
  EXPECT_EQ(amalgam_nontrivial({}, o), AmalgamVerdict::inconclusive);
  EXPECT_EQ(amalgam_nontrivial({{1, Word{T()}}, {2, a(1)}}, o), AmalgamVerdict::inconclusive);
}
