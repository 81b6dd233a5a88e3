#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>

#include "realword/enumerate.hpp"
#include "realword/rat.hpp"

using namespace realword;

namespace {
  Rat random_rat(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-50, 50), den(1, 30);
    return Rat(num(rng), den(rng));
  }

  bool canonical(Rat const& r) {
    return r.denominator() > 0 && gcd(r.numerator(), r.denominator()) == 1;
  }
}  // namespace

TEST(RatOp, Examples) {
  EXPECT_EQ(rat_op(ArithOp::add, Rat(1, 2), Rat(1, 3)), Rat(5, 6));
  EXPECT_EQ(rat_op(ArithOp::mul, Rat(0), Rat(7, 3)), Rat(0));
  EXPECT_THROW(rat_op(ArithOp::div, Rat(1), Rat(0)), DivisionByZero);
  EXPECT_EQ(rat_op(ArithOp::sub, Rat(1, 2), Rat(1, 2)), Rat(0));
  EXPECT_EQ(rat_op(ArithOp::div, Rat(3, 4), Rat(-3, 2)), Rat(-1, 2));
}

TEST(Rat, ParseAndPrint) {
  EXPECT_EQ(Rat::parse("-6/4"), Rat(-3, 2));
  EXPECT_EQ(Rat::parse("+5"), Rat(5));
  EXPECT_EQ(Rat(-3, 2).str(), "-3/2");
  EXPECT_EQ(Rat(4, 2).str(), "2");
  EXPECT_EQ(Rat(0, -5).str(), "0");
  EXPECT_THROW(Rat::parse("1/0"), ParseError);
  EXPECT_THROW(Rat::parse("1/-2"), ParseError);
  EXPECT_THROW(Rat::parse("abc"), ParseError);
  EXPECT_THROW(Rat::parse(""), ParseError);
  EXPECT_EQ(RatVec::parse("2, 1/3").str(), "(2,1/3)");
  EXPECT_TRUE(RatVec::parse("").empty());
}

TEST(Rat, CanonicalityAndFieldAxioms) {
  std::mt19937_64 rng(12345);
  for (int n = 0; n < 10000; ++n) {
    Rat a = random_rat(rng), b = random_rat(rng), c = random_rat(rng);
    for (auto k : {ArithOp::add, ArithOp::sub, ArithOp::mul}) {
      ASSERT_TRUE(canonical(rat_op(k, a, b)));
    }
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ(a + (-a), Rat(0));
    ASSERT_EQ(a - b, a + (-b));
    if (!b.is_zero()) {
      ASSERT_TRUE(canonical(a / b));
      ASSERT_EQ(b * (Rat(1) / b), Rat(1));
      ASSERT_EQ((a / b) * b, a);
    }
  }
}

TEST(Rat, BigValuesStayExact) {
  Rat x(3, 2);
  for (int i = 0; i < 8; ++i) {
    x = x * x;
  }
  mpz_class three = 1, two = 1;
  for (int i = 0; i < 256; ++i) {
    three *= 3;
    two *= 2;
  }
  EXPECT_EQ(x, Rat(three, two));
}

TEST(Enumerate, Pairing) {
  for (Index n = 0; n < 5000; ++n) {
    auto [a, b] = cantor_unpair(n);
    ASSERT_EQ(cantor_pair(a, b), n);
  }
  EXPECT_FALSE(cantor_pair(UINT64_MAX, 1).has_value());
  auto big = cantor_unpair(UINT64_MAX);
  EXPECT_EQ(cantor_pair(big.first, big.second), UINT64_MAX);
  for (Index n = 0; n < 2000; ++n) {
    ASSERT_EQ(pair_tuple(unpair_tuple(n, 3)), n);
  }
}

TEST(Enumerate, RationalsBijectiveOnPrefix) {
  EXPECT_EQ(enumerate_rationals(0), Rat(0));
  std::unordered_set<Rat> seen;
  for (Index i = 0; i < 10000; ++i) {
    Rat r = enumerate_rationals(i);
    ASSERT_TRUE(canonical(r));
    ASSERT_TRUE(seen.insert(r).second) << "duplicate at " << i;
    ASSERT_EQ(index_of_rational(r), i);
  }
  EXPECT_TRUE(seen.contains(Rat(5, 3)));
}

TEST(Enumerate, VectorsBijectiveOnPrefix) {
  EXPECT_TRUE(enumerate_vectors(0).empty());
  std::set<RatVec> seen;
  for (Index i = 0; i < 1000; ++i) {
    RatVec v = enumerate_vectors(i);
    ASSERT_TRUE(seen.insert(v).second) << "duplicate at " << i;
    ASSERT_EQ(index_of_vector(v), i);
  }
}

TEST(Enumerate, SmallVectorsAppearEarly) {
  std::vector<Rat> vals{Rat(0), Rat(1), Rat(-1), Rat(1, 2)};
  std::vector<RatVec> targets{RatVec()};
  for (auto const& a : vals) {
    targets.push_back(RatVec{a});
    for (auto const& b : vals) {
      targets.push_back(RatVec{a, b});
    }
  }
  for (auto const& v : targets) {
    auto i = index_of_vector(v);
    ASSERT_TRUE(i.has_value());
    EXPECT_LT(*i, 1000000u) << v;
    EXPECT_EQ(enumerate_vectors(*i), v);
  }
}

TEST(Enumerate, GoldenRationals) {
  std::ifstream in(std::string(REALWORD_GOLDEN_DIR) + "/rationals.txt");
  ASSERT_TRUE(in) << "missing golden file";
  std::string line;
  int checked = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    std::istringstream ls(line);
    Index i;
    std::string v;
    ls >> i >> v;
    EXPECT_EQ(enumerate_rationals(i), Rat::parse(v)) << "index " << i;
    EXPECT_EQ(index_of_rational(Rat::parse(v)), i);
    ++checked;
  }
  EXPECT_GT(checked, 40);
}

TEST(Enumerate, GoldenVectors) {
  std::ifstream in(std::string(REALWORD_GOLDEN_DIR) + "/vectors.txt");
  ASSERT_TRUE(in) << "missing golden file";
  std::string line;
  int checked = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    std::istringstream ls(line);
    Index i;
    std::string v;
    ls >> i >> v;
    RatVec expect = v == "-" ? RatVec() : RatVec::parse(v);
    EXPECT_EQ(enumerate_vectors(i), expect) << "index " << i;
    ++checked;
  }
  EXPECT_EQ(checked, 60);
}
