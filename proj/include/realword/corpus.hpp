#ifndef REALWORD_CORPUS_HPP_
#define REALWORD_CORPUS_HPP_

// The example groups bundled with their word-problem oracles and random
// samplers for generators and relator instances.

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "groups.hpp"
#include "wordproblem.hpp"

namespace realword {

  struct CorpusGroup {
    std::string name;
    Presentation presentation;
    std::function<bool(Word const&)> oracle;
    std::function<GenSym(std::mt19937_64&)> random_generator;
  };

  namespace detail {
    //! Small integers a third of the time, else p/q with |p| <= 9, q <= 5.
    inline Rat small_rat(std::mt19937_64& g) {
      std::uniform_int_distribution<long> coin(0, 2), i(-3, 3), num(-9, 9), den(1, 5);
      if (coin(g) == 0) {
        return Rat(i(g));
      }
      return Rat(num(g), den(g));
    }
    inline Rat small_nonzero(std::mt19937_64& g) {
      Rat r;
      do {
        r = small_rat(g);
      } while (r.is_zero());
      return r;
    }
    //! A rational point of the unit circle.
    inline std::pair<Rat, Rat> unit_point(std::mt19937_64& g) {
      Rat t = small_rat(g);
      Rat den = Rat(1) + t * t;
      std::uniform_int_distribution<int> coin(0, 1);
      Rat x = (Rat(1) - t * t) / den, y = Rat(2) * t / den;
      return coin(g) ? std::pair{x, y} : std::pair{-x, y};
    }
  }  // namespace detail

  inline std::vector<CorpusGroup> example_corpus() {
    using detail::small_nonzero;
    using detail::small_rat;
    std::vector<CorpusGroup> out;
    auto x1 = [](std::mt19937_64& g) { return GenSym{Family::x, RatVec{small_rat(g)}}; };

    out.push_back({"circle", circle_presentation(), circle_wp, [](std::mt19937_64& g) {
                     Rat r = small_rat(g), s = small_rat(g);
                     if (r.is_zero() && s.is_zero()) {
                       r = Rat(1);
                     }
                     return GenSym{Family::x, RatVec{r, s}};
                   }});
    out.push_back({"torus", torus_presentation(), torus_wp, x1});
    out.push_back({"sl2", sl2_presentation(), sl2_wp, [](std::mt19937_64& g) {
                     std::uniform_int_distribution<int> coin(0, 2);
                     return coin(g) == 0 ? gen(Family::y)
                                         : GenSym{Family::x, RatVec{small_rat(g)}};
                   }});
    out.push_back({"rationals-a", rationals_a_presentation(), rationals_wp_a, x1});
    out.push_back({"rationals-b", rationals_b_presentation(), rationals_wp_b,
                   [](std::mt19937_64& g) {
                     std::uniform_int_distribution<long> p(-6, 6), q(1, 6), sgn(0, 1);
                     return GenSym{Family::x, RatVec{Rat(p(g)), Rat(sgn(g) ? q(g) : -q(g))}};
                   }});
    out.push_back({"qgroup", qgroup_presentation(), qgroup_wp, x1});
    return out;
  }

  //! Parameters satisfying the constraint of relator schema k.
  inline RatVec sample_relator_params(CorpusGroup const& c, std::size_t k,
                                      std::mt19937_64& g) {
    auto const& s = c.presentation.relators.at(k);
    if (c.name == "circle" && s.name == "R1") {
      Rat r = detail::small_nonzero(g), sv = detail::small_rat(g), lambda = detail::small_rat(g);
      if (lambda.sign() <= 0) {
        lambda = Rat(1) - lambda;
      }
      return RatVec{r, sv, lambda * r, lambda * sv};
    }
    if (c.name == "circle" && s.name == "R2") {
      auto [r, sv] = detail::unit_point(g);
      auto [a, b] = detail::unit_point(g);
      return RatVec{r, sv, a, b, r * a - sv * b, r * b + sv * a};
    }
    for (int attempt = 0; attempt < 100000; ++attempt) {
      std::vector<Rat> ps;
      for (std::size_t i = 0; i < s.arity; ++i) {
        ps.push_back(detail::small_rat(g));
      }
      RatVec pv(ps);
      if (s.constraint(pv) && s.instantiate(pv)) {
        return pv;
      }
    }
    throw CapExceeded("no parameters found for schema " + s.name);
  }

  inline Word random_corpus_word(CorpusGroup const& c, std::mt19937_64& g, std::size_t len) {
    std::uniform_int_distribution<int> coin(0, 1);
    Word w;
    for (std::size_t i = 0; i < len; ++i) {
      w.push_back(Letter{c.random_generator(g), coin(g) ? 1 : -1});
    }
    return free_reduce(w);
  }

  //! A product of `count` conjugates c r^(+-1) c^-1 of relator instances,
  //! with conjugators of length at most `conj_len`; trivial by construction.
  inline Word relator_built_identity(CorpusGroup const& c, std::mt19937_64& g,
                                     std::size_t count, std::size_t conj_len) {
    std::uniform_int_distribution<std::size_t> pick(0, c.presentation.relators.size() - 1),
        len(0, conj_len);
    std::uniform_int_distribution<int> coin(0, 1);
    Word w;
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t k = pick(g);
      Word r = *c.presentation.relators[k].instantiate(sample_relator_params(c, k, g));
      if (coin(g)) {
        r = invert(r);
      }
      Word conj = random_corpus_word(c, g, len(g));
      w.append(conj);
      w.append(r);
      w.append(invert(conj));
    }
    return free_reduce(w);
  }

}  // namespace realword

#endif  // REALWORD_CORPUS_HPP_
