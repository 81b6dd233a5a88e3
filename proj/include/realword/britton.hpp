#ifndef REALWORD_BRITTON_HPP_
#define REALWORD_BRITTON_HPP_

// Britton reduction in HNN extensions and the normal-form test for
// amalgamated products.
//
// Orientation: for a stable letter t with subgroups A, B and phi : A -> B,
//
//   t^-1 . g . t  =  phi(g)       for g in A
//   t . g . t^-1  =  phi^-1(g)    for g in B
//
// Oracles are tri-state; an undecided answer raises OracleUndefined.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "constructions.hpp"
#include "errors.hpp"
#include "word.hpp"

namespace realword {

  //! Answer of a possibly partial decision oracle: nullopt is "unknown".
  using Tri = std::optional<bool>;

  //! A family of stable letters family(v) with pred(v), and for each one the
  //! associated subgroups and isomorphism, parametrised by v.
  struct StableLetterSpec {
    using Membership = std::function<Tri(Word const&, RatVec const&)>;
    using WordMap = std::function<std::optional<Word>(Word const&, RatVec const&)>;

    Family family = Family::t;
    std::size_t arity = 0;
    Pred pred = Pred(true);
    Membership in_A;
    Membership in_B;
    WordMap phi;
    WordMap phi_inverse;

    bool matches(GenSym const& g) const {
      return g.family == family && g.index.dim() == arity && pred(g.index);
    }
  };

  //! Uses an IsoRealization letterwise: phi = forward, phi^-1 = backward.
  inline void set_iso(StableLetterSpec& s, IsoRealization iso) {
    auto shared = std::make_shared<IsoRealization>(std::move(iso));
    s.phi = [shared](Word const& w, RatVec const& v) { return shared->forward(w, v); };
    s.phi_inverse = [shared](Word const& w, RatVec const& v) {
      return shared->backward(w, v);
    };
  }

  struct HnnStructure {
    std::string label;
    //! Word problem of the base group.
    std::function<Tri(Word const&)> base_identity;
    std::vector<StableLetterSpec> stable;

    //! The spec a generator is a stable letter of, if any.
    StableLetterSpec const* stable_spec(GenSym const& g) const {
      for (auto const& s : stable) {
        if (s.matches(g)) {
          return &s;
        }
      }
      return nullptr;
    }
    bool is_stable(Letter const& l) const {
      return stable_spec(l.gen) != nullptr;
    }
  };

  struct PinchSite {
    enum class Kind { neg_pos_with_A, pos_neg_with_B };

    //! Letters [begin, end) of the word, stable letters included.
    std::size_t begin = 0, end = 0;
    Kind kind = Kind::neg_pos_with_A;
    GenSym stable_letter;

    friend bool operator==(PinchSite const&, PinchSite const&) = default;
  };

  namespace detail {
    inline bool decided(Tri t, std::string const& what) {
      if (!t) {
        throw OracleUndefined(what);
      }
      return *t;
    }
  }  // namespace detail

  //! Leftmost pinch t^-1 g t (g in A) or t g t^-1 (g in B), g free of
  //! stable letters.
  inline std::optional<PinchSite> find_pinch(HnnStructure const& h, Word const& w) {
    auto const& ls = w.letters();
    std::optional<std::size_t> prev;
    for (std::size_t k = 0; k < ls.size(); ++k) {
      if (!h.is_stable(ls[k])) {
        continue;
      }
      if (prev && ls[*prev].gen == ls[k].gen && ls[*prev].exp == -ls[k].exp) {
        auto const* s = h.stable_spec(ls[k].gen);
        Word g = w.slice(*prev + 1, k);
        RatVec const& v = ls[k].gen.index;
        bool neg_pos = ls[*prev].exp == -1;
        Tri in = neg_pos ? s->in_A(g, v) : s->in_B(g, v);
        std::string what = std::string(neg_pos ? "A" : "B") + "-membership of " + g.str()
                           + " for " + ls[k].gen.str();
        if (detail::decided(in, what)) {
          return PinchSite{*prev, k + 1,
                           neg_pos ? PinchSite::Kind::neg_pos_with_A
                                   : PinchSite::Kind::pos_neg_with_B,
                           ls[k].gen};
        }
      }
      prev = k;
    }
    return std::nullopt;
  }

  struct BrittonResult {
    Word word;
    std::size_t pinches = 0;
  };

  //! Removes pinches leftmost first until none is left; the result is freely
  //! reduced.
  inline BrittonResult britton_reduce_counted(HnnStructure const& h, Word const& w) {
    BrittonResult res{free_reduce(w), 0};
    while (auto site = find_pinch(h, res.word)) {
      auto const* s = h.stable_spec(site->stable_letter);
      Word g = res.word.slice(site->begin + 1, site->end - 1);
      bool a_side = site->kind == PinchSite::Kind::neg_pos_with_A;
      auto img = a_side ? s->phi(g, site->stable_letter.index)
                        : s->phi_inverse(g, site->stable_letter.index);
      if (!img) {
        throw OracleUndefined(std::string(a_side ? "phi" : "phi^-1") + " undefined on "
                              + g.str());
      }
      Word next = res.word.slice(0, site->begin);
      next.append(*img);
      next.append(res.word.slice(site->end, res.word.size()));
      res.word = free_reduce(next);
      ++res.pinches;
    }
    return res;
  }

  inline Word britton_reduce(HnnStructure const& h, Word const& w) {
    return britton_reduce_counted(h, w).word;
  }

  inline std::size_t stable_letter_count(HnnStructure const& h, Word const& w) {
    std::size_t n = 0;
    for (auto const& l : w) {
      n += h.is_stable(l) ? 1 : 0;
    }
    return n;
  }

  inline bool hnn_is_identity(HnnStructure const& h, Word const& w) {
    Word r = britton_reduce(h, w);
    if (stable_letter_count(h, r) > 0) {
      return false;
    }
    return detail::decided(h.base_identity(r), "base word problem on " + r.str());
  }

  ////////////////////////////////////////////////////////////////////////
  // Amalgamated products
  ////////////////////////////////////////////////////////////////////////

  //! An element of one factor (1 or 2) of an amalgamated product.
  struct FactorElement {
    int factor = 1;
    Word word;
  };

  struct AmalgamOracles {
    //! Word problem of factor 1 and 2.
    std::function<Tri(int, Word const&)> is_identity;
    //! Membership in the amalgamated subgroup: A for factor 1, B for factor 2.
    std::function<Tri(int, Word const&)> in_amalgamated;
  };

  enum class AmalgamVerdict { certified, inconclusive };

  //! Certifies c_1 ... c_n != 1 when the sequence alternates between factors
  //! and either n = 1 with c_1 != 1, or n > 1 with no c_i amalgamated.
  inline AmalgamVerdict amalgam_nontrivial(std::vector<FactorElement> const& seq,
                                           AmalgamOracles const& o) {
    if (seq.empty()) {
      return AmalgamVerdict::inconclusive;
    }
    for (std::size_t k = 0; k < seq.size(); ++k) {
      if (seq[k].factor != 1 && seq[k].factor != 2) {
        return AmalgamVerdict::inconclusive;
      }
      if (k > 0 && seq[k].factor == seq[k - 1].factor) {
        return AmalgamVerdict::inconclusive;
      }
    }
    if (seq.size() == 1) {
      Tri id = o.is_identity(seq[0].factor, seq[0].word);
      return id && !*id ? AmalgamVerdict::certified : AmalgamVerdict::inconclusive;
    }
    for (auto const& c : seq) {
      Tri in = o.in_amalgamated(c.factor, c.word);
      if (!in || *in) {
        return AmalgamVerdict::inconclusive;
      }
    }
    return AmalgamVerdict::certified;
  }

  ////////////////////////////////////////////////////////////////////////
  // Baumslag-Solitar BS(1, 2) = < a; t | t a t^-1 = a^2 >
  ////////////////////////////////////////////////////////////////////////

  namespace bs12 {
    inline GenSym a() {
      return gen(Family::a);
    }
    inline GenSym t() {
      return gen(Family::t);
    }
    //! a^k
    inline Word a_pow(long k) {
      Word w;
      for (long i = 0; i < (k < 0 ? -k : k); ++i) {
        w.push_back(Letter{a(), k < 0 ? -1 : 1});
      }
      return w;
    }
    //! Exponent k if the freely reduced w is a^k.
    inline std::optional<long> a_exponent(Word const& w) {
      long k = 0;
      for (auto const& l : free_reduce(w)) {
        if (!(l.gen == a())) {
          return std::nullopt;
        }
        k += l.exp;
      }
      return k;
    }

    inline Presentation presentation() {
      Presentation p;
      p.label = "bs12";
      p.dim = 0;
      p.generators.push_back(GenClause{Family::a, 0, Pred(true)});
      p.generators.push_back(GenClause{Family::t, 0, Pred(true)});
      RelatorSchema r;
      r.name = "BS";
      r.arity = 0;
      r.tmpl = {LetterTemplate{Family::t, {}, 1}, LetterTemplate{Family::a, {}, 1},
                LetterTemplate{Family::t, {}, -1}, LetterTemplate{Family::a, {}, -1},
                LetterTemplate{Family::a, {}, -1}};
      r.constraint = Pred(true);
      r.mode = Mode::decidable;
      p.relators.push_back(std::move(r));
      return p;
    }

    //! Base <a> free of rank one; A = <a^2>, B = <a>, phi(a^2k) = a^k.
    inline HnnStructure structure() {
      HnnStructure h;
      h.label = "bs12";
      h.base_identity = [](Word const& w) -> Tri {
        auto k = a_exponent(w);
        return k ? Tri(*k == 0) : std::nullopt;
      };
      StableLetterSpec s;
      s.family = Family::t;
      s.arity = 0;
      s.in_A = [](Word const& g, RatVec const&) -> Tri {
        auto k = a_exponent(g);
        return k ? Tri(*k % 2 == 0) : std::nullopt;
      };
      s.in_B = [](Word const& g, RatVec const&) -> Tri {
        return a_exponent(g).has_value() ? Tri(true) : std::nullopt;
      };
      s.phi = [](Word const& g, RatVec const&) -> std::optional<Word> {
        auto k = a_exponent(g);
        if (!k || *k % 2 != 0) {
          return std::nullopt;
        }
        return a_pow(*k / 2);
      };
      s.phi_inverse = [](Word const& g, RatVec const&) -> std::optional<Word> {
        auto k = a_exponent(g);
        if (!k) {
          return std::nullopt;
        }
        return a_pow(2 * *k);
      };
      h.stable.push_back(std::move(s));
      return h;
    }

    //! Affine representation a -> x + 1, t -> 2x, faithful on BS(1, 2).
    struct Affine {
      Rat scale = Rat(1), shift = Rat(0);

      Affine operator*(Affine const& o) const {
        return {scale * o.scale, scale * o.shift + shift};
      }
      Affine inverse() const {
        return {Rat(1) / scale, -shift / scale};
      }
      bool is_identity() const {
        return scale == Rat(1) && shift.is_zero();
      }
    };

    inline Affine eval(Word const& w) {
      Affine acc;
      for (auto const& l : w) {
        Affine g;
        if (l.gen == a()) {
          g = {Rat(1), Rat(1)};
        } else if (l.gen == t()) {
          g = {Rat(2), Rat(0)};
        } else {
          throw IndexError("not a BS(1,2) generator: " + l.gen.str());
        }
        acc = acc * (l.exp == 1 ? g : g.inverse());
      }
      return acc;
    }
  }  // namespace bs12

}  // namespace realword

#endif  // REALWORD_BRITTON_HPP_
