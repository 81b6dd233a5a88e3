#ifndef REALWORD_CONSTRUCTIONS_HPP_
#define REALWORD_CONSTRUCTIONS_HPP_

// Free products, amalgamated products and HNN extensions of presentations.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "presentation.hpp"

namespace realword {

  //! Image of one generator family under a homomorphism. Variables of
  //! `domain` and `image` are the stable-letter parameters (if any) followed
  //! by the generator's own index entries.
  struct IsoClause {
    Family family = Family::x;
    std::size_t arity = 0;
    Pred domain;
    Template image;
  };

  //! A computable isomorphism between subgroups, given letterwise. When no
  //! clause applies the optional callbacks are consulted; these cannot be
  //! turned into decidable relator schemas.
  struct IsoRealization {
    using LetterMap = std::function<std::optional<Word>(Letter const&, RatVec const&)>;

    std::vector<IsoClause> forward_clauses;
    std::vector<IsoClause> backward_clauses;
    LetterMap forward_fn;
    LetterMap backward_fn;

    bool template_expressible() const {
      return !forward_fn && !backward_fn;
    }

    std::optional<Word> forward(Letter const& l, RatVec const& stable = {}) const {
      return apply(forward_clauses, forward_fn, l, stable);
    }
    std::optional<Word> backward(Letter const& l, RatVec const& stable = {}) const {
      return apply(backward_clauses, backward_fn, l, stable);
    }

    //! Letterwise image of a word, freely reduced.
    std::optional<Word> forward(Word const& w, RatVec const& stable = {}) const {
      return map_word(w, stable, true);
    }
    std::optional<Word> backward(Word const& w, RatVec const& stable = {}) const {
      return map_word(w, stable, false);
    }

    //! Is l in the domain (resp. range) generating set?
    bool in_domain(GenSym const& g, RatVec const& stable = {}) const {
      return forward(Letter{g, 1}, stable).has_value();
    }
    bool in_range(GenSym const& g, RatVec const& stable = {}) const {
      return backward(Letter{g, 1}, stable).has_value();
    }

   private:
    static std::optional<Word> apply(std::vector<IsoClause> const& clauses,
                                     LetterMap const& fn, Letter const& l,
                                     RatVec const& stable) {
      for (auto const& c : clauses) {
        if (c.family != l.gen.family || c.arity != l.gen.index.dim()) {
          continue;
        }
        std::vector<Rat> vars = stable.entries();
        vars.insert(vars.end(), l.gen.index.begin(), l.gen.index.end());
        RatVec vv(vars);
        if (!c.domain(vv)) {
          continue;
        }
        try {
          Word img = instantiate(c.image, vars);
          return l.exp == 1 ? img : realword::invert(img);
        } catch (DivisionByZero const&) {
          continue;
        }
      }
      if (fn) {
        return fn(l, stable);
      }
      return std::nullopt;
    }

    std::optional<Word> map_word(Word const& w, RatVec const& stable, bool fwd) const {
      Word out;
      for (auto const& l : w) {
        auto img = fwd ? forward(l, stable) : backward(l, stable);
        if (!img) {
          return std::nullopt;
        }
        out.append(*img);
      }
      return free_reduce(out);
    }
  };

  namespace detail {
    inline Template retag(Template t, long tag) {
      for (auto& l : t) {
        l.index.push_back(Expr(Rat(tag)));
      }
      return t;
    }

    inline Word retag(Word const& w, long tag) {
      Word out;
      for (auto const& l : w) {
        Letter m = l;
        m.gen.index.push_back(Rat(tag));
        out.push_back(std::move(m));
      }
      return out;
    }

    inline std::vector<Expr> vars(std::size_t from, std::size_t count) {
      std::vector<Expr> out;
      for (std::size_t i = 0; i < count; ++i) {
        out.push_back(Expr::var(from + i));
      }
      return out;
    }

    inline RelatorSchema retag(RelatorSchema s, long tag) {
      if (s.has_template()) {
        s.tmpl = retag(std::move(s.tmpl), tag);
      } else if (s.generator) {
        auto g = s.generator;
        s.generator = [g, tag](RatVec const& p) -> std::optional<Word> {
          auto w = g(p);
          if (!w) {
            return std::nullopt;
          }
          return retag(*w, tag);
        };
      }
      return s;
    }
  }  // namespace detail

  //! Generators of the i-th factor (i = 1, 2) of a free product.
  inline GenSym tag_generator(GenSym g, long factor) {
    g.index.push_back(Rat(factor));
    return g;
  }
  inline Word tag_word(Word const& w, long factor) {
    return detail::retag(w, factor);
  }

  //! G * H: every index gains a trailing component 1 or 2.
  inline Presentation free_product(Presentation const& p1, Presentation const& p2) {
    Presentation out;
    out.label = "(" + p1.label + " * " + p2.label + ")";
    out.dim = std::max(p1.dim, p2.dim) + 1;
    long tag = 1;
    for (Presentation const* p : {&p1, &p2}) {
      for (auto const& c : p->generators) {
        out.generators.push_back(GenClause{
            c.family, c.arity + 1,
            c.pred && eq(Expr::var(c.arity), Expr(Rat(tag)))});
      }
      for (auto const& s : p->relators) {
        auto r = detail::retag(s, tag);
        r.name = s.name + "." + std::to_string(tag);
        out.relators.push_back(std::move(r));
      }
      ++tag;
    }
    return out;
  }

  //! G *_A H: the free product plus phi(v) v^-1 for every generator v of A
  //! (described by clauses over the generators of p1). phi maps into p2.
  inline Presentation amalgamate(Presentation const& p1, Presentation const& p2,
                                 std::vector<GenClause> const& A_gens,
                                 IsoRealization const& iso) {
    Presentation out = free_product(p1, p2);
    out.label = "(" + p1.label + " *_A " + p2.label + ")";
    std::size_t k = 0;
    for (auto const& a : A_gens) {
      RelatorSchema s;
      s.name = "amalgam." + std::to_string(k++);
      s.arity = a.arity;
      LetterTemplate v_inv{a.family, detail::vars(0, a.arity), -1};
      auto clause = std::find_if(
          iso.forward_clauses.begin(), iso.forward_clauses.end(),
          [&](IsoClause const& c) { return c.family == a.family && c.arity == a.arity; });
      if (clause != iso.forward_clauses.end() && iso.template_expressible()) {
        s.tmpl = detail::retag(clause->image, 2);
        s.tmpl.push_back(detail::retag(Template{v_inv}, 1).front());
        s.constraint = a.pred && clause->domain;
        s.mode = Mode::decidable;
      } else {
        Family fam = a.family;
        s.constraint = a.pred;
        s.mode = Mode::enumerable;
        s.generator = [iso, fam](RatVec const& p) -> std::optional<Word> {
          Letter v{GenSym{fam, p}, 1};
          auto img = iso.forward(v);
          if (!img) {
            return std::nullopt;
          }
          Word w = tag_word(*img, 2);
          w.push_back(Letter{tag_generator(v.gen, 1), -1});
          return w;
        };
      }
      out.relators.push_back(std::move(s));
    }
    return out;
  }

  //! A family of stable letters f(v0..v_{arity-1}) with pred(v).
  struct StableFamily {
    Family family = Family::t;
    std::size_t arity = 0;
    Pred pred;
  };

  //! HNN extension with relators phi_t(v) . t . v^-1 . t^-1, i.e.
  //! t v t^-1 = phi_t(v), for every stable letter t of the family and every
  //! generator v in the domain of the (t-indexed) iso.
  inline Presentation hnn_extend(Presentation const& p, StableFamily const& letters,
                                 IsoRealization const& iso) {
    Presentation out = p;
    out.label = p.label + "*_" + family_name(letters.family);
    out.dim = std::max(p.dim, letters.arity);
    out.generators.push_back(GenClause{letters.family, letters.arity, letters.pred});
    std::size_t q = letters.arity;
    LetterTemplate t{letters.family, detail::vars(0, q), 1};
    std::size_t k = 0;
    for (auto const& c : iso.forward_clauses) {
      RelatorSchema s;
      s.name = std::string("hnn.") + family_name(letters.family) + "." + std::to_string(k++);
      s.arity = q + c.arity;
      s.tmpl = c.image;
      s.tmpl.push_back(t);
      s.tmpl.push_back(LetterTemplate{c.family, detail::vars(q, c.arity), -1});
      s.tmpl.push_back(t.inverse());
      s.constraint = letters.pred && c.domain;
      s.mode = iso.template_expressible() ? Mode::decidable : Mode::enumerable;
      out.relators.push_back(std::move(s));
    }
    return out;
  }

}  // namespace realword

#endif  // REALWORD_CONSTRUCTIONS_HPP_
