#ifndef REALWORD_PRESENTATION_HPP_
#define REALWORD_PRESENTATION_HPP_

// Presented groups <X | R> whose generator set X is a finite union of
// predicate-described families and whose relators are schemas: words whose
// letter indices are expressions in a parameter vector.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "enumerate.hpp"
#include "errors.hpp"
#include "predicate.hpp"
#include "word.hpp"

namespace realword {

  //! One letter of a relator schema; index entries are expressions in the
  //! schema parameters.
  struct LetterTemplate {
    Family family = Family::x;
    std::vector<Expr> index;
    int exp = 1;

    //! Raises DivisionByZero when an index expression is undefined.
    Letter instantiate(std::vector<Rat> const& params) const {
      RatVec idx;
      for (auto const& e : index) {
        idx.push_back(e.eval(params));
      }
      return Letter{GenSym{family, std::move(idx)}, exp};
    }

    LetterTemplate inverse() const {
      return LetterTemplate{family, index, -exp};
    }
  };

  using Template = std::vector<LetterTemplate>;

  inline LetterTemplate lt_pos(Family f, std::vector<Expr> index = {}) {
    return LetterTemplate{f, std::move(index), 1};
  }
  inline LetterTemplate lt_neg(Family f, std::vector<Expr> index = {}) {
    return LetterTemplate{f, std::move(index), -1};
  }

  inline Template invert(Template const& t) {
    Template out;
    for (auto it = t.rbegin(); it != t.rend(); ++it) {
      out.push_back(it->inverse());
    }
    return out;
  }

  inline Word instantiate(Template const& t, std::vector<Rat> const& params) {
    Word w;
    for (auto const& l : t) {
      w.push_back(l.instantiate(params));
    }
    return w;
  }

  //! Solves params so that the letters of `word` match `tmpl` letterwise
  //! from position `offset` of the template. Unresolved parameters stay
  //! unbound; nullopt means a definite mismatch.
  inline std::optional<Bindings> unify_letters(Template const& tmpl,
                                               std::size_t offset,
                                               std::vector<Letter> const& word,
                                               std::size_t from,
                                               std::size_t count,
                                               std::size_t arity) {
    Bindings b(arity);
    for (std::size_t k = 0; k < count; ++k) {
      auto const& t = tmpl[offset + k];
      auto const& l = word[from + k];
      if (t.family != l.gen.family || t.exp != l.exp
          || t.index.size() != l.gen.index.dim()) {
        return std::nullopt;
      }
    }
    bool progress = true, pending = true;
    while (progress && pending) {
      progress = pending = false;
      for (std::size_t k = 0; k < count; ++k) {
        auto const& t = tmpl[offset + k];
        auto const& l = word[from + k];
        for (std::size_t c = 0; c < t.index.size(); ++c) {
          std::size_t before = 0;
          for (auto const& x : b) {
            before += x.has_value();
          }
          switch (unify(t.index[c], l.gen.index[c], b)) {
            case Unify::fail:
              return std::nullopt;
            case Unify::defer:
              pending = true;
              break;
            case Unify::ok: {
              std::size_t after = 0;
              for (auto const& x : b) {
                after += x.has_value();
              }
              progress = progress || after > before;
              break;
            }
          }
        }
      }
    }
    if (b.size() > arity) {
      return std::nullopt;
    }
    return b;
  }

  //! A generator family: generators f(v0..v_{arity-1}) with pred(v).
  struct GenClause {
    Family family = Family::x;
    std::size_t arity = 0;
    Pred pred;

    bool contains(GenSym const& g) const {
      return g.family == family && g.index.dim() == arity && pred(g.index);
    }
  };

  enum class Mode { decidable, enumerable };

  //! A relator family { tmpl(p) : constraint(p) } over parameters p in
  //! Q^arity. A schema without template letters is produced by `generator`
  //! instead and can only be enumerated.
  struct RelatorSchema {
    std::string name;
    std::size_t arity = 0;
    Template tmpl;
    Pred constraint;
    Mode mode = Mode::decidable;
    std::function<std::optional<Word>(RatVec const&)> generator;

    bool has_template() const {
      return !tmpl.empty();
    }

    //! The instance at params, or nullopt when params violate the schema.
    std::optional<Word> instantiate(RatVec const& params) const {
      if (params.dim() != arity || !constraint(params)) {
        return std::nullopt;
      }
      if (!has_template()) {
        return generator ? generator(params) : std::nullopt;
      }
      try {
        return realword::instantiate(tmpl, params.entries());
      } catch (DivisionByZero const&) {
        return std::nullopt;
      }
    }

    //! Parameters p with instantiate(p) == w, if w matches the template.
    std::optional<RatVec> match(Word const& w) const {
      if (!has_template() || w.size() != tmpl.size()) {
        return std::nullopt;
      }
      auto b = unify_letters(tmpl, 0, w.letters(), 0, w.size(), arity);
      if (!b) {
        return std::nullopt;
      }
      RatVec params;
      for (auto const& x : *b) {
        if (!x) {
          return std::nullopt;
        }
        params.push_back(*x);
      }
      auto inst = instantiate(params);
      if (!inst || !(*inst == w)) {
        return std::nullopt;
      }
      return params;
    }
  };

  //! <X | R> with X inside a union of families of index dimension <= dim.
  struct Presentation {
    std::string label;
    std::size_t dim = 0;
    std::vector<GenClause> generators;
    std::vector<RelatorSchema> relators;

    bool serializable() const;
    nlohmann::json to_json() const;
    static Presentation from_json(nlohmann::json const& j);
  };

  inline bool check_generator(Presentation const& p, GenSym const& g) {
    if (g.index.dim() > p.dim) {
      throw ArityMismatch("generator " + g.str() + " has index arity "
                          + std::to_string(g.index.dim()) + " > dim "
                          + std::to_string(p.dim));
    }
    for (auto const& c : p.generators) {
      if (c.contains(g)) {
        return true;
      }
    }
    return false;
  }

  inline bool check_word_generators(Presentation const& p, Word const& w) {
    for (auto const& l : w) {
      if (!check_generator(p, l.gen)) {
        return false;
      }
    }
    return true;
  }

  struct RelatorInstance {
    std::size_t schema = 0;
    RatVec params;
    Word word;
  };

  //! First schema (in declaration order) matching w.
  inline std::optional<RelatorInstance> match_relator(Presentation const& p,
                                                      Word const& w) {
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
      if (auto params = p.relators[i].match(w)) {
        return RelatorInstance{i, *params, w};
      }
    }
    return std::nullopt;
  }

  inline bool check_relator(Presentation const& p, Word const& w) {
    for (auto const& s : p.relators) {
      if (s.mode == Mode::enumerable || !s.has_template()) {
        throw SemiDecidableOnly("relator schema '" + s.name
                                + "' is only enumerable");
      }
    }
    return match_relator(p, w).has_value();
  }

  //! The raw candidate at n: schema n mod |R| with parameters decoded from
  //! n div |R|; nullopt when the parameters violate the schema.
  inline std::optional<RelatorInstance> relator_candidate(Presentation const& p,
                                                          Index n) {
    if (p.relators.empty()) {
      return std::nullopt;
    }
    std::size_t si = n % p.relators.size();
    Index rest = n / p.relators.size();
    auto const& s = p.relators[si];
    RatVec params;
    if (s.arity == 0) {
      if (rest != 0) {
        return std::nullopt;
      }
    } else {
      for (Index e : unpair_tuple(rest, s.arity)) {
        params.push_back(enumerate_rationals(e));
      }
    }
    auto w = s.instantiate(params);
    if (!w) {
      return std::nullopt;
    }
    return RelatorInstance{si, std::move(params), std::move(*w)};
  }

  inline constexpr Index relator_scan_cap = 50'000'000;

  //! Sequential access to the relator enumeration.
  class RelatorStream {
   public:
    explicit RelatorStream(Presentation const& p) : _p(&p) {}

    //! The next instance; raises CapExceeded after relator_scan_cap raw
    //! candidates without a hit.
    RelatorInstance next() {
      if (_p->relators.empty()) {
        throw IndexError("presentation has no relators");
      }
      for (Index tried = 0; tried < relator_scan_cap; ++tried) {
        if (auto r = relator_candidate(*_p, _n++)) {
          return *r;
        }
      }
      throw CapExceeded("relator enumeration found no instance within the scan cap");
    }

   private:
    Presentation const* _p;
    Index _n = 0;
  };

  //! The index-th relator instance (0-based), skipping invalid parameters.
  inline Word enumerate_relators(Presentation const& p, Index index) {
    RelatorStream s(p);
    for (Index i = 0; i < index; ++i) {
      s.next();
    }
    return s.next().word;
  }

  ////////////////////////////////////////////////////////////////////////
  // JSON
  ////////////////////////////////////////////////////////////////////////

  inline nlohmann::json template_to_json(Template const& t) {
    auto arr = nlohmann::json::array();
    for (auto const& l : t) {
      auto idx = nlohmann::json::array();
      for (auto const& e : l.index) {
        idx.push_back(expr_to_json(e));
      }
      arr.push_back({{"family", family_name(l.family)}, {"index", idx}, {"exp", l.exp}});
    }
    return arr;
  }

  inline Family family_from_json(nlohmann::json const& j) {
    auto f = family_from_name(j.get<std::string>());
    if (!f) {
      throw ParseError("unknown family " + j.dump());
    }
    return *f;
  }

  inline Template template_from_json(nlohmann::json const& j) {
    Template t;
    for (auto const& l : j) {
      LetterTemplate lt;
      lt.family = family_from_json(l.at("family"));
      for (auto const& e : l.value("index", nlohmann::json::array())) {
        lt.index.push_back(expr_from_json(e));
      }
      lt.exp = l.value("exp", 1);
      if (lt.exp != 1 && lt.exp != -1) {
        throw ParseError("template exponent must be 1 or -1");
      }
      t.push_back(std::move(lt));
    }
    return t;
  }

  inline bool Presentation::serializable() const {
    for (auto const& c : generators) {
      if (!c.pred.serializable()) {
        return false;
      }
    }
    for (auto const& s : relators) {
      if (!s.has_template() || !s.constraint.serializable()) {
        return false;
      }
    }
    return true;
  }

  inline nlohmann::json Presentation::to_json() const {
    nlohmann::json j;
    j["label"] = label;
    j["dim"] = dim;
    j["generators"] = nlohmann::json::array();
    for (auto const& c : generators) {
      j["generators"].push_back(
          {{"family", family_name(c.family)}, {"arity", c.arity}, {"pred", c.pred.to_json()}});
    }
    j["relators"] = nlohmann::json::array();
    for (auto const& s : relators) {
      if (!s.has_template()) {
        throw Error("relator schema '" + s.name + "' has no template to serialize");
      }
      j["relators"].push_back({{"name", s.name},
                               {"arity", s.arity},
                               {"template", template_to_json(s.tmpl)},
                               {"constraint", s.constraint.to_json()},
                               {"mode", s.mode == Mode::decidable ? "decidable" : "enumerable"}});
    }
    return j;
  }

  inline Presentation Presentation::from_json(nlohmann::json const& j) {
    Presentation p;
    try {
      p.label = j.value("label", "");
      p.dim = j.at("dim").get<std::size_t>();
      for (auto const& c : j.at("generators")) {
        p.generators.push_back(GenClause{family_from_json(c.at("family")),
                                         c.at("arity").get<std::size_t>(),
                                         Pred::from_json(c.value("pred", nlohmann::json(true)))});
      }
      for (auto const& s : j.value("relators", nlohmann::json::array())) {
        RelatorSchema r;
        r.name = s.value("name", "");
        r.arity = s.at("arity").get<std::size_t>();
        r.tmpl = template_from_json(s.at("template"));
        r.constraint = Pred::from_json(s.value("constraint", nlohmann::json(true)));
        std::string mode = s.value("mode", "decidable");
        if (mode != "decidable" && mode != "enumerable") {
          throw ParseError("unknown relator mode '" + mode + "'");
        }
        r.mode = mode == "decidable" ? Mode::decidable : Mode::enumerable;
        if (r.tmpl.empty()) {
          throw ParseError("relator schema '" + r.name + "' has an empty template");
        }
        p.relators.push_back(std::move(r));
      }
    } catch (nlohmann::json::exception const& e) {
      throw ParseError(std::string("malformed presentation: ") + e.what());
    }
    return p;
  }

}  // namespace realword

#endif  // REALWORD_PRESENTATION_HPP_
