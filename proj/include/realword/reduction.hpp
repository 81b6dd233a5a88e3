#ifndef REALWORD_REDUCTION_HPP_
#define REALWORD_REDUCTION_HPP_

// From machines to groups. The ambient group is G, free on y and x(i, s);
// a path's operations become subgroups of G spanned by pattern words
// w_(r1..rD) (see pattern.hpp), and the extension C adds stable letters
//
//   a(i, t):  x(i, s) -> x(i, s + t)        m(i, t):  x(i, s) -> x(i, s * t)
//
// fixing every other generator. Halting of a machine on r is reduced to
// triviality of the commutator t . w_r . t^-1 . w_r^-1 in an HNN extension
// whose stable letter t centralises U = < w_r : the machine halts on r >.

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "britton.hpp"
#include "constructions.hpp"
#include "guard_transform.hpp"
#include "path.hpp"
#include "pattern.hpp"

namespace realword {

  ////////////////////////////////////////////////////////////////////////
  // G and C
  ////////////////////////////////////////////////////////////////////////

  //! G = < y, x(i, s) : i natural, s rational >, free.
  inline Presentation group_G() {
    Presentation p;
    p.label = "G";
    p.dim = 2;
    p.generators.push_back(GenClause{Family::x, 2, Pred::is_natural(v(0))});
    p.generators.push_back(GenClause{Family::y, 0, Pred(true)});
    return p;
  }

  //! y and x(i, s) with i <= d.
  inline bool in_H_le(GenSym const& g, std::size_t d) {
    if (g.family == Family::y) {
      return g.index.empty();
    }
    return g.family == Family::x && g.index.dim() == 2
           && g.index[0] <= Rat(static_cast<long>(d));
  }

  //! x(i, s) with i > d.
  inline bool in_H_gt(GenSym const& g, std::size_t d) {
    return g.family == Family::x && g.index.dim() == 2
           && g.index[0] > Rat(static_cast<long>(d));
  }

  //! Deletes the letters x(i, s) with i > d and freely reduces.
  inline Word project_H_le(Word const& w, std::size_t d) {
    Word out;
    for (auto const& l : w) {
      if (!in_H_gt(l.gen, d)) {
        out.push_back(l);
      }
    }
    return free_reduce(out);
  }

  inline GenSym a_letter(Rat i, Rat t) {
    return GenSym{Family::a, RatVec{std::move(i), std::move(t)}};
  }
  inline GenSym m_letter(Rat i, Rat t) {
    return GenSym{Family::m, RatVec{std::move(i), std::move(t)}};
  }

  //! The automorphism of G induced by conjugation with a(i, t) or m(i, t).
  inline Word stable_conjugate(GenSym const& letter, Word const& w) {
    if ((letter.family != Family::a && letter.family != Family::m)
        || letter.index.dim() != 2) {
      throw IndexError("not a stable letter of C: " + letter.str());
    }
    Rat const& i = letter.index[0];
    Rat const& t = letter.index[1];
    bool scale = letter.family == Family::m;
    if (scale && t.is_zero()) {
      throw ZeroScale();
    }
    Word out;
    for (auto const& l : w) {
      if (l.gen.family == Family::x && l.gen.index.dim() == 2 && l.gen.index[0] == i) {
        Rat s = scale ? l.gen.index[1] * t : l.gen.index[1] + t;
        out.push_back(Letter{xgen(i, std::move(s)), l.exp});
      } else {
        out.push_back(l);
      }
    }
    return out;
  }

  namespace detail {
    // Clauses over (i, t, j, s): x(j, s) -> x(j, f(s, t)) when j = i,
    // fixed when j != i, and y fixed.
    inline std::vector<IsoClause> slot_action(Expr image_same) {
      return {IsoClause{Family::x, 2, eq(v(2), v(0)),
                        {LetterTemplate{Family::x, {v(2), std::move(image_same)}, 1}}},
              IsoClause{Family::x, 2, ne(v(2), v(0)),
                        {LetterTemplate{Family::x, {v(2), v(3)}, 1}}},
              IsoClause{Family::y, 0, Pred(true), {LetterTemplate{Family::y, {}, 1}}}};
    }
  }  // namespace detail

  inline IsoRealization additive_action() {
    return {detail::slot_action(v(3) + v(1)), detail::slot_action(v(3) - v(1)), {}, {}};
  }

  inline IsoRealization multiplicative_action() {
    return {detail::slot_action(v(3) * v(1)), detail::slot_action(v(3) / v(1)), {}, {}};
  }

  //! C: the HNN extension of G by a(i, t) for all t and m(i, t) for t != 0.
  inline Presentation extension_C() {
    Presentation c = hnn_extend(group_G(), StableFamily{Family::a, 2, Pred::is_natural(v(0))},
                                additive_action());
    c = hnn_extend(c, StableFamily{Family::m, 2, Pred::is_natural(v(0)) && ne(v(1), 0)},
                   multiplicative_action());
    c.label = "C";
    return c;
  }

  ////////////////////////////////////////////////////////////////////////
  // Operation subgroups
  ////////////////////////////////////////////////////////////////////////

  inline char const* row_name(PathOp::Kind k) {
    switch (k) {
      case PathOp::Kind::copy:
        return "copy";
      case PathOp::Kind::assign:
        return "const";
      case PathOp::Kind::add:
        return "add";
      case PathOp::Kind::neg:
        return "neg";
      case PathOp::Kind::mul:
        return "mul";
      case PathOp::Kind::inv:
        return "inv";
      case PathOp::Kind::guard_geq:
        return "geq";
      case PathOp::Kind::guard_lt:
        return "lt";
    }
    return "?";
  }

  inline std::optional<PathOp::Kind> row_from_name(std::string const& s) {
    for (auto k : {PathOp::Kind::copy, PathOp::Kind::assign, PathOp::Kind::add,
                   PathOp::Kind::neg, PathOp::Kind::mul, PathOp::Kind::inv,
                   PathOp::Kind::guard_geq, PathOp::Kind::guard_lt}) {
      if (s == row_name(k)) {
        return k;
      }
    }
    return std::nullopt;
  }

  //! One stable letter a(slot, f(s)) or m(slot, f(s)) of a generator family.
  struct StableFactor {
    enum class Param { s, minus_s, inverse_s, twice_s, square_s };

    Family family = Family::a;
    std::size_t slot = 0;
    Param param = Param::s;

    GenSym at(Rat const& s) const {
      Rat t;
      switch (param) {
        case Param::s:
          t = s;
          break;
        case Param::minus_s:
          t = -s;
          break;
        case Param::inverse_s:
          t = Rat(1) / s;
          break;
        case Param::twice_s:
          t = Rat(2) * s;
          break;
        case Param::square_s:
          t = s * s;
          break;
      }
      return GenSym{family, RatVec{Rat(static_cast<long>(slot)), t}};
    }

    std::string str() const {
      static char const* names[] = {"s", "-s", "1/s", "2s", "s^2"};
      return std::string(family_name(family)) + "(" + std::to_string(slot) + ","
             + names[static_cast<int>(param)] + ")";
    }
  };

  //! { f1(s) . f2(s) ... : s in domain }, a generating family of L_o.
  struct LGenFamily {
    enum class Domain { any, nonzero, positive };

    std::vector<StableFactor> factors;
    Domain domain = Domain::any;

    bool admits(Rat const& s) const {
      switch (domain) {
        case Domain::any:
          return true;
        case Domain::nonzero:
          return !s.is_zero();
        case Domain::positive:
          return s.sign() > 0;
      }
      return false;
    }

    std::vector<GenSym> letters(Rat const& s) const {
      std::vector<GenSym> out;
      for (auto const& f : factors) {
        out.push_back(f.at(s));
      }
      return out;
    }

    std::string str() const {
      std::string out;
      for (std::size_t k = 0; k < factors.size(); ++k) {
        out += (k ? "." : "") + factors[k].str();
      }
      static char const* doms[] = {"", " : s != 0", " : s > 0"};
      return out + doms[static_cast<int>(domain)];
    }
  };

  //! W_o = < w_r : W_pred(r) > inside G and its generators L_o inside C:
  //! the base word, the paired families, and a(l, s) for every free slot l.
  struct OpSubgroupSpec {
    PathOp op;
    std::size_t d = 0, D = 0;
    Pred W_pred;
    RatVec base;
    std::vector<LGenFamily> gens;
    std::vector<std::size_t> free_slots;

    Word base_word() const {
      return encode_w(base);
    }

    std::string str() const {
      std::string out = std::string(row_name(op.kind)) + " [" + op.str() + "]  W: "
                        + W_pred.str() + "  L: < w" + base.str();
      for (auto const& g : gens) {
        out += " ; " + g.str();
      }
      if (!free_slots.empty()) {
        out += " ; a(l,s) : l in {";
        for (std::size_t k = 0; k < free_slots.size(); ++k) {
          out += (k ? "," : "") + std::to_string(free_slots[k]);
        }
        out += "}";
      }
      return out + " >";
    }
  };

  //! Raises IndexError unless the op's operands precede its target and all
  //! indices lie in 1..D.
  inline OpSubgroupSpec build_W(PathOp const& op, std::size_t d, std::size_t D) {
    using K = PathOp::Kind;
    auto in_range = [&](std::size_t x) { return x >= 1 && x <= D; };
    bool unary = op.kind == K::copy || op.kind == K::neg || op.kind == K::inv;
    bool binary = op.kind == K::add || op.kind == K::mul;
    bool ok = true;
    if (op.is_guard()) {
      ok = in_range(op.j);
    } else {
      ok = in_range(op.i) && op.i > d;
      if (unary || binary) {
        ok = ok && in_range(op.j) && op.j < op.i;
      }
      if (binary) {
        ok = ok && in_range(op.k) && op.k < op.i;
      }
    }
    if (!ok) {
      throw IndexError("malformed operation " + op.str() + " for d=" + std::to_string(d)
                       + " D=" + std::to_string(D));
    }

    OpSubgroupSpec spec;
    spec.op = op;
    spec.d = d;
    spec.D = D;
    spec.base = RatVec(std::vector<Rat>(D, Rat(0)));
    auto var = [](std::size_t slot) { return v(slot - 1); };
    auto A = [](std::size_t slot, StableFactor::Param p = StableFactor::Param::s) {
      return StableFactor{Family::a, slot, p};
    };
    auto M = [](std::size_t slot, StableFactor::Param p = StableFactor::Param::s) {
      return StableFactor{Family::m, slot, p};
    };
    using P = StableFactor::Param;
    using Dom = LGenFamily::Domain;
    std::set<std::size_t> involved;

    switch (op.kind) {
      case K::copy:
        spec.W_pred = eq(var(op.i), var(op.j));
        spec.gens = {{{A(op.i), A(op.j)}, Dom::any}};
        involved = {op.i, op.j};
        break;
      case K::assign:
        spec.W_pred = eq(var(op.i), Expr(op.alpha));
        spec.base[op.i - 1] = op.alpha;
        involved = {op.i};
        break;
      case K::add:
        spec.W_pred = eq(var(op.i), var(op.j) + var(op.k));
        if (op.j == op.k) {
          spec.gens = {{{A(op.i, P::twice_s), A(op.j)}, Dom::any}};
        } else {
          spec.gens = {{{A(op.i), A(op.j)}, Dom::any}, {{A(op.i), A(op.k)}, Dom::any}};
        }
        involved = {op.i, op.j, op.k};
        break;
      case K::neg:
        spec.W_pred = eq(var(op.i), -var(op.j));
        spec.gens = {{{A(op.i), A(op.j, P::minus_s)}, Dom::any}};
        involved = {op.i, op.j};
        break;
      case K::mul:
        spec.W_pred = eq(var(op.i), var(op.j) * var(op.k)) && ne(var(op.j), 0)
                      && ne(var(op.k), 0);
        if (op.j == op.k) {
          spec.gens = {{{M(op.i, P::square_s), M(op.j)}, Dom::nonzero}};
        } else {
          spec.gens = {{{M(op.i), M(op.j)}, Dom::nonzero}, {{M(op.i), M(op.k)}, Dom::nonzero}};
        }
        involved = {op.i, op.j, op.k};
        for (auto x : involved) {
          spec.base[x - 1] = Rat(1);
        }
        break;
      case K::inv:
        spec.W_pred = eq(var(op.i) * var(op.j), 1);
        spec.gens = {{{M(op.i), M(op.j, P::inverse_s)}, Dom::nonzero}};
        involved = {op.i, op.j};
        spec.base[op.i - 1] = Rat(1);
        spec.base[op.j - 1] = Rat(1);
        break;
      case K::guard_geq:
        spec.W_pred = ge(var(op.j), 0);
        spec.gens = {{{A(op.j)}, Dom::positive}};
        involved = {op.j};
        break;
      case K::guard_lt:
        spec.W_pred = lt(var(op.j), 0);
        spec.gens = {{{M(op.j)}, Dom::positive}};
        involved = {op.j};
        spec.base[op.j - 1] = Rat(-1);
        break;
    }
    for (std::size_t l = 1; l <= D; ++l) {
      if (!involved.count(l)) {
        spec.free_slots.push_back(l);
      }
    }
    return spec;
  }

  //! w is a product of pattern words w_r of dimension D with W_pred(r).
  inline bool W_membership(OpSubgroupSpec const& spec, Word const& w) {
    auto fs = nielsen_decompose(free_reduce(w));
    if (!fs) {
      return false;
    }
    for (auto const& f : *fs) {
      if (f.r.dim() != spec.D || !spec.W_pred(f.r)) {
        return false;
      }
    }
    return true;
  }

  //! One conjugation step: the letters of gens[family] at s, or a(slot, s)
  //! for a free slot when family is empty.
  struct LMove {
    std::optional<std::size_t> family;
    std::size_t slot = 0;
    Rat s;
  };

  struct LReach {
    bool reached = false;
    std::vector<LMove> moves;
    //! For NotReached: the violated invariant.
    std::string reason;
  };

  inline std::vector<GenSym> move_letters(OpSubgroupSpec const& spec, LMove const& m) {
    if (m.family) {
      return spec.gens.at(*m.family).letters(m.s);
    }
    return {a_letter(Rat(static_cast<long>(m.slot)), m.s)};
  }

  //! Applies the moves to the base word in order.
  inline Word replay_moves(OpSubgroupSpec const& spec, std::vector<LMove> const& moves) {
    Word w = spec.base_word();
    for (auto const& m : moves) {
      for (auto const& g : move_letters(spec, m)) {
        w = stable_conjugate(g, w);
      }
    }
    return w;
  }

  //! Solves for conjugations taking the base word of spec to the pattern
  //! word w. Each row preserves an invariant of the base word; NotReached
  //! names it when w violates it. More than `budget` moves is NotReached.
  inline LReach L_reachability_check(OpSubgroupSpec const& spec, Word const& w,
                                     std::size_t budget = 64) {
    using K = PathOp::Kind;
    LReach res;
    auto r = match_encode_w(free_reduce(w));
    if (!r || r->dim() != spec.D) {
      res.reason = "not a pattern word of dimension " + std::to_string(spec.D);
      return res;
    }
    auto const& op = spec.op;
    auto at = [&](std::size_t slot) -> Rat const& { return (*r)[slot - 1]; };
    auto fail = [&](std::string why) {
      res.reason = std::move(why);
      return res;
    };
    auto move = [&](std::size_t family, Rat s, Rat const& neutral) {
      if (!(s == neutral)) {
        res.moves.push_back({family, 0, std::move(s)});
      }
    };

    switch (op.kind) {
      case K::copy:
        if (!(at(op.i) == at(op.j))) {
          return fail("r_i - r_j = 0 is invariant");
        }
        move(0, at(op.i), Rat(0));
        break;
      case K::assign:
        if (!(at(op.i) == op.alpha)) {
          return fail("r_i = " + op.alpha.str() + " is invariant");
        }
        break;
      case K::add:
        if (op.j == op.k) {
          if (!(at(op.i) == Rat(2) * at(op.j))) {
            return fail("r_i - 2 r_j = 0 is invariant");
          }
          move(0, at(op.j), Rat(0));
        } else {
          if (!(at(op.i) == at(op.j) + at(op.k))) {
            return fail("r_i - r_j - r_k = 0 is invariant");
          }
          move(0, at(op.j), Rat(0));
          move(1, at(op.k), Rat(0));
        }
        break;
      case K::neg:
        if (!(at(op.i) == -at(op.j))) {
          return fail("r_i + r_j = 0 is invariant");
        }
        move(0, at(op.i), Rat(0));
        break;
      case K::mul:
        if (at(op.j).is_zero() || at(op.k).is_zero()) {
          return fail("r_j, r_k != 0 is invariant under nonzero scaling");
        }
        if (op.j == op.k) {
          if (!(at(op.i) == at(op.j) * at(op.j))) {
            return fail("r_i / r_j^2 = 1 is invariant");
          }
          move(0, at(op.j), Rat(1));
        } else {
          if (!(at(op.i) == at(op.j) * at(op.k))) {
            return fail("r_i / (r_j r_k) = 1 is invariant");
          }
          move(0, at(op.j), Rat(1));
          move(1, at(op.k), Rat(1));
        }
        break;
      case K::inv:
        if (at(op.j).is_zero() || !(at(op.i) * at(op.j) == Rat(1))) {
          return fail("r_i r_j = 1 is invariant");
        }
        move(0, at(op.i), Rat(1));
        break;
      case K::guard_geq:
        if (at(op.j).sign() < 0) {
          return fail("r_j >= 0 is invariant under positive shifts");
        }
        move(0, at(op.j), Rat(0));
        break;
      case K::guard_lt:
        if (at(op.j).sign() >= 0) {
          return fail("r_j < 0 is invariant under positive scaling");
        }
        move(0, -at(op.j), Rat(1));
        break;
    }
    for (auto l : spec.free_slots) {
      Rat shift = at(l) - spec.base[l - 1];
      if (!shift.is_zero()) {
        res.moves.push_back({std::nullopt, l, std::move(shift)});
      }
    }
    for (auto const& m : res.moves) {
      if (m.family && !spec.gens[*m.family].admits(m.s)) {
        res.moves.clear();
        return fail("parameter " + m.s.str() + " outside the family's domain");
      }
    }
    if (res.moves.size() > budget) {
      res.moves.clear();
      return fail("more than " + std::to_string(budget) + " moves needed");
    }
    if (!(replay_moves(spec, res.moves) == free_reduce(w))) {
      throw Error("L-reachability solve does not replay to " + w.str());
    }
    res.reached = true;
    return res;
  }

  ////////////////////////////////////////////////////////////////////////
  // V_gamma, U_gamma
  ////////////////////////////////////////////////////////////////////////

  //! s satisfies the condition of every operation of the path.
  inline bool V_membership(Path const& path, RatVec const& s) {
    if (s.dim() != path.D) {
      throw ArityMismatch("V_membership expects " + std::to_string(path.D)
                          + " coordinates, got " + std::to_string(s.dim()));
    }
    for (auto const& op : path.ops) {
      if (!build_W(op, path.d, path.D).W_pred(s)) {
        return false;
      }
    }
    return true;
  }

  //! w is a product of pattern words w_r, r of dimension d in A_gamma.
  inline bool U_membership(Path const& path, Word const& w) {
    auto fs = nielsen_decompose(free_reduce(w));
    if (!fs) {
      return false;
    }
    for (auto const& f : *fs) {
      if (f.r.dim() != path.d || !path_membership(path, f.r)) {
        return false;
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // U for a whole machine
  ////////////////////////////////////////////////////////////////////////

  enum class UVerdict { member, non_member, not_found_within_fuel };

  inline char const* verdict_name(UVerdict v) {
    switch (v) {
      case UVerdict::member:
        return "member";
      case UVerdict::non_member:
        return "non-member";
      case UVerdict::not_found_within_fuel:
        return "not-found-within-fuel";
    }
    return "?";
  }

  struct UFactorWitness {
    int eps = 1;
    RatVec r;
    PathWitness witness;
    //! w_(n, r), the tagged generator of U_n.
    Word tagged;
  };

  struct UMembership {
    UVerdict verdict = UVerdict::not_found_within_fuel;
    std::vector<UFactorWitness> factors;
  };

  //! U = < w_r : the machine halts on r >, as a semi-decidable membership
  //! test. The union over paths gamma_n is searched for each pattern
  //! factor; the tag x(0, n) of w_(n, r) is then eliminated again.
  class UHandle {
   public:
    explicit UHandle(BssProgram guarded) : _program(std::move(guarded)) {}

    BssProgram const& program() const {
      return _program;
    }

    std::optional<Path> path(Index n) const {
      return enumerate_paths(_program, n);
    }

    static Word tagged(Index n, RatVec const& r) {
      return encode_w_tagged(n, r);
    }

    //! Deletes the tag letters x(0, n) and freely reduces.
    static Word untag(Word const& w) {
      Word out;
      for (auto const& l : w) {
        bool tag = l.gen.family == Family::x && l.gen.index.dim() == 2
                   && l.gen.index[0].is_zero();
        if (!tag) {
          out.push_back(l);
        }
      }
      return free_reduce(out);
    }

    UMembership member(Word const& w, Index fuel) const {
      UMembership res;
      auto fs = nielsen_decompose(free_reduce(w));
      if (!fs) {
        res.verdict = UVerdict::non_member;
        return res;
      }
      for (auto const& f : *fs) {
        auto wit = find_path_witness(_program, f.r, fuel);
        if (!wit) {
          res.verdict = UVerdict::not_found_within_fuel;
          return res;
        }
        auto listed = path(wit->n);
        if (!listed || !(*listed == wit->path) || !path_membership(wit->path, f.r)) {
          throw Error("path witness " + std::to_string(wit->n) + " does not check out");
        }
        Word t = tagged(wit->n, f.r);
        if (!(untag(t) == encode_w(f.r))) {
          throw Error("tag elimination failed for " + t.str());
        }
        res.factors.push_back({f.eps, f.r, std::move(*wit), std::move(t)});
      }
      res.verdict = UVerdict::member;
      return res;
    }

   private:
    BssProgram _program;
  };

  //! Guards multiplications and divisions, then wraps the program.
  inline UHandle assemble_U(BssProgram const& program) {
    return UHandle(mult_guard_transform(program));
  }

  ////////////////////////////////////////////////////////////////////////
  // The reduction
  ////////////////////////////////////////////////////////////////////////

  inline GenSym reduction_stable_letter() {
    return gen(Family::t);
  }

  struct ReductionQuery {
    Word query;
    Word commutator;
  };

  inline ReductionQuery reduce_halting(BssProgram const&, RatVec const& r) {
    Word q = encode_w(r);
    Letter t = pos(reduction_stable_letter());
    Word c{t};
    c.append(q);
    c.push_back(t.inverse());
    c.append(invert(q));
    return {q, c};
  }

  //! The HNN extension of G by t with t g t^-1 = g for g in U. With `fault`
  //! the isomorphism is deliberately wrong (g -> g . y).
  inline HnnStructure reduction_structure(UHandle const& u, Index fuel, bool fault = false) {
    auto handle = std::make_shared<UHandle>(u);
    HnnStructure h;
    h.label = "G*_U";
    h.base_identity = [](Word const& w) -> Tri { return free_reduce(w).empty(); };
    StableLetterSpec s;
    s.family = Family::t;
    s.arity = 0;
    auto in_U = [handle, fuel](Word const& g, RatVec const&) -> Tri {
      switch (handle->member(g, fuel).verdict) {
        case UVerdict::member:
          return true;
        case UVerdict::non_member:
          return false;
        case UVerdict::not_found_within_fuel:
          return std::nullopt;
      }
      return std::nullopt;
    };
    s.in_A = in_U;
    s.in_B = in_U;
    s.phi = [fault](Word const& g, RatVec const&) -> std::optional<Word> {
      Word out = g;
      if (fault) {
        out.push_back(pos(gen(Family::y)));
      }
      return free_reduce(out);
    };
    s.phi_inverse = s.phi;
    h.stable.push_back(std::move(s));
    return h;
  }

  enum class GroupSide { identity, not_identity, inconclusive };

  inline char const* group_side_name(GroupSide g) {
    switch (g) {
      case GroupSide::identity:
        return "identity";
      case GroupSide::not_identity:
        return "not-identity";
      case GroupSide::inconclusive:
        return "inconclusive";
    }
    return "?";
  }

  struct ReductionRecord {
    RatVec input;
    bool halted = false;
    Index steps = 0;
    GroupSide group = GroupSide::inconclusive;
    ReductionQuery words;

    bool conclusive() const {
      return halted || group != GroupSide::inconclusive;
    }
    bool agree() const {
      return halted ? group == GroupSide::identity : group != GroupSide::identity;
    }
  };

  struct ReductionReport {
    std::vector<ReductionRecord> records;

    std::size_t disagreements() const {
      std::size_t n = 0;
      for (auto const& r : records) {
        n += r.agree() ? 0 : 1;
      }
      return n;
    }
  };

  //! Simulation against the group side for each input, both at `fuel`.
  inline ReductionReport check_reduction(BssProgram const& program,
                                         std::vector<RatVec> const& inputs, Index fuel,
                                         bool fault = false) {
    UHandle u = assemble_U(program);
    HnnStructure h = reduction_structure(u, fuel, fault);
    ReductionReport rep;
    for (auto const& x : inputs) {
      ReductionRecord rec;
      rec.input = x;
      auto sim = run(program, x, fuel, false);
      rec.halted = sim.halted();
      rec.steps = sim.steps;
      rec.words = reduce_halting(program, x);
      try {
        rec.group = hnn_is_identity(h, rec.words.commutator) ? GroupSide::identity
                                                             : GroupSide::not_identity;
      } catch (OracleUndefined const&) {
        rec.group = GroupSide::inconclusive;
      }
      rep.records.push_back(std::move(rec));
    }
    return rep;
  }

  ////////////////////////////////////////////////////////////////////////
  // Constant hygiene
  ////////////////////////////////////////////////////////////////////////

  //! The second index components s of the letters x(i, s) of w.
  inline std::set<Rat> x_values(Word const& w) {
    std::set<Rat> out;
    for (auto const& l : w) {
      if (l.gen.family == Family::x && l.gen.index.dim() == 2) {
        out.insert(l.gen.index[1]);
      }
    }
    return out;
  }

  //! Constants assigned along a path.
  inline std::set<Rat> path_constants(Path const& p) {
    std::set<Rat> out;
    for (auto const& o : p.ops) {
      if (o.kind == PathOp::Kind::assign) {
        out.insert(o.alpha);
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Coherence of the operation table
  ////////////////////////////////////////////////////////////////////////

  struct OpTableReport {
    std::string row;
    std::size_t positives = 0, negatives = 0, random_checks = 0;
    std::vector<std::string> failures;

    bool ok() const {
      return failures.empty();
    }
  };

  namespace detail {
    inline Rat random_rat(std::mt19937_64& g) {
      std::uniform_int_distribution<long> num(-20, 20), den(1, 6);
      return Rat(num(g), den(g));
    }
    inline Rat random_nonzero(std::mt19937_64& g) {
      Rat r;
      do {
        r = random_rat(g);
      } while (r.is_zero());
      return r;
    }
  }  // namespace detail

  //! Random instances of one row: positive ones are in W and reached from
  //! the base word; negative ones violate the row's invariant and are
  //! neither; on unconstrained random vectors membership matches W_pred.
  inline OpTableReport op_table_check(PathOp::Kind row, std::size_t positives,
                                     std::size_t negatives, std::uint64_t seed) {
    using K = PathOp::Kind;
    OpTableReport rep;
    rep.row = row_name(row);
    std::mt19937_64 g(seed);
    auto pick = [&](std::size_t lo, std::size_t hi) {
      return std::uniform_int_distribution<std::size_t>(lo, hi)(g);
    };
    auto fail = [&](std::string what, OpSubgroupSpec const& spec, RatVec const& s) {
      rep.failures.push_back(what + ": " + spec.op.str() + " D=" + std::to_string(spec.D)
                             + " s=" + s.str());
    };

    for (std::size_t n = 0; n < positives + negatives; ++n) {
      bool positive = n < positives;
      std::size_t D = pick(3, 5);
      std::size_t i = pick(2, D), j = pick(1, i - 1), k = pick(1, i - 1);
      PathOp op;
      switch (row) {
        case K::copy:
          op = PathOp::copy(i, j);
          break;
        case K::assign:
          op = PathOp::assign(i, detail::random_rat(g));
          break;
        case K::add:
          op = PathOp::add(i, j, k);
          break;
        case K::neg:
          op = PathOp::neg(i, j);
          break;
        case K::mul:
          op = PathOp::mul(i, j, k);
          break;
        case K::inv:
          op = PathOp::inv(i, j);
          break;
        case K::guard_geq:
          op = PathOp::guard_geq(pick(1, D));
          break;
        case K::guard_lt:
          op = PathOp::guard_lt(pick(1, D));
          break;
      }
      auto spec = build_W(op, 0, D);
      std::vector<Rat> s;
      for (std::size_t l = 0; l < D; ++l) {
        s.push_back(detail::random_rat(g));
      }

      // unconstrained vector
      {
        RatVec rv(s);
        ++rep.random_checks;
        if (W_membership(spec, encode_w(rv)) != spec.W_pred(rv)) {
          fail("membership differs from predicate", spec, rv);
        }
      }

      auto S = [&](std::size_t slot) -> Rat& { return s[slot - 1]; };
      Rat bump = detail::random_nonzero(g);
      switch (row) {
        case K::copy:
          S(i) = S(j) + (positive ? Rat(0) : bump);
          break;
        case K::assign:
          S(i) = op.alpha + (positive ? Rat(0) : bump);
          break;
        case K::add:
          S(i) = S(j) + S(k) + (positive ? Rat(0) : bump);
          break;
        case K::neg:
          S(i) = -S(j) + (positive ? Rat(0) : bump);
          break;
        case K::mul:
          S(j) = detail::random_nonzero(g);
          S(k) = detail::random_nonzero(g);
          if (positive) {
            S(i) = S(j) * S(k);
          } else if (n % 2 == 0) {
            S(k) = Rat(0);
            S(i) = Rat(0);
          } else {
            S(i) = S(j) * S(k) + bump;
          }
          break;
        case K::inv:
          S(j) = detail::random_nonzero(g);
          if (positive) {
            S(i) = Rat(1) / S(j);
          } else if (n % 2 == 0) {
            S(j) = Rat(0);
          } else {
            S(i) = Rat(1) / S(j) + bump;
          }
          break;
        case K::guard_geq: {
          Rat x = S(op.j).sign() < 0 ? -S(op.j) : S(op.j);
          S(op.j) = positive ? (n % 5 == 0 ? Rat(0) : x) : -x - Rat(1, 3);
          break;
        }
        case K::guard_lt: {
          Rat x = S(op.j).sign() < 0 ? -S(op.j) : S(op.j);
          S(op.j) = positive ? -x - Rat(1, 3) : (n % 5 == 0 ? Rat(0) : x);
          break;
        }
      }
      RatVec sv(s);
      Word w = encode_w(sv);
      bool pred = spec.W_pred(sv);
      bool member = W_membership(spec, w);
      auto reach = L_reachability_check(spec, w);
      if (positive) {
        ++rep.positives;
        if (!pred || !member || !reach.reached) {
          fail("positive instance rejected", spec, sv);
        }
      } else {
        ++rep.negatives;
        if (pred || member || reach.reached) {
          fail("negative instance accepted", spec, sv);
        }
      }
    }
    return rep;
  }

}  // namespace realword

#endif  // REALWORD_REDUCTION_HPP_
