#ifndef REALWORD_GROUPS_HPP_
#define REALWORD_GROUPS_HPP_

// Example presented groups over Q together with word-problem oracles that
// do not use the presentation: circle, torus, the Weil presentation of
// SL2, two presentations of (Q, +), and a group with x_r = x_0 <=> r in Q.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "presentation.hpp"
#include "wordproblem.hpp"

namespace realword {

  inline Presentation free_presentation(std::size_t dim = 1) {
    Presentation p;
    p.label = "free";
    p.dim = dim;
    p.generators.push_back(GenClause{Family::x, dim, Pred(true)});
    return p;
  }

  namespace detail {
    inline Pred nonzero_pair(std::size_t i) {
      return ne(v(i), 0) || ne(v(i + 1), 0);
    }
  }  // namespace detail

  ////////////////////////////////////////////////////////////////////////
  // Circle: x(r,s) for (r,s) != 0; R1 identifies points on a ray, R2
  // multiplies unit vectors as complex numbers.
  ////////////////////////////////////////////////////////////////////////

  inline Presentation circle_presentation() {
    Presentation p;
    p.label = "circle";
    p.dim = 2;
    p.generators.push_back(GenClause{Family::x, 2, detail::nonzero_pair(0)});

    RelatorSchema r1;
    r1.name = "R1";
    r1.arity = 4;  // r, s, a, b
    r1.tmpl = {lt_pos(Family::x, {v(0), v(1)}), lt_neg(Family::x, {v(2), v(3)})};
    r1.constraint = Pred::all({detail::nonzero_pair(0), detail::nonzero_pair(2),
                               eq(v(0) * v(3), v(1) * v(2)), gt(v(2) * v(0), 0)});
    p.relators.push_back(r1);

    RelatorSchema r2;
    r2.name = "R2";
    r2.arity = 6;  // r, s, a, b, u, v
    r2.tmpl = {lt_pos(Family::x, {v(0), v(1)}), lt_pos(Family::x, {v(2), v(3)}),
               lt_neg(Family::x, {v(4), v(5)})};
    r2.constraint = Pred::all({detail::nonzero_pair(0), detail::nonzero_pair(2),
                               detail::nonzero_pair(4),
                               eq(v(0) * v(0) + v(1) * v(1), 1),
                               eq(v(2) * v(2) + v(3) * v(3), 1),
                               eq(v(4), v(0) * v(2) - v(1) * v(3)),
                               eq(v(5), v(0) * v(3) + v(1) * v(2))});
    p.relators.push_back(r2);
    return p;
  }

  //! A point of the circle, represented by any vector on its ray.
  struct CircleElem {
    Rat r = 1, s = 0;

    CircleElem operator*(CircleElem const& o) const {
      return {r * o.r - s * o.s, r * o.s + s * o.r};
    }
    //! The conjugate lies on the ray of the inverse.
    CircleElem inverse() const {
      return {r, -s};
    }
    bool is_identity() const {
      return s.is_zero() && r.sign() > 0;
    }
    //! The literal R1 condition rb = sa and ar > 0. Points on the imaginary
    //! axis (r = a = 0) are never R1-related, even on the same ray.
    bool equivalent(CircleElem const& o) const {
      return r * o.s == s * o.r && (r * o.r).sign() > 0;
    }
    bool same_ray(CircleElem const& o) const {
      return r * o.s == s * o.r && (r * o.r + s * o.s).sign() > 0;
    }
  };

  inline bool circle_wp(Word const& w) {
    CircleElem acc;
    for (auto const& l : w) {
      if (l.gen.family != Family::x || l.gen.index.dim() != 2
          || (l.gen.index[0].is_zero() && l.gen.index[1].is_zero())) {
        throw IndexError("not a circle generator: " + l.gen.str());
      }
      CircleElem e{l.gen.index[0], l.gen.index[1]};
      acc = acc * (l.exp == 1 ? e : e.inverse());
    }
    return acc.is_identity();
  }

  ////////////////////////////////////////////////////////////////////////
  // Torus: x(t) with x_t = x_(t+1), x_t x_s = x_(t+s).
  ////////////////////////////////////////////////////////////////////////

  inline Presentation torus_presentation() {
    Presentation p;
    p.label = "torus";
    p.dim = 1;
    p.generators.push_back(GenClause{Family::x, 1, Pred(true)});
    RelatorSchema t1;
    t1.name = "T1";
    t1.arity = 1;
    t1.tmpl = {lt_pos(Family::x, {v(0)}), lt_neg(Family::x, {v(0) + 1})};
    p.relators.push_back(t1);
    RelatorSchema t2;
    t2.name = "T2";
    t2.arity = 2;
    t2.tmpl = {lt_pos(Family::x, {v(0)}), lt_pos(Family::x, {v(1)}),
               lt_neg(Family::x, {v(0) + v(1)})};
    p.relators.push_back(t2);
    return p;
  }

  namespace detail {
    inline Rat signed_index_sum(Word const& w, char const* what) {
      Rat sum(0);
      for (auto const& l : w) {
        if (l.gen.family != Family::x || l.gen.index.dim() != 1) {
          throw IndexError(std::string("not a ") + what + " generator: " + l.gen.str());
        }
        sum += l.exp == 1 ? l.gen.index[0] : -l.gen.index[0];
      }
      return sum;
    }
  }  // namespace detail

  inline bool torus_wp(Word const& w) {
    return detail::signed_index_sum(w, "torus").is_integer();
  }

  ////////////////////////////////////////////////////////////////////////
  // Weil presentation of SL2: x(b) stands for U(b), y for V.
  ////////////////////////////////////////////////////////////////////////

  namespace weil {
    inline LetterTemplate U(Expr b, int exp = 1) {
      return LetterTemplate{Family::x, {std::move(b)}, exp};
    }
    inline LetterTemplate V(int exp = 1) {
      return LetterTemplate{Family::y, {}, exp};
    }
    //! S(a) = V U(1/a) V U(a) V U(1/a)
    inline Template S(Expr const& a) {
      Expr ia = Expr(1) / a;
      return {V(), U(ia), V(), U(a), V(), U(ia)};
    }
    inline Template cat(std::vector<Template> const& parts) {
      Template out;
      for (auto const& t : parts) {
        out.insert(out.end(), t.begin(), t.end());
      }
      return out;
    }

    inline Word u(Rat b, int exp = 1) {
      return Word{Letter{GenSym{Family::x, RatVec{std::move(b)}}, exp}};
    }
    inline Word vv(int exp = 1) {
      return Word{Letter{GenSym{Family::y, {}}, exp}};
    }
    inline Word s(Rat const& a) {
      return instantiate(S(v(0)), {a});
    }
  }  // namespace weil

  inline Presentation sl2_presentation() {
    using namespace weil;
    Presentation p;
    p.label = "sl2-weil";
    p.dim = 1;
    p.generators.push_back(GenClause{Family::x, 1, Pred(true)});
    p.generators.push_back(GenClause{Family::y, 0, Pred(true)});

    RelatorSchema sl1;
    sl1.name = "SL1";
    sl1.arity = 2;
    sl1.tmpl = {U(v(0)), U(v(1)), U(v(0) + v(1), -1)};
    p.relators.push_back(sl1);

    RelatorSchema sl2;
    sl2.name = "SL2";
    sl2.arity = 2;
    sl2.tmpl = cat({S(v(0)), S(v(1)), invert(S(v(0) * v(1)))});
    sl2.constraint = ne(v(0), 0) && ne(v(1), 0);
    p.relators.push_back(sl2);

    RelatorSchema sl3;
    sl3.name = "SL3";
    sl3.arity = 0;
    sl3.tmpl = cat({{V(), V()}, invert(S(Expr(-1)))});
    p.relators.push_back(sl3);

    RelatorSchema sl4;
    sl4.name = "SL4";
    sl4.arity = 2;
    sl4.tmpl = cat({S(v(0)), {U(v(1))}, S(Expr(1) / v(0)), {U(v(1) * v(0) * v(0), -1)}});
    sl4.constraint = ne(v(0), 0);
    p.relators.push_back(sl4);
    return p;
  }

  struct Mat2 {
    std::array<Rat, 4> m{Rat(1), Rat(0), Rat(0), Rat(1)};  // row major

    Mat2 operator*(Mat2 const& o) const {
      return {{m[0] * o.m[0] + m[1] * o.m[2], m[0] * o.m[1] + m[1] * o.m[3],
               m[2] * o.m[0] + m[3] * o.m[2], m[2] * o.m[1] + m[3] * o.m[3]}};
    }
    Rat det() const {
      return m[0] * m[3] - m[1] * m[2];
    }
    //! Inverse of a determinant-one matrix.
    Mat2 inverse_sl() const {
      return {{m[3], -m[1], -m[2], m[0]}};
    }
    bool is_identity() const {
      return *this == Mat2();
    }
    friend bool operator==(Mat2 const&, Mat2 const&) = default;
  };

  //! The natural homomorphism into SL2(Q).
  inline Mat2 sl2_eval(Word const& w) {
    Mat2 acc;
    for (auto const& l : w) {
      Mat2 g;
      if (l.gen.family == Family::x && l.gen.index.dim() == 1) {
        g = Mat2{{Rat(1), l.gen.index[0], Rat(0), Rat(1)}};
      } else if (l.gen.family == Family::y && l.gen.index.empty()) {
        g = Mat2{{Rat(0), Rat(1), Rat(-1), Rat(0)}};
      } else {
        throw IndexError("not a Weil generator: " + l.gen.str());
      }
      acc = acc * (l.exp == 1 ? g : g.inverse_sl());
    }
    return acc;
  }

  inline bool sl2_wp(Word const& w) {
    return sl2_eval(w).is_identity();
  }

  ////////////////////////////////////////////////////////////////////////
  // (Q, +), presentation a: x_r x_s = x_(r+s).
  ////////////////////////////////////////////////////////////////////////

  inline Presentation rationals_a_presentation() {
    Presentation p;
    p.label = "rationals-a";
    p.dim = 1;
    p.generators.push_back(GenClause{Family::x, 1, Pred(true)});
    RelatorSchema a;
    a.name = "A";
    a.arity = 2;
    a.tmpl = {lt_pos(Family::x, {v(0)}), lt_pos(Family::x, {v(1)}),
              lt_neg(Family::x, {v(0) + v(1)})};
    p.relators.push_back(a);
    return p;
  }

  inline bool rationals_wp_a(Word const& w) {
    return detail::signed_index_sum(w, "rationals").is_zero();
  }

  ////////////////////////////////////////////////////////////////////////
  // (Q, +), presentation b: x(p,q) for integers p, q with q != 0.
  ////////////////////////////////////////////////////////////////////////

  inline Presentation rationals_b_presentation() {
    Presentation p;
    p.label = "rationals-b";
    p.dim = 2;
    p.generators.push_back(GenClause{
        Family::x, 2, Pred::all({Pred::is_integer(v(0)), Pred::is_integer(v(1)), ne(v(1), 0)})});
    RelatorSchema b1;
    b1.name = "B1";
    b1.arity = 4;  // p, q, a, b
    b1.tmpl = {lt_pos(Family::x, {v(0), v(1)}), lt_pos(Family::x, {v(2), v(3)}),
               lt_neg(Family::x, {v(0) * v(3) + v(2) * v(1), v(1) * v(3)})};
    b1.constraint = Pred::all({Pred::is_integer(v(0)), Pred::is_integer(v(1)),
                               Pred::is_integer(v(2)), Pred::is_integer(v(3)),
                               ne(v(1), 0), ne(v(3), 0)});
    p.relators.push_back(b1);
    RelatorSchema b2;
    b2.name = "B2";
    b2.arity = 3;  // p, q, n
    b2.tmpl = {lt_pos(Family::x, {v(0), v(1)}), lt_neg(Family::x, {v(2) * v(0), v(2) * v(1)})};
    b2.constraint = Pred::all({Pred::is_integer(v(0)), Pred::is_integer(v(1)),
                               Pred::is_integer(v(2)), ne(v(1), 0), ne(v(2), 0)});
    p.relators.push_back(b2);
    return p;
  }

  inline bool rationals_wp_b(Word const& w) {
    Rat sum(0);
    for (auto const& l : w) {
      auto const& idx = l.gen.index;
      if (l.gen.family != Family::x || idx.dim() != 2 || !idx[0].is_integer()
          || !idx[1].is_integer() || idx[1].is_zero()) {
        throw IndexError("malformed pair index: " + l.gen.str());
      }
      Rat q = idx[0] / idx[1];
      sum += l.exp == 1 ? q : -q;
    }
    return sum.is_zero();
  }

  ////////////////////////////////////////////////////////////////////////
  // x_(nr) = x_r (n >= 1 natural), x_(r+k) = x_r (k integer).
  ////////////////////////////////////////////////////////////////////////

  inline Presentation qgroup_presentation() {
    Presentation p;
    p.label = "qgroup";
    p.dim = 1;
    p.generators.push_back(GenClause{Family::x, 1, Pred(true)});
    RelatorSchema q1;
    q1.name = "Q1";
    q1.arity = 2;  // n, r
    q1.tmpl = {lt_pos(Family::x, {v(0) * v(1)}), lt_neg(Family::x, {v(1)})};
    q1.constraint = Pred::is_natural(v(0)) && ge(v(0), 1);
    p.relators.push_back(q1);
    RelatorSchema q2;
    q2.name = "Q2";
    q2.arity = 2;  // r, k
    q2.tmpl = {lt_pos(Family::x, {v(0) + v(1)}), lt_neg(Family::x, {v(0)})};
    q2.constraint = Pred::is_integer(v(1));
    p.relators.push_back(q2);
    return p;
  }

  //! Over rational indices every x_r equals x_0, so the group is Z.
  inline bool qgroup_wp(Word const& w) {
    long sum = 0;
    for (auto const& l : w) {
      if (l.gen.family != Family::x || l.gen.index.dim() != 1) {
        throw IndexError("not a qgroup generator: " + l.gen.str());
      }
      sum += l.exp;
    }
    return sum == 0;
  }

  struct QChain {
    //! x_r, x_(qr) = x_p, x_0 with repeated entries dropped.
    std::vector<Word> chain;
    //! Proves x_r . x_0^-1 = 1 in qgroup_presentation().
    Certificate certificate;
  };

  inline QChain qgroup_normalize(Rat const& r) {
    QChain out;
    auto x = [](Rat const& t) { return Word{pos(GenSym{Family::x, RatVec{t}})}; };
    if (r.is_zero()) {
      return out;
    }
    Rat q(r.denominator(), mpz_class(1));
    Rat p(r.numerator(), mpz_class(1));
    out.chain.push_back(x(r));
    if (q != Rat(1)) {
      out.chain.push_back(x(p));
      Word rel = juxtapose(x(p), invert(x(r)));
      out.certificate.entries.push_back({Word(), rel, 0, RatVec{q, r}, true});
    }
    out.chain.push_back(x(Rat(0)));
    Word rel = juxtapose(x(p), invert(x(Rat(0))));
    out.certificate.entries.push_back({Word(), rel, 1, RatVec{Rat(0), p}, false});
    return out;
  }

}  // namespace realword

#endif  // REALWORD_GROUPS_HPP_
