#ifndef REALWORD_PREDICATE_HPP_
#define REALWORD_PREDICATE_HPP_

// Decidable sets of rational vectors: polynomial (in)equalities with
// rational coefficients, integrality atoms and boolean connectives.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "rat.hpp"

namespace realword {

  //! A rational expression in variables v0, v1, ...
  class Expr {
   public:
    enum class Kind { constant, var, add, sub, mul, neg, div };

    Expr() : Expr(constant_(Rat(0))) {}
    Expr(Rat c) : Expr(constant_(std::move(c))) {}  // NOLINT(runtime/explicit)
    Expr(long c) : Expr(Rat(c)) {}                  // NOLINT(runtime/explicit)
    Expr(int c) : Expr(Rat(c)) {}                   // NOLINT(runtime/explicit)

    static Expr var(std::size_t i) {
      auto n = std::make_shared<Node>();
      n->kind = Kind::var;
      n->var = i;
      return Expr(n);
    }

    Kind kind() const {
      return _n->kind;
    }
    Rat const& constant() const {
      return _n->c;
    }
    std::size_t var_index() const {
      return _n->var;
    }
    Expr const& lhs() const {
      return _n->args[0];
    }
    Expr const& rhs() const {
      return _n->args[1];
    }

    //! Raises DivisionByZero or IndexError when undefined at v.
    Rat eval(std::vector<Rat> const& v) const {
      switch (kind()) {
        case Kind::constant:
          return constant();
        case Kind::var:
          if (var_index() >= v.size()) {
            throw IndexError("variable v" + std::to_string(var_index())
                             + " unbound");
          }
          return v[var_index()];
        case Kind::add:
          return lhs().eval(v) + rhs().eval(v);
        case Kind::sub:
          return lhs().eval(v) - rhs().eval(v);
        case Kind::mul:
          return lhs().eval(v) * rhs().eval(v);
        case Kind::neg:
          return -lhs().eval(v);
        case Kind::div:
          return lhs().eval(v) / rhs().eval(v);
      }
      throw Error("bad expression");
    }
    Rat eval(RatVec const& v) const {
      return eval(v.entries());
    }

    //! Largest variable index + 1.
    std::size_t arity() const {
      switch (kind()) {
        case Kind::constant:
          return 0;
        case Kind::var:
          return var_index() + 1;
        case Kind::neg:
          return lhs().arity();
        default:
          return std::max(lhs().arity(), rhs().arity());
      }
    }

    //! Substitutes variable i by subs[i] (variables past the end are kept).
    Expr substitute(std::vector<Expr> const& subs) const {
      switch (kind()) {
        case Kind::constant:
          return *this;
        case Kind::var:
          return var_index() < subs.size() ? subs[var_index()] : *this;
        case Kind::neg:
          return -lhs().substitute(subs);
        default:
          return binary(kind(), lhs().substitute(subs), rhs().substitute(subs));
      }
    }

    //! Renames variable i to i + k.
    Expr shift(std::size_t k) const {
      switch (kind()) {
        case Kind::constant:
          return *this;
        case Kind::var:
          return var(var_index() + k);
        case Kind::neg:
          return -lhs().shift(k);
        default:
          return binary(kind(), lhs().shift(k), rhs().shift(k));
      }
    }

    std::string str() const {
      switch (kind()) {
        case Kind::constant:
          return constant().str();
        case Kind::var:
          return "v" + std::to_string(var_index());
        case Kind::add:
          return "(" + lhs().str() + " + " + rhs().str() + ")";
        case Kind::sub:
          return "(" + lhs().str() + " - " + rhs().str() + ")";
        case Kind::mul:
          return lhs().str() + "*" + rhs().str();
        case Kind::neg:
          return "-" + lhs().str();
        case Kind::div:
          return lhs().str() + "/" + rhs().str();
      }
      return "?";
    }

    friend Expr operator+(Expr a, Expr b) {
      return binary(Kind::add, std::move(a), std::move(b));
    }
    friend Expr operator-(Expr a, Expr b) {
      return binary(Kind::sub, std::move(a), std::move(b));
    }
    friend Expr operator*(Expr a, Expr b) {
      return binary(Kind::mul, std::move(a), std::move(b));
    }
    friend Expr operator/(Expr a, Expr b) {
      return binary(Kind::div, std::move(a), std::move(b));
    }
    Expr operator-() const {
      auto n = std::make_shared<Node>();
      n->kind = Kind::neg;
      n->args = {*this};
      return Expr(n);
    }

    static Expr binary(Kind k, Expr a, Expr b) {
      auto n = std::make_shared<Node>();
      n->kind = k;
      n->args = {std::move(a), std::move(b)};
      return Expr(n);
    }

   private:
    struct Node {
      Kind kind = Kind::constant;
      Rat c;
      std::size_t var = 0;
      std::vector<Expr> args;
    };

    explicit Expr(std::shared_ptr<Node const> n) : _n(std::move(n)) {}

    static std::shared_ptr<Node const> constant_(Rat c) {
      auto n = std::make_shared<Node>();
      n->c = std::move(c);
      return n;
    }

    std::shared_ptr<Node const> _n;
  };

  inline Expr v(std::size_t i) {
    return Expr::var(i);
  }

  //! Partial variable assignment used when matching templates.
  using Bindings = std::vector<std::optional<Rat>>;

  enum class Unify { ok, fail, defer };

  namespace detail {
    inline std::size_t unbound_occurrences(Expr const& e, Bindings const& b) {
      switch (e.kind()) {
        case Expr::Kind::constant:
          return 0;
        case Expr::Kind::var:
          return (e.var_index() < b.size() && b[e.var_index()]) ? 0 : 1;
        case Expr::Kind::neg:
          return unbound_occurrences(e.lhs(), b);
        default:
          return unbound_occurrences(e.lhs(), b) + unbound_occurrences(e.rhs(), b);
      }
    }

    inline Rat eval_bound(Expr const& e, Bindings const& b) {
      std::vector<Rat> vals;
      vals.reserve(b.size());
      for (auto const& x : b) {
        vals.push_back(x ? *x : Rat(0));
      }
      return e.eval(vals);
    }
  }  // namespace detail

  //! Tries to make e evaluate to value by binding its single unbound
  //! variable occurrence. Defers when two or more occurrences are unbound
  //! or the inversion is not unique.
  inline Unify unify(Expr const& e, Rat const& value, Bindings& b) {
    std::size_t open = detail::unbound_occurrences(e, b);
    if (open == 0) {
      try {
        return detail::eval_bound(e, b) == value ? Unify::ok : Unify::fail;
      } catch (DivisionByZero const&) {
        return Unify::fail;
      }
    }
    if (open > 1) {
      return Unify::defer;
    }
    using K = Expr::Kind;
    auto known = [&](Expr const& x) { return detail::eval_bound(x, b); };
    try {
      switch (e.kind()) {
        case K::var:
          if (e.var_index() >= b.size()) {
            b.resize(e.var_index() + 1);
          }
          b[e.var_index()] = value;
          return Unify::ok;
        case K::neg:
          return unify(e.lhs(), -value, b);
        case K::add:
          if (detail::unbound_occurrences(e.lhs(), b)) {
            return unify(e.lhs(), value - known(e.rhs()), b);
          }
          return unify(e.rhs(), value - known(e.lhs()), b);
        case K::sub:
          if (detail::unbound_occurrences(e.lhs(), b)) {
            return unify(e.lhs(), value + known(e.rhs()), b);
          }
          return unify(e.rhs(), known(e.lhs()) - value, b);
        case K::mul: {
          bool left_open = detail::unbound_occurrences(e.lhs(), b) != 0;
          Rat k = known(left_open ? e.rhs() : e.lhs());
          if (k.is_zero()) {
            return value.is_zero() ? Unify::defer : Unify::fail;
          }
          return unify(left_open ? e.lhs() : e.rhs(), value / k, b);
        }
        case K::div:
          if (detail::unbound_occurrences(e.lhs(), b)) {
            Rat den = known(e.rhs());
            if (den.is_zero()) {
              return Unify::fail;
            }
            return unify(e.lhs(), value * den, b);
          } else {
            Rat num = known(e.lhs());
            if (value.is_zero()) {
              return num.is_zero() ? Unify::defer : Unify::fail;
            }
            return unify(e.rhs(), num / value, b);
          }
        case K::constant:
          break;
      }
    } catch (DivisionByZero const&) {
      return Unify::fail;
    }
    return Unify::fail;
  }

  //! A decidable subset of Q^k.
  class Pred {
   public:
    enum class Kind {
      truth,
      eq,
      ne,
      ge,
      gt,
      le,
      lt,
      integer,
      natural,
      conj,
      disj,
      negation,
      callback
    };
    using Callback = std::function<bool(RatVec const&)>;

    Pred() : Pred(true) {}
    Pred(bool b) {  // NOLINT(runtime/explicit)
      auto n = std::make_shared<Node>();
      n->truth = b;
      _n = n;
    }

    static Pred compare(Kind k, Expr a, Expr b) {
      auto n = std::make_shared<Node>();
      n->kind = k;
      n->exprs = {std::move(a), std::move(b)};
      return Pred(n);
    }
    static Pred is_integer(Expr e) {
      return unary_atom(Kind::integer, std::move(e));
    }
    static Pred is_natural(Expr e) {
      return unary_atom(Kind::natural, std::move(e));
    }
    static Pred all(std::vector<Pred> ps) {
      return junction(Kind::conj, std::move(ps));
    }
    static Pred any(std::vector<Pred> ps) {
      return junction(Kind::disj, std::move(ps));
    }
    //! An opaque decidable test; evaluates but cannot be serialized.
    static Pred from_callback(Callback f) {
      auto n = std::make_shared<Node>();
      n->kind = Kind::callback;
      n->fn = std::move(f);
      return Pred(n);
    }

    Kind kind() const {
      return _n->kind;
    }
    bool serializable() const {
      if (kind() == Kind::callback) {
        return false;
      }
      for (auto const& p : _n->parts) {
        if (!p.serializable()) {
          return false;
        }
      }
      return true;
    }

    //! Total: an atom whose expressions are undefined at v is false.
    bool operator()(RatVec const& v) const {
      return eval(v);
    }

    bool eval(RatVec const& v) const {
      auto const& n = *_n;
      try {
        switch (n.kind) {
          case Kind::truth:
            return n.truth;
          case Kind::eq:
            return n.exprs[0].eval(v) == n.exprs[1].eval(v);
          case Kind::ne:
            return n.exprs[0].eval(v) != n.exprs[1].eval(v);
          case Kind::ge:
            return n.exprs[0].eval(v) >= n.exprs[1].eval(v);
          case Kind::gt:
            return n.exprs[0].eval(v) > n.exprs[1].eval(v);
          case Kind::le:
            return n.exprs[0].eval(v) <= n.exprs[1].eval(v);
          case Kind::lt:
            return n.exprs[0].eval(v) < n.exprs[1].eval(v);
          case Kind::integer:
            return n.exprs[0].eval(v).is_integer();
          case Kind::natural:
            return n.exprs[0].eval(v).is_natural();
          case Kind::conj:
            for (auto const& p : n.parts) {
              if (!p.eval(v)) {
                return false;
              }
            }
            return true;
          case Kind::disj:
            for (auto const& p : n.parts) {
              if (p.eval(v)) {
                return true;
              }
            }
            return false;
          case Kind::negation:
            return !n.parts[0].eval(v);
          case Kind::callback:
            return n.fn(v);
        }
      } catch (DivisionByZero const&) {
        return false;
      } catch (IndexError const&) {
        return false;
      }
      return false;
    }

    Pred operator!() const {
      auto n = std::make_shared<Node>();
      n->kind = Kind::negation;
      n->parts = {*this};
      return Pred(n);
    }
    friend Pred operator&&(Pred const& a, Pred const& b) {
      return all({a, b});
    }
    friend Pred operator||(Pred const& a, Pred const& b) {
      return any({a, b});
    }

    //! Renames variable i to i + k throughout.
    Pred shift(std::size_t k) const {
      return map_exprs([k](Expr const& e) { return e.shift(k); }, k);
    }
    Pred substitute(std::vector<Expr> const& subs) const {
      return map_exprs([&subs](Expr const& e) { return e.substitute(subs); }, 0);
    }

    std::string str() const;

    nlohmann::json to_json() const;
    static Pred from_json(nlohmann::json const& j);

   private:
    struct Node {
      Kind kind = Kind::truth;
      bool truth = true;
      std::vector<Expr> exprs;
      std::vector<Pred> parts;
      Callback fn;
    };

    explicit Pred(std::shared_ptr<Node const> n) : _n(std::move(n)) {}

    static Pred unary_atom(Kind k, Expr e) {
      auto n = std::make_shared<Node>();
      n->kind = k;
      n->exprs = {std::move(e)};
      return Pred(n);
    }
    static Pred junction(Kind k, std::vector<Pred> ps) {
      auto n = std::make_shared<Node>();
      n->kind = k;
      n->parts = std::move(ps);
      return Pred(n);
    }

    template <typename F>
    Pred map_exprs(F const& f, std::size_t shift_callback) const {
      auto n = std::make_shared<Node>(*_n);
      for (auto& e : n->exprs) {
        e = f(e);
      }
      for (auto& p : n->parts) {
        p = p.map_exprs(f, shift_callback);
      }
      if (n->kind == Kind::callback && shift_callback) {
        auto g = n->fn;
        n->fn = [g, shift_callback](RatVec const& x) {
          return g(RatVec(std::vector<Rat>(
              x.begin() + std::min<std::size_t>(shift_callback, x.dim()), x.end())));
        };
      }
      return Pred(n);
    }

    std::shared_ptr<Node const> _n;
  };

  inline Pred eq(Expr a, Expr b) {
    return Pred::compare(Pred::Kind::eq, std::move(a), std::move(b));
  }
  inline Pred ne(Expr a, Expr b) {
    return Pred::compare(Pred::Kind::ne, std::move(a), std::move(b));
  }
  inline Pred ge(Expr a, Expr b) {
    return Pred::compare(Pred::Kind::ge, std::move(a), std::move(b));
  }
  inline Pred gt(Expr a, Expr b) {
    return Pred::compare(Pred::Kind::gt, std::move(a), std::move(b));
  }
  inline Pred le(Expr a, Expr b) {
    return Pred::compare(Pred::Kind::le, std::move(a), std::move(b));
  }
  inline Pred lt(Expr a, Expr b) {
    return Pred::compare(Pred::Kind::lt, std::move(a), std::move(b));
  }

  ////////////////////////////////////////////////////////////////////////
  // JSON form
  //
  //   expr  := "p/q" | number | {"var": i} | {"add": [e, e]} | {"sub": [e, e]}
  //          | {"mul": [e, e]} | {"div": [e, e]} | {"neg": e}
  //   pred  := true | false | {"eq"|"ne"|"ge"|"gt"|"le"|"lt": [e, e]}
  //          | {"int": e} | {"nat": e} | {"and": [p...]} | {"or": [p...]}
  //          | {"not": p}
  ////////////////////////////////////////////////////////////////////////

  inline nlohmann::json expr_to_json(Expr const& e) {
    using K = Expr::Kind;
    switch (e.kind()) {
      case K::constant:
        return e.constant().str();
      case K::var:
        return {{"var", e.var_index()}};
      case K::add:
        return {{"add", {expr_to_json(e.lhs()), expr_to_json(e.rhs())}}};
      case K::sub:
        return {{"sub", {expr_to_json(e.lhs()), expr_to_json(e.rhs())}}};
      case K::mul:
        return {{"mul", {expr_to_json(e.lhs()), expr_to_json(e.rhs())}}};
      case K::div:
        return {{"div", {expr_to_json(e.lhs()), expr_to_json(e.rhs())}}};
      case K::neg:
        return {{"neg", expr_to_json(e.lhs())}};
    }
    throw Error("bad expression");
  }

  inline Expr expr_from_json(nlohmann::json const& j) {
    if (j.is_string()) {
      return Expr(Rat::parse(j.get<std::string>()));
    }
    if (j.is_number_integer()) {
      return Expr(Rat(j.get<long>()));
    }
    if (!j.is_object() || j.size() != 1) {
      throw ParseError("malformed expression: " + j.dump());
    }
    auto const& [key, val] = *j.items().begin();
    if (key == "var") {
      return Expr::var(val.get<std::size_t>());
    }
    if (key == "neg") {
      return -expr_from_json(val);
    }
    if (!val.is_array() || val.size() != 2) {
      throw ParseError("operator '" + key + "' needs two operands");
    }
    Expr a = expr_from_json(val[0]), b = expr_from_json(val[1]);
    if (key == "add") {
      return a + b;
    }
    if (key == "sub") {
      return a - b;
    }
    if (key == "mul") {
      return a * b;
    }
    if (key == "div") {
      return a / b;
    }
    throw ParseError("unknown expression operator '" + key + "'");
  }

  namespace detail {
    inline char const* pred_key(Pred::Kind k) {
      switch (k) {
        case Pred::Kind::eq:
          return "eq";
        case Pred::Kind::ne:
          return "ne";
        case Pred::Kind::ge:
          return "ge";
        case Pred::Kind::gt:
          return "gt";
        case Pred::Kind::le:
          return "le";
        case Pred::Kind::lt:
          return "lt";
        case Pred::Kind::integer:
          return "int";
        case Pred::Kind::natural:
          return "nat";
        case Pred::Kind::conj:
          return "and";
        case Pred::Kind::disj:
          return "or";
        case Pred::Kind::negation:
          return "not";
        default:
          return "";
      }
    }
  }  // namespace detail

  inline nlohmann::json Pred::to_json() const {
    auto const& n = *_n;
    switch (n.kind) {
      case Kind::truth:
        return n.truth;
      case Kind::integer:
      case Kind::natural:
        return {{detail::pred_key(n.kind), expr_to_json(n.exprs[0])}};
      case Kind::conj:
      case Kind::disj: {
        auto arr = nlohmann::json::array();
        for (auto const& p : n.parts) {
          arr.push_back(p.to_json());
        }
        return {{detail::pred_key(n.kind), arr}};
      }
      case Kind::negation:
        return {{"not", n.parts[0].to_json()}};
      case Kind::callback:
        throw Error("callback predicates cannot be serialized");
      default:
        return {{detail::pred_key(n.kind),
                 {expr_to_json(n.exprs[0]), expr_to_json(n.exprs[1])}}};
    }
  }

  inline Pred Pred::from_json(nlohmann::json const& j) {
    if (j.is_boolean()) {
      return Pred(j.get<bool>());
    }
    if (!j.is_object() || j.size() != 1) {
      throw ParseError("malformed predicate: " + j.dump());
    }
    auto const& [key, val] = *j.items().begin();
    for (Kind k : {Kind::eq, Kind::ne, Kind::ge, Kind::gt, Kind::le, Kind::lt}) {
      if (key == detail::pred_key(k)) {
        if (!val.is_array() || val.size() != 2) {
          throw ParseError("comparison '" + key + "' needs two operands");
        }
        return compare(k, expr_from_json(val[0]), expr_from_json(val[1]));
      }
    }
    if (key == "int") {
      return is_integer(expr_from_json(val));
    }
    if (key == "nat") {
      return is_natural(expr_from_json(val));
    }
    if (key == "not") {
      return !from_json(val);
    }
    if (key == "and" || key == "or") {
      std::vector<Pred> ps;
      for (auto const& x : val) {
        ps.push_back(from_json(x));
      }
      return key == "and" ? all(std::move(ps)) : any(std::move(ps));
    }
    throw ParseError("unknown predicate '" + key + "'");
  }

  inline std::string Pred::str() const {
    auto const& n = *_n;
    auto bin = [&](char const* op) {
      return n.exprs[0].str() + " " + op + " " + n.exprs[1].str();
    };
    auto join = [&](char const* op) {
      std::string out = "(";
      for (std::size_t i = 0; i < n.parts.size(); ++i) {
        out += (i ? std::string(" ") + op + " " : "") + n.parts[i].str();
      }
      return out + ")";
    };
    switch (n.kind) {
      case Kind::truth:
        return n.truth ? "true" : "false";
      case Kind::eq:
        return bin("=");
      case Kind::ne:
        return bin("!=");
      case Kind::ge:
        return bin(">=");
      case Kind::gt:
        return bin(">");
      case Kind::le:
        return bin("<=");
      case Kind::lt:
        return bin("<");
      case Kind::integer:
        return "int(" + n.exprs[0].str() + ")";
      case Kind::natural:
        return "nat(" + n.exprs[0].str() + ")";
      case Kind::conj:
        return join("and");
      case Kind::disj:
        return join("or");
      case Kind::negation:
        return "not " + n.parts[0].str();
      case Kind::callback:
        return "<callback>";
    }
    return "?";
  }

}  // namespace realword

#endif  // REALWORD_PREDICATE_HPP_
