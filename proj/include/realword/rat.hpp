#ifndef REALWORD_RAT_HPP_
#define REALWORD_RAT_HPP_

// Exact rationals. Every "real" value the library touches is one of these.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace realword {

  //! Enumeration indices and other naturals that index searches.
  using Index = std::uint64_t;

  //! An arbitrary precision rational, always in lowest terms with a
  //! positive denominator, so structural equality is value equality.
  class Rat {
   public:
    Rat() = default;
    Rat(long v) : _q(v) {}  // NOLINT(runtime/explicit)
    Rat(int v) : _q(v) {}   // NOLINT(runtime/explicit)
    Rat(long num, long den) {
      if (den == 0) {
        throw DivisionByZero();
      }
      _q = mpq_class(mpz_class(num), mpz_class(den));
      _q.canonicalize();
    }
    Rat(mpz_class const& num, mpz_class const& den) {
      if (den == 0) {
        throw DivisionByZero();
      }
      _q = mpq_class(num, den);
      _q.canonicalize();
    }
    explicit Rat(mpq_class q) : _q(std::move(q)) {
      _q.canonicalize();
    }

    //! Parses "p/q", "p" or "-p/q". The denominator must be positive.
    static Rat parse(std::string_view text) {
      std::string s(text);
      auto trim = [](std::string& t) {
        auto b = t.find_first_not_of(" \t");
        auto e = t.find_last_not_of(" \t");
        t = (b == std::string::npos) ? std::string() : t.substr(b, e - b + 1);
      };
      trim(s);
      if (s.empty()) {
        throw ParseError("empty rational");
      }
      auto slash = s.find('/');
      std::string num = s.substr(0, slash);
      std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
      if (!valid_int(num, true) || !valid_int(den, false)) {
        throw ParseError("malformed rational '" + s + "'");
      }
      mpz_class n(num.front() == '+' ? num.substr(1) : num, 10);
      mpz_class d(den, 10);
      if (d <= 0) {
        throw ParseError("denominator must be positive in '" + s + "'");
      }
      return Rat(n, d);
    }

    mpz_class numerator() const {
      return _q.get_num();
    }
    mpz_class denominator() const {
      return _q.get_den();
    }
    mpq_class const& value() const {
      return _q;
    }

    bool is_zero() const {
      return sgn(_q) == 0;
    }
    int sign() const {
      return sgn(_q);
    }
    bool is_integer() const {
      return _q.get_den() == 1;
    }
    bool is_natural() const {
      return is_integer() && sign() >= 0;
    }

    //! The value as a machine integer; only meaningful for small integers.
    std::int64_t to_int64() const {
      if (!is_integer() || !_q.get_num().fits_slong_p()) {
        throw IndexError("rational " + str() + " is not a machine integer");
      }
      return _q.get_num().get_si();
    }

    std::string str() const {
      if (is_integer()) {
        return _q.get_num().get_str();
      }
      return _q.get_num().get_str() + "/" + _q.get_den().get_str();
    }

    Rat operator-() const {
      return Rat(mpq_class(-_q));
    }
    friend Rat operator+(Rat const& a, Rat const& b) {
      return Rat(mpq_class(a._q + b._q));
    }
    friend Rat operator-(Rat const& a, Rat const& b) {
      return Rat(mpq_class(a._q - b._q));
    }
    friend Rat operator*(Rat const& a, Rat const& b) {
      return Rat(mpq_class(a._q * b._q));
    }
    friend Rat operator/(Rat const& a, Rat const& b) {
      if (b.is_zero()) {
        throw DivisionByZero();
      }
      return Rat(mpq_class(a._q / b._q));
    }
    Rat& operator+=(Rat const& o) {
      return *this = *this + o;
    }
    Rat& operator-=(Rat const& o) {
      return *this = *this - o;
    }
    Rat& operator*=(Rat const& o) {
      return *this = *this * o;
    }

    friend bool operator==(Rat const& a, Rat const& b) {
      return a._q == b._q;
    }
    friend std::strong_ordering operator<=>(Rat const& a, Rat const& b) {
      int c = cmp(a._q, b._q);
      return c < 0 ? std::strong_ordering::less
                   : (c > 0 ? std::strong_ordering::greater
                            : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, Rat const& r) {
      return os << r.str();
    }

    std::size_t hash() const {
      std::size_t h = std::hash<long>()(mpz_get_si(_q.get_num_mpz_t()));
      h ^= std::hash<long>()(mpz_get_si(_q.get_den_mpz_t())) * 0x9e3779b97f4a7c15ULL;
      h ^= mpz_sizeinbase(_q.get_num_mpz_t(), 2) << 7;
      return h;
    }

   private:
    static bool valid_int(std::string const& s, bool allow_sign) {
      std::size_t i = 0;
      if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) {
        i = 1;
      }
      if (i == s.size()) {
        return false;
      }
      for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') {
          return false;
        }
      }
      return true;
    }

    mpq_class _q;
  };

  enum class ArithOp { add, sub, mul, div };

  //! One field operation. Division by zero raises DivisionByZero.
  inline Rat rat_op(ArithOp kind, Rat const& a, Rat const& b) {
    switch (kind) {
      case ArithOp::add:
        return a + b;
      case ArithOp::sub:
        return a - b;
      case ArithOp::mul:
        return a * b;
      case ArithOp::div:
        return a / b;
    }
    throw Error("unknown arithmetic operation");
  }

  //! A finite rational vector. dim() may be 0.
  class RatVec {
   public:
    RatVec() = default;
    RatVec(std::initializer_list<Rat> xs) : _v(xs) {}
    explicit RatVec(std::vector<Rat> xs) : _v(std::move(xs)) {}

    std::size_t dim() const {
      return _v.size();
    }
    bool empty() const {
      return _v.empty();
    }
    Rat const& operator[](std::size_t i) const {
      return _v[i];
    }
    Rat& operator[](std::size_t i) {
      return _v[i];
    }
    Rat const& at(std::size_t i) const {
      if (i >= _v.size()) {
        throw IndexError("vector index " + std::to_string(i) + " out of range");
      }
      return _v[i];
    }
    void push_back(Rat r) {
      _v.push_back(std::move(r));
    }
    std::vector<Rat> const& entries() const {
      return _v;
    }
    auto begin() const {
      return _v.begin();
    }
    auto end() const {
      return _v.end();
    }

    //! Comma separated "p/q" entries, the CLI input syntax.
    static RatVec parse(std::string_view text) {
      RatVec out;
      std::string s(text);
      if (s.find_first_not_of(" \t") == std::string::npos) {
        return out;
      }
      std::size_t start = 0;
      while (true) {
        auto comma = s.find(',', start);
        out.push_back(Rat::parse(s.substr(start, comma - start)));
        if (comma == std::string::npos) {
          break;
        }
        start = comma + 1;
      }
      return out;
    }

    std::string str() const {
      std::string out = "(";
      for (std::size_t i = 0; i < _v.size(); ++i) {
        if (i) {
          out += ",";
        }
        out += _v[i].str();
      }
      return out + ")";
    }

    friend bool operator==(RatVec const&, RatVec const&) = default;
    friend auto operator<=>(RatVec const& a, RatVec const& b) {
      return a._v <=> b._v;
    }
    friend std::ostream& operator<<(std::ostream& os, RatVec const& v) {
      return os << v.str();
    }

    std::size_t hash() const {
      std::size_t h = _v.size();
      for (auto const& r : _v) {
        h = h * 1000003u ^ r.hash();
      }
      return h;
    }

   private:
    std::vector<Rat> _v;
  };

}  // namespace realword

template <>
struct std::hash<realword::Rat> {
  std::size_t operator()(realword::Rat const& r) const noexcept {
    return r.hash();
  }
};

template <>
struct std::hash<realword::RatVec> {
  std::size_t operator()(realword::RatVec const& v) const noexcept {
    return v.hash();
  }
};

#endif  // REALWORD_RAT_HPP_
