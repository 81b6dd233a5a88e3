#ifndef REALWORD_WORD_HPP_
#define REALWORD_WORD_HPP_

// Free group words over generators indexed by rational vectors.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "rat.hpp"

namespace realword {

  enum class Family : std::uint8_t { x, y, a, m, t, s, r, aux };

  inline constexpr std::array<Family, 8> all_families
      = {Family::x, Family::y, Family::a, Family::m,
         Family::t, Family::s, Family::r, Family::aux};

  inline char const* family_name(Family f) {
    switch (f) {
      case Family::x:
        return "x";
      case Family::y:
        return "y";
      case Family::a:
        return "a";
      case Family::m:
        return "m";
      case Family::t:
        return "t";
      case Family::s:
        return "s";
      case Family::r:
        return "r";
      case Family::aux:
        return "aux";
    }
    return "?";
  }

  inline std::optional<Family> family_from_name(std::string_view name) {
    for (Family f : all_families) {
      if (name == family_name(f)) {
        return f;
      }
    }
    return std::nullopt;
  }

  //! A generator: a family tag together with a rational index vector.
  //! Identity is structural, so x(1/5) and x(5) are unrelated generators.
  struct GenSym {
    Family family = Family::x;
    RatVec index;

    friend bool operator==(GenSym const&, GenSym const&) = default;
    friend auto operator<=>(GenSym const& a, GenSym const& b) {
      if (auto c = a.family <=> b.family; c != 0) {
        return c;
      }
      return a.index <=> b.index;
    }

    std::string str() const {
      std::string out = family_name(family);
      if (!index.empty()) {
        out += index.str();
      }
      return out;
    }
  };

  inline GenSym gen(Family f, RatVec index = {}) {
    return GenSym{f, std::move(index)};
  }

  //! x_(i, s) in the register-indexed family.
  inline GenSym xgen(Rat i, Rat s) {
    return GenSym{Family::x, RatVec{std::move(i), std::move(s)}};
  }

  struct Letter {
    GenSym gen;
    int exp = 1;  // +1 or -1

    Letter inverse() const {
      return Letter{gen, -exp};
    }
    bool cancels(Letter const& o) const {
      return exp == -o.exp && gen == o.gen;
    }

    friend bool operator==(Letter const&, Letter const&) = default;
    friend auto operator<=>(Letter const& a, Letter const& b) {
      if (auto c = a.gen <=> b.gen; c != 0) {
        return c;
      }
      return a.exp <=> b.exp;
    }

    std::string str() const {
      return exp == 1 ? gen.str() : gen.str() + "^-1";
    }
  };

  inline Letter pos(GenSym g) {
    return Letter{std::move(g), 1};
  }
  inline Letter neg(GenSym g) {
    return Letter{std::move(g), -1};
  }

  //! A finite sequence of letters. Not necessarily freely reduced.
  class Word {
   public:
    Word() = default;
    Word(std::initializer_list<Letter> ls) : _letters(ls) {}
    explicit Word(std::vector<Letter> ls) : _letters(std::move(ls)) {}

    std::size_t size() const {
      return _letters.size();
    }
    bool empty() const {
      return _letters.empty();
    }
    Letter const& operator[](std::size_t i) const {
      return _letters[i];
    }
    std::vector<Letter> const& letters() const {
      return _letters;
    }
    std::vector<Letter>& letters() {
      return _letters;
    }
    auto begin() const {
      return _letters.begin();
    }
    auto end() const {
      return _letters.end();
    }
    void push_back(Letter l) {
      _letters.push_back(std::move(l));
    }
    void append(Word const& w) {
      _letters.insert(_letters.end(), w.begin(), w.end());
    }

    Word slice(std::size_t from, std::size_t to) const {
      return Word(std::vector<Letter>(_letters.begin() + from,
                                      _letters.begin() + to));
    }

    bool is_reduced() const {
      for (std::size_t i = 0; i + 1 < _letters.size(); ++i) {
        if (_letters[i].cancels(_letters[i + 1])) {
          return false;
        }
      }
      return true;
    }

    //! Dot separated letters, e.g. "x(1,5)^-1 . y . x(1,5)"; "1" when empty.
    std::string str() const {
      if (_letters.empty()) {
        return "1";
      }
      std::string out;
      for (std::size_t i = 0; i < _letters.size(); ++i) {
        if (i) {
          out += " . ";
        }
        out += _letters[i].str();
      }
      return out;
    }

    static Word parse(std::string_view text);

    friend bool operator==(Word const&, Word const&) = default;
    friend auto operator<=>(Word const& a, Word const& b) {
      return a._letters <=> b._letters;
    }
    friend std::ostream& operator<<(std::ostream& os, Word const& w) {
      return os << w.str();
    }

   private:
    std::vector<Letter> _letters;
  };

  //! Cancels adjacent x x^-1 pairs with a stack; the unique normal form.
  inline Word free_reduce(Word const& w) {
    std::vector<Letter> out;
    out.reserve(w.size());
    for (auto const& l : w) {
      if (!out.empty() && out.back().cancels(l)) {
        out.pop_back();
      } else {
        out.push_back(l);
      }
    }
    return Word(std::move(out));
  }

  inline Word invert(Word const& w) {
    std::vector<Letter> out;
    out.reserve(w.size());
    for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
      out.push_back(it->inverse());
    }
    return Word(std::move(out));
  }

  inline Word concat(Word const& u, Word const& v) {
    Word w = u;
    w.append(v);
    return free_reduce(w);
  }

  //! Concatenation without reduction.
  inline Word juxtapose(Word const& u, Word const& v) {
    Word w = u;
    w.append(v);
    return w;
  }

  namespace detail {
    inline void skip_ws(std::string_view s, std::size_t& i) {
      while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
        ++i;
      }
    }
  }  // namespace detail

  inline Word Word::parse(std::string_view s) {
    Word out;
    std::size_t i = 0;
    detail::skip_ws(s, i);
    if (i == s.size()) {
      return out;
    }
    if (s[i] == '1') {
      std::size_t j = i + 1;
      detail::skip_ws(s, j);
      if (j == s.size()) {
        return out;
      }
    }
    while (true) {
      detail::skip_ws(s, i);
      std::size_t start = i;
      while (i < s.size()
             && ((s[i] >= 'a' && s[i] <= 'z') || (s[i] >= 'A' && s[i] <= 'Z'))) {
        ++i;
      }
      auto name = s.substr(start, i - start);
      auto fam = family_from_name(name);
      if (!fam) {
        throw ParseError("unknown generator family '" + std::string(name) + "'");
      }
      GenSym g{*fam, {}};
      detail::skip_ws(s, i);
      if (i < s.size() && s[i] == '(') {
        auto close = s.find(')', i);
        if (close == std::string_view::npos) {
          throw ParseError("unbalanced '(' in word");
        }
        g.index = RatVec::parse(s.substr(i + 1, close - i - 1));
        i = close + 1;
      }
      detail::skip_ws(s, i);
      int exp = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t e0 = i;
        while (i < s.size() && s[i] != '.' && s[i] != ' ') {
          ++i;
        }
        auto e = s.substr(e0, i - e0);
        if (e == "-1") {
          exp = -1;
        } else if (e != "1" && e != "+1") {
          throw ParseError("exponent must be 1 or -1, got '" + std::string(e) + "'");
        }
      }
      out.push_back(Letter{std::move(g), exp});
      detail::skip_ws(s, i);
      if (i == s.size()) {
        break;
      }
      if (s[i] != '.') {
        throw ParseError("expected '.' between letters at offset " + std::to_string(i));
      }
      ++i;
    }
    return out;
  }

}  // namespace realword

#endif  // REALWORD_WORD_HPP_
