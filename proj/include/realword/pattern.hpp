#ifndef REALWORD_PATTERN_HPP_
#define REALWORD_PATTERN_HPP_

// The conjugate-pattern words
//
//   w_(r1..rk) = x(k,rk)^-1 ... x(1,r1)^-1 . y . x(1,r1) ... x(k,rk)
//
// and their tagged variant with x(0,n) innermost. The family of all such
// words is Nielsen-reduced, so every element of the subgroup they generate
// has a unique spelling as a reduced product of them; nielsen_decompose
// recovers it from the freely reduced word.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "word.hpp"

namespace realword {

  //! Conjugate pattern over vector slots numbered from `base` upwards.
  inline Word encode_pattern(RatVec const& slots, Rat const& base) {
    Word w;
    for (std::size_t k = slots.dim(); k-- > 0;) {
      w.push_back(neg(xgen(base + Rat(static_cast<long>(k)), slots[k])));
    }
    w.push_back(pos(gen(Family::y)));
    for (std::size_t k = 0; k < slots.dim(); ++k) {
      w.push_back(pos(xgen(base + Rat(static_cast<long>(k)), slots[k])));
    }
    return w;
  }

  inline Word encode_w(RatVec const& r) {
    return encode_pattern(r, Rat(1));
  }

  inline Word encode_w_tagged(Index n, RatVec const& r) {
    RatVec slots{Rat(static_cast<long>(n))};
    for (auto const& e : r) {
      slots.push_back(e);
    }
    return encode_pattern(slots, Rat(0));
  }

  struct PatternFactor {
    int eps = 1;
    RatVec r;

    friend bool operator==(PatternFactor const&, PatternFactor const&) = default;
  };

  namespace detail {
    // Slot number of an x-letter relative to base, or -1 if not an x(i,s)
    // letter with natural i >= base.
    inline long slot_of(Letter const& l, Rat const& base) {
      if (l.gen.family != Family::x || l.gen.index.dim() != 2) {
        return -1;
      }
      Rat const& i = l.gen.index[0];
      if (!i.is_integer() || i < base) {
        return -1;
      }
      Rat off = i - base;
      if (!off.numerator().fits_slong_p()) {
        return -1;
      }
      return off.numerator().get_si();
    }

    inline bool is_y(Letter const& l) {
      return l.gen.family == Family::y && l.gen.index.empty();
    }
  }  // namespace detail

  //! Decomposes a freely reduced word into pattern factors over slots
  //! numbered from `base`; nullopt when the word is not such a product.
  inline std::optional<std::vector<PatternFactor>>
  decompose_pattern(Word const& w, Rat const& base) {
    std::vector<PatternFactor> out;
    auto const& ls = w.letters();
    std::size_t n = ls.size(), pos = 0;
    if (n == 0) {
      return out;
    }
    // Leading descending run x(k)^-1 ... x(1)^-1 fixes the first factor.
    std::vector<Rat> desc;
    long expect = -1;
    while (pos < n && !detail::is_y(ls[pos])) {
      long s = detail::slot_of(ls[pos], base);
      if (s < 0 || ls[pos].exp != -1 || (expect >= 0 && s != expect)) {
        return std::nullopt;
      }
      desc.push_back(ls[pos].gen.index[1]);
      expect = s - 1;
      ++pos;
    }
    if (pos == n || (!desc.empty() && expect != -1)) {
      return std::nullopt;
    }
    std::vector<Rat> cur(desc.rbegin(), desc.rend());

    while (true) {
      // ls[pos] is a y letter
      int eps = ls[pos].exp;
      ++pos;
      std::size_t k = cur.size();
      std::size_t p = 0;
      while (pos < n && ls[pos].exp == 1
             && detail::slot_of(ls[pos], base) == static_cast<long>(p)) {
        if (p >= k || !(ls[pos].gen.index[1] == cur[p])) {
          return std::nullopt;
        }
        ++p;
        ++pos;
      }
      if (pos == n) {
        if (p != k) {
          return std::nullopt;
        }
        out.push_back({eps, RatVec(cur)});
        return out;
      }
      // Descending run of the next factor, ending right before a y.
      std::vector<Rat> nd;
      long q = -1;
      std::size_t start = pos;
      while (pos < n && !detail::is_y(ls[pos])) {
        long s = detail::slot_of(ls[pos], base);
        if (s < 0 || ls[pos].exp != -1) {
          return std::nullopt;
        }
        if (pos == start) {
          q = s + 1;
        } else if (s != q - 1 - static_cast<long>(pos - start)) {
          return std::nullopt;
        }
        nd.push_back(ls[pos].gen.index[1]);
        ++pos;
      }
      if (pos == n) {
        return std::nullopt;
      }
      if (q < 0) {
        q = 0;
      }
      if (static_cast<long>(nd.size()) != q) {
        return std::nullopt;
      }
      std::vector<Rat> next(nd.rbegin(), nd.rend());
      if (p < k) {
        // The top k - p slots cancelled against the next factor.
        if (static_cast<std::size_t>(q) != p) {
          return std::nullopt;
        }
        for (std::size_t i = p; i < k; ++i) {
          next.push_back(cur[i]);
        }
      }
      out.push_back({eps, RatVec(cur)});
      cur = std::move(next);
    }
  }

  inline std::optional<std::vector<PatternFactor>> nielsen_decompose(Word const& w) {
    return decompose_pattern(w, Rat(1));
  }

  struct TaggedFactor {
    int eps = 1;
    Index n = 0;
    RatVec r;
  };

  //! Decomposition into tagged generators w_(n, r1..rd).
  inline std::optional<std::vector<TaggedFactor>>
  nielsen_decompose_tagged(Word const& w) {
    auto fs = decompose_pattern(w, Rat(0));
    if (!fs) {
      return std::nullopt;
    }
    std::vector<TaggedFactor> out;
    for (auto const& f : *fs) {
      if (f.r.empty() || !f.r[0].is_natural()
          || !f.r[0].numerator().fits_ulong_p()) {
        return std::nullopt;
      }
      RatVec rest(std::vector<Rat>(f.r.begin() + 1, f.r.end()));
      out.push_back({f.eps, f.r[0].numerator().get_ui(), std::move(rest)});
    }
    return out;
  }

  //! Rebuilds the freely reduced product of pattern factors.
  inline Word multiply_factors(std::vector<PatternFactor> const& fs,
                               Rat const& base = Rat(1)) {
    Word w;
    for (auto const& f : fs) {
      Word g = encode_pattern(f.r, base);
      w.append(f.eps == 1 ? g : invert(g));
    }
    return free_reduce(w);
  }

  //! If `block` is exactly encode_w(r) for some r, returns r.
  inline std::optional<RatVec> match_encode_w(Word const& block) {
    auto fs = nielsen_decompose(block);
    if (!fs || fs->size() != 1 || (*fs)[0].eps != 1) {
      return std::nullopt;
    }
    if (!(encode_w((*fs)[0].r) == block)) {
      return std::nullopt;
    }
    return (*fs)[0].r;
  }

  using WordSet = std::function<bool(Word const&)>;

  inline constexpr std::size_t span_letter_cap = 24;

  //! Span test: does w split into consecutive non-empty blocks,
  //! each in Y or Y^-1? Decided over all cut sets via a prefix table.
  //! Words longer than span_letter_cap raise CapExceeded.
  inline bool span_decide(Word const& w, WordSet const& Y) {
    if (w.size() > span_letter_cap) {
      throw CapExceeded("span_decide is capped at "
                        + std::to_string(span_letter_cap) + " letters");
    }
    auto in_sym = [&](Word const& b) { return Y(b) || Y(invert(b)); };
    std::size_t k = w.size();
    std::vector<char> ok(k + 1, 0);
    ok[0] = 1;
    for (std::size_t j = 1; j <= k; ++j) {
      for (std::size_t i = 0; i < j && !ok[j]; ++i) {
        if (ok[i] && in_sym(w.slice(i, j))) {
          ok[j] = 1;
        }
      }
    }
    return ok[k] != 0;
  }

  //! The literal procedure: enumerate all 2^(k-1) partitions.
  inline bool span_decide_exhaustive(Word const& w, WordSet const& Y) {
    if (w.size() > span_letter_cap) {
      throw CapExceeded("span_decide is capped at "
                        + std::to_string(span_letter_cap) + " letters");
    }
    std::size_t k = w.size();
    if (k == 0) {
      return true;
    }
    auto in_sym = [&](Word const& b) { return Y(b) || Y(invert(b)); };
    std::uint32_t cuts = 1u << (k - 1);
    for (std::uint32_t mask = 0; mask < cuts; ++mask) {
      std::size_t from = 0;
      bool good = true;
      for (std::size_t i = 1; i <= k && good; ++i) {
        if (i == k || (mask >> (i - 1) & 1u)) {
          good = in_sym(w.slice(from, i));
          from = i;
        }
      }
      if (good) {
        return true;
      }
    }
    return false;
  }

  //! Y = { w_r : pred(r) } as a word set.
  inline WordSet pattern_set(std::function<bool(RatVec const&)> pred) {
    return [pred = std::move(pred)](Word const& b) {
      auto r = match_encode_w(b);
      return r && pred(*r);
    };
  }

}  // namespace realword

#endif  // REALWORD_PATTERN_HPP_
