#ifndef REALWORD_ENUMERATE_HPP_
#define REALWORD_ENUMERATE_HPP_

// Fair enumerations of naturals tuples, rationals and rational vectors.
//
// The schemes here are frozen: certificates, path indices and fuel bounds all
// refer to enumeration indices, and tests/golden pins the first values.
//
//   pairing        Cantor: pair(a, b) = (a + b)(a + b + 1)/2 + b
//   rationals      0 -> 0, 2k - 1 -> cw(k), 2k -> -cw(k) for k >= 1, where
//                  cw(k) = fusc(k)/fusc(k + 1) is the Calkin-Wilf sequence
//   vectors        0 -> (), n >= 1 -> (dim - 1, rest) = unpair(n - 1) and
//                  rest is split into dim naturals by repeated unpairing

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rat.hpp"

namespace realword {

  namespace detail {
    inline Index isqrt(unsigned __int128 n) {
      unsigned __int128 lo = 0, hi = (static_cast<unsigned __int128>(1) << 64);
      while (lo + 1 < hi) {
        unsigned __int128 mid = (lo + hi) / 2;
        if (mid * mid <= n) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return static_cast<Index>(lo);
    }
  }  // namespace detail

  inline std::optional<Index> cantor_pair(Index a, Index b) {
    unsigned __int128 s = static_cast<unsigned __int128>(a) + b;
    if (s >> 33) {
      return std::nullopt;
    }
    unsigned __int128 v = s * (s + 1) / 2 + b;
    if (v > UINT64_MAX) {
      return std::nullopt;
    }
    return static_cast<Index>(v);
  }

  inline std::pair<Index, Index> cantor_unpair(Index n) {
    // w = floor((sqrt(8n + 1) - 1) / 2)
    unsigned __int128 t = static_cast<unsigned __int128>(n) * 8 + 1;
    Index w = (detail::isqrt(t) - 1) / 2;
    unsigned __int128 tri = static_cast<unsigned __int128>(w) * (w + 1) / 2;
    Index b = static_cast<Index>(n - tri);
    return {w - b, b};
  }

  //! Splits n into k naturals (k >= 1); a bijection N -> N^k.
  inline std::vector<Index> unpair_tuple(Index n, std::size_t k) {
    std::vector<Index> out;
    out.reserve(k);
    for (std::size_t i = 0; i + 1 < k; ++i) {
      auto [a, b] = cantor_unpair(n);
      out.push_back(a);
      n = b;
    }
    out.push_back(n);
    return out;
  }

  inline std::optional<Index> pair_tuple(std::vector<Index> const& xs) {
    if (xs.empty()) {
      return 0;
    }
    std::optional<Index> acc = xs.back();
    for (std::size_t i = xs.size() - 1; i-- > 0;) {
      acc = cantor_pair(xs[i], *acc);
      if (!acc) {
        return std::nullopt;
      }
    }
    return acc;
  }

  namespace detail {
    // Stern's diatomic sequence.
    inline mpz_class fusc(Index n) {
      mpz_class a = 1, b = 0;
      while (n) {
        if (n & 1) {
          b += a;
        } else {
          a += b;
        }
        n >>= 1;
      }
      return b;
    }

    // Position of a positive rational in the Calkin-Wilf sequence (1-based).
    inline std::optional<Index> calkin_wilf_index(mpz_class num, mpz_class den) {
      // Walk to the root: a/b with a < b is a left child of a/(b - a),
      // otherwise a right child of (a - b)/b. Bits are collected LSB first.
      std::vector<bool> bits;
      while (!(num == den)) {
        if (num < den) {
          mpz_class k = (den - 1) / num;  // number of left steps in a row
          if (k > 128) {
            return std::nullopt;
          }
          for (long i = 0; i < k.get_si(); ++i) {
            bits.push_back(false);
          }
          den -= k * num;
        } else {
          mpz_class k = (num - 1) / den;
          if (k > 128) {
            return std::nullopt;
          }
          for (long i = 0; i < k.get_si(); ++i) {
            bits.push_back(true);
          }
          num -= k * den;
        }
        if (bits.size() > 63) {
          return std::nullopt;
        }
      }
      Index n = 1;
      for (auto it = bits.rbegin(); it != bits.rend(); ++it) {
        n = 2 * n + (*it ? 1 : 0);
      }
      return n;
    }
  }  // namespace detail

  //! A bijection N -> Q.
  inline Rat enumerate_rationals(Index index) {
    if (index == 0) {
      return Rat(0);
    }
    Index k = (index + 1) / 2;
    Rat r(detail::fusc(k), detail::fusc(k + 1));
    return (index % 2 == 1) ? r : -r;
  }

  //! Inverse of enumerate_rationals; nullopt when the index exceeds 64 bits.
  inline std::optional<Index> index_of_rational(Rat const& r) {
    if (r.is_zero()) {
      return 0;
    }
    mpz_class num = abs(r.numerator());
    auto k = detail::calkin_wilf_index(num, r.denominator());
    if (!k || *k > (UINT64_MAX - 1) / 2) {
      return std::nullopt;
    }
    return r.sign() > 0 ? 2 * *k - 1 : 2 * *k;
  }

  //! A bijection N -> finite rational vectors of every dimension.
  inline RatVec enumerate_vectors(Index index) {
    if (index == 0) {
      return RatVec();
    }
    auto [dim_minus_one, rest] = cantor_unpair(index - 1);
    RatVec out;
    for (Index e : unpair_tuple(rest, static_cast<std::size_t>(dim_minus_one) + 1)) {
      out.push_back(enumerate_rationals(e));
    }
    return out;
  }

  inline std::optional<Index> index_of_vector(RatVec const& v) {
    if (v.empty()) {
      return 0;
    }
    std::vector<Index> parts;
    for (auto const& r : v) {
      auto i = index_of_rational(r);
      if (!i) {
        return std::nullopt;
      }
      parts.push_back(*i);
    }
    auto rest = pair_tuple(parts);
    if (!rest) {
      return std::nullopt;
    }
    auto n = cantor_pair(v.dim() - 1, *rest);
    if (!n || *n == UINT64_MAX) {
      return std::nullopt;
    }
    return *n + 1;
  }

}  // namespace realword

#endif  // REALWORD_ENUMERATE_HPP_
