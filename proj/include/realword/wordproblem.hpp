#ifndef REALWORD_WORDPROBLEM_HPP_
#define REALWORD_WORDPROBLEM_HPP_

// Semi-deciding w = 1 in <X | R> by exhibiting
//
//   w = c1 r1 c1^-1 . c2 r2 c2^-1 ... cn rn cn^-1   (in the free group)
//
// with relator instances ri (or their inverses). The search rewrites a
// residual word: a subword M of the residual is replaced by N^-1 whenever
// M N is a cyclic rotation of a relator instance or its inverse, which
// peels off one conjugated relator on the left. Every answer carries a
// certificate that verify_certificate replays without the search.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "presentation.hpp"

namespace realword {

  struct CertificateEntry {
    Word conjugator;
    Word relator;
    std::size_t schema = 0;
    RatVec params;
    //! The entry contributes c r^-1 c^-1 instead of c r c^-1.
    bool inverted = false;

    friend bool operator==(CertificateEntry const&, CertificateEntry const&) = default;
  };

  struct Certificate {
    std::vector<CertificateEntry> entries;

    std::size_t size() const {
      return entries.size();
    }

    //! The free-group product the certificate claims equals w.
    Word product() const {
      Word out;
      for (auto const& e : entries) {
        out.append(e.conjugator);
        out.append(e.inverted ? invert(e.relator) : e.relator);
        out.append(invert(e.conjugator));
      }
      return free_reduce(out);
    }

    nlohmann::json to_json() const {
      auto arr = nlohmann::json::array();
      for (auto const& e : entries) {
        auto params = nlohmann::json::array();
        for (auto const& r : e.params) {
          params.push_back(r.str());
        }
        arr.push_back({{"conjugator", e.conjugator.str()},
                       {"relator", e.relator.str()},
                       {"schema", e.schema},
                       {"params", params},
                       {"inverted", e.inverted}});
      }
      return {{"entries", arr}};
    }

    static Certificate from_json(nlohmann::json const& j) {
      Certificate c;
      try {
        for (auto const& e : j.at("entries")) {
          CertificateEntry x;
          x.conjugator = Word::parse(e.at("conjugator").get<std::string>());
          x.relator = Word::parse(e.at("relator").get<std::string>());
          x.schema = e.at("schema").get<std::size_t>();
          for (auto const& r : e.at("params")) {
            x.params.push_back(Rat::parse(r.get<std::string>()));
          }
          x.inverted = e.value("inverted", false);
          c.entries.push_back(std::move(x));
        }
      } catch (nlohmann::json::exception const& e) {
        throw ParseError(std::string("malformed certificate: ") + e.what());
      }
      return c;
    }
  };

  //! Replays c independently of any search: every relator must be its
  //! schema instantiated at params, and the product must freely reduce to w.
  inline bool verify_certificate(Presentation const& p, Word const& w,
                                 Certificate const& c) {
    for (auto const& e : c.entries) {
      if (e.schema >= p.relators.size()) {
        return false;
      }
      auto inst = p.relators[e.schema].instantiate(e.params);
      if (!inst || !(*inst == e.relator)) {
        return false;
      }
    }
    return c.product() == free_reduce(w);
  }

  struct WpOptions {
    //! Consecutive length-preserving moves allowed along a search branch.
    unsigned neutral_streak = 2;
    //! Instances taken from the enumeration for schemas without template.
    std::size_t blind_instances = 16;
    //! Matches shorter than half a relator are kept when free reduction
    //! makes the word shorter. Residuals at most this long also try
    //! length-increasing moves, with
    //! unbound relator parameters drawn from the values occurring in the word.
    std::size_t short_residual = 1;
    //! Cap on the completions tried for one match of a short residual.
    std::size_t completion_cap = 1024;
    //! Cap on the completions of a match one letter short of half a relator;
    //! these draw on 0, 1, -1 and the values the match binds.
    std::size_t partial_completion_cap = 256;
  };

  struct WpResult {
    enum class Status { proved, unknown };
    Status status = Status::unknown;
    Certificate certificate;
    Index nodes = 0;

    bool proved() const {
      return status == Status::proved;
    }
  };

  namespace detail {
    // A rewriting rule: the letter pattern of a relator schema, or one
    // concrete instance for schemas that can only be enumerated.
    struct WpRule {
      std::size_t schema = 0;
      std::size_t arity = 0;
      Template tmpl;
      std::optional<RatVec> fixed_params;
    };

    struct WpNode {
      Word residual;
      std::int64_t parent = -1;
      CertificateEntry entry;
      std::size_t depth = 0;
      unsigned neutral = 0;
    };

    inline std::vector<WpRule> wp_rules(Presentation const& p, WpOptions const& opt) {
      std::vector<WpRule> rules;
      bool blind = false;
      for (std::size_t i = 0; i < p.relators.size(); ++i) {
        auto const& s = p.relators[i];
        if (s.has_template()) {
          rules.push_back(WpRule{i, s.arity, s.tmpl, std::nullopt});
        } else {
          blind = true;
        }
      }
      if (blind && opt.blind_instances > 0) {
        std::size_t found = 0;
        for (Index n = 0; n < 64 * opt.blind_instances && found < opt.blind_instances; ++n) {
          auto inst = relator_candidate(p, n);
          if (!inst || p.relators[inst->schema].has_template()) {
            continue;
          }
          Template t;
          for (auto const& l : inst->word) {
            std::vector<Expr> idx(l.gen.index.begin(), l.gen.index.end());
            t.push_back(LetterTemplate{l.gen.family, std::move(idx), l.exp});
          }
          rules.push_back(WpRule{inst->schema, 0, std::move(t), inst->params});
          ++found;
        }
      }
      return rules;
    }

    //! Whether w is not cyclically reduced.
    inline bool self_cancelling(Word const& w) {
      Word r = free_reduce(w);
      return r.size() < w.size()
             || (r.size() > 1 && r.letters().front().gen == r.letters().back().gen
                 && r.letters().front().exp == -r.letters().back().exp);
    }

    //! 0, 1, -1 and every index component occurring in w.
    inline std::vector<Rat> value_pool(Word const& w) {
      std::vector<Rat> pool{Rat(0), Rat(1), Rat(-1)};
      for (auto const& l : w) {
        for (auto const& x : l.gen.index.entries()) {
          if (std::find(pool.begin(), pool.end(), x) == pool.end()) {
            pool.push_back(x);
          }
        }
      }
      return pool;
    }

    //! 0, 1, -1 and the values already bound.
    inline std::vector<Rat> bound_pool(Bindings const& b) {
      std::vector<Rat> pool{Rat(0), Rat(1), Rat(-1)};
      for (auto const& x : b) {
        if (x && std::find(pool.begin(), pool.end(), *x) == pool.end()) {
          pool.push_back(*x);
        }
      }
      return pool;
    }

    //! All parameter vectors extending b with unbound slots taken from pool;
    //! empty if there are more than cap of them.
    inline std::vector<RatVec> completions(Bindings const& b, std::vector<Rat> const& pool,
                                           std::size_t cap) {
      std::vector<std::size_t> open;
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (!b[i]) {
          open.push_back(i);
        }
      }
      std::size_t total = 1;
      for (std::size_t k = 0; k < open.size(); ++k) {
        if (pool.empty() || total > cap / pool.size()) {
          return {};
        }
        total *= pool.size();
      }
      std::vector<RatVec> out;
      std::vector<Rat> vals(b.size());
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i]) {
          vals[i] = *b[i];
        }
      }
      for (std::size_t n = 0; n < total; ++n) {
        std::size_t q = n;
        for (auto i : open) {
          vals[i] = pool[q % pool.size()];
          q /= pool.size();
        }
        out.emplace_back(vals);
      }
      return out;
    }
  }  // namespace detail

  //! Best-first search for a certificate of w = 1; fuel bounds the number of
  //! expanded search nodes. Deterministic, so a proof found at some fuel is
  //! found identically at every larger fuel.
  inline WpResult wp_semidecide(Presentation const& p, Word const& w, Index fuel,
                                WpOptions const& opt = {}) {
    using detail::WpNode;
    WpResult result;
    auto rules = detail::wp_rules(p, opt);

    std::vector<WpNode> nodes;
    // (length, depth, sequence number)
    using Key = std::tuple<std::size_t, std::size_t, std::size_t>;
    std::priority_queue<Key, std::vector<Key>, std::greater<Key>> frontier;
    std::set<Word> seen;
    // instance of (schema, params), and whether it is cyclically reduced
    std::map<std::pair<std::size_t, RatVec>, std::pair<std::optional<Word>, bool>> instances;

    auto push = [&](WpNode n) -> std::optional<std::size_t> {
      if (!seen.insert(n.residual).second) {
        return std::nullopt;
      }
      nodes.push_back(std::move(n));
      std::size_t id = nodes.size() - 1;
      frontier.emplace(nodes[id].residual.size(), nodes[id].depth, id);
      return id;
    };

    auto finish = [&](std::size_t id) {
      std::vector<CertificateEntry> rev;
      for (std::int64_t k = static_cast<std::int64_t>(id); nodes[k].parent >= 0;
           k = nodes[k].parent) {
        rev.push_back(nodes[k].entry);
      }
      result.certificate.entries.assign(rev.rbegin(), rev.rend());
      result.status = WpResult::Status::proved;
    };

    WpNode root;
    root.residual = free_reduce(w);
    push(std::move(root));
    if (nodes[0].residual.empty()) {
      finish(0);
      return result;
    }

    while (!frontier.empty() && result.nodes < fuel) {
      auto [len, depth, id] = frontier.top();
      frontier.pop();
      ++result.nodes;
      Word const R = nodes[id].residual;
      auto const& rl = R.letters();
      std::size_t L = R.size();
      bool is_short = L <= opt.short_residual;
      std::vector<Rat> pool;
      if (is_short) {
        pool = detail::value_pool(R);
      }

      for (auto const& rule : rules) {
        std::size_t m = rule.tmpl.size();
        auto const& schema = p.relators[rule.schema];
        for (int inv = 0; inv < 2; ++inv) {
          Template V = inv ? invert(rule.tmpl) : rule.tmpl;
          for (std::size_t rho = 0; rho < m; ++rho) {
            Template T(V.begin() + rho, V.end());
            T.insert(T.end(), V.begin(), V.begin() + rho);
            // Longest unifiable prefix at each position; shorter ones unify too.
            // Short matches are only tried at their full reach.
            std::vector<std::size_t> reach(L, 0);
            for (std::size_t pos = 0; pos < L; ++pos) {
              std::size_t lo = 0, hi = std::min(m, L - pos);
              while (lo < hi) {
                std::size_t mid = (lo + hi + 1) / 2;
                if (unify_letters(T, 0, rl, pos, mid, rule.arity)) {
                  lo = mid;
                } else {
                  hi = mid - 1;
                }
              }
              reach[pos] = lo;
            }
            for (std::size_t ell = std::min(m, L); ell > 0; --ell) {
              bool neutral = 2 * ell == m;
              bool partial = 2 * ell < m;
              if (neutral && nodes[id].neutral >= opt.neutral_streak) {
                continue;
              }
              for (std::size_t pos = 0; pos + ell <= L; ++pos) {
                if (reach[pos] < ell || (partial && !is_short && reach[pos] != ell)) {
                  continue;
                }
                std::vector<RatVec> candidates;
                if (rule.fixed_params) {
                  candidates.push_back(*rule.fixed_params);
                } else {
                  auto b = unify_letters(T, 0, rl, pos, ell, rule.arity);
                  if (!b) {
                    continue;
                  }
                  if (is_short) {
                    candidates = detail::completions(*b, pool, opt.completion_cap);
                  } else if (partial && m <= 2 * ell + 1) {
                    candidates = detail::completions(*b, detail::bound_pool(*b),
                                                     opt.partial_completion_cap);
                  } else {
                    candidates = detail::completions(*b, {}, 1);
                  }
                }
                for (auto const& params : candidates) {
                  auto key = std::pair{rule.schema, params};
                  auto hit = instances.find(key);
                  if (hit == instances.end()) {
                    auto inst = rule.fixed_params
                                    ? std::optional<Word>(instantiate(rule.tmpl, {}))
                                    : schema.instantiate(params);
                    bool cancels = inst && detail::self_cancelling(*inst);
                    hit = instances.emplace(key, std::pair{std::move(inst), cancels}).first;
                  }
                  std::optional<Word> const& r = hit->second.first;
                  if (!r) {
                    continue;
                  }
                  if (partial && !is_short && !hit->second.second) {
                    continue;
                  }
                  Word Vw = inv ? invert(*r) : *r;
                  Word P = Vw.slice(0, rho);
                  Word Tw = Vw.slice(rho, m);
                  Tw.append(P);
                  if (!(Tw.slice(0, ell) == R.slice(pos, pos + ell))) {
                    continue;
                  }
                  Word next = R.slice(0, pos);
                  next.append(invert(Tw.slice(ell, m)));
                  next.append(R.slice(pos + ell, L));
                  WpNode child;
                  child.residual = free_reduce(next);
                  if (partial) {
                    if (!is_short && child.residual.size() > L) {
                      continue;
                    }
                    neutral = child.residual.size() >= L;
                    if (neutral && nodes[id].neutral >= opt.neutral_streak) {
                      continue;
                    }
                  }
                  child.parent = static_cast<std::int64_t>(id);
                  child.depth = depth + 1;
                  child.neutral = neutral ? nodes[id].neutral + 1 : 0;
                  child.entry = CertificateEntry{
                      concat(R.slice(0, pos), invert(P)), *r, rule.schema, params, inv == 1};
                  bool done = child.residual.empty();
                  auto cid = push(std::move(child));
                  if (done && cid) {
                    finish(*cid);
                    return result;
                  }
                }
              }
            }
          }
        }
      }
    }
    return result;
  }

}  // namespace realword

#endif  // REALWORD_WORDPROBLEM_HPP_
