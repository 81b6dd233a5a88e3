#ifndef REALWORD_ACCEPTANCE_HPP_
#define REALWORD_ACCEPTANCE_HPP_

// The ten end-to-end acceptance checks, shared by the acceptance binary and
// `realword selftest`.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <future>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "britton.hpp"
#include "corpus.hpp"
#include "groups.hpp"
#include "pattern.hpp"
#include "reduction.hpp"
#include "wordproblem.hpp"

namespace realword {

  struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;

    std::string line() const {
      std::ostringstream os;
      os << "criterion " << id << " " << (passed ? "PASS" : "FAIL") << " " << name << ": "
         << detail << " (" << std::fixed;
      os.precision(2);
      os << seconds << " s)";
      return os.str();
    }
  };

  namespace acceptance {

    //! Thrown by a check to report a failed criterion.
    struct Failed : Error {
      using Error::Error;
    };

    inline void expect(bool ok, std::string const& what) {
      if (!ok) {
        throw Failed(what);
      }
    }

    inline Rat small(std::mt19937_64& g, long span = 3, long den = 2) {
      std::uniform_int_distribution<long> n(-span, span), d(1, den);
      return Rat(n(g), d(g));
    }

    inline RatVec small_vec(std::mt19937_64& g, std::size_t dim) {
      RatVec v;
      for (std::size_t i = 0; i < dim; ++i) {
        v.push_back(small(g));
      }
      return v;
    }

    inline BssProgram load_program(std::string const& dir, std::string const& name) {
      std::ifstream in(dir + "/programs/" + name);
      if (!in) {
        throw IndexError("cannot open program " + dir + "/programs/" + name);
      }
      std::stringstream ss;
      ss << in.rdbuf();
      return BssProgram::parse(ss.str());
    }

    //! Cancels a randomly chosen adjacent inverse pair until none is left.
    inline Word random_order_reduce(Word const& w, std::mt19937_64& g) {
      auto ls = w.letters();
      while (true) {
        std::vector<std::size_t> sites;
        for (std::size_t i = 0; i + 1 < ls.size(); ++i) {
          if (ls[i].cancels(ls[i + 1])) {
            sites.push_back(i);
          }
        }
        if (sites.empty()) {
          return Word(ls);
        }
        std::size_t i = sites[g() % sites.size()];
        ls.erase(ls.begin() + static_cast<std::ptrdiff_t>(i),
                 ls.begin() + static_cast<std::ptrdiff_t>(i + 2));
      }
    }

    inline std::string confluence(std::uint64_t seed) {
      std::mt19937_64 g(seed);
      std::uniform_int_distribution<std::size_t> len(0, 50);
      std::uniform_int_distribution<int> alpha(1, 20), coin(0, 1);
      for (int n = 0; n < 10000; ++n) {
        int k = alpha(g);
        std::uniform_int_distribution<int> pick(0, k - 1);
        Word w;
        for (std::size_t i = len(g); i > 0; --i) {
          w.push_back(Letter{xgen(Rat(1), Rat(pick(g))), coin(g) ? 1 : -1});
        }
        expect(free_reduce(w) == random_order_reduce(w, g), "strategies differ on " + w.str());
      }
      return "10000 words agree";
    }

    inline std::string nielsen(std::uint64_t seed) {
      std::mt19937_64 g(seed);
      std::uniform_int_distribution<int> dim(0, 4), cnt(1, 6), coin(0, 1);
      WordSet Y = pattern_set([](RatVec const& r) { return r.dim() <= 4; });
      std::size_t pairs = 0, spans = 0, merged = 0;
      while (pairs < 1000) {
        RatVec r = small_vec(g, dim(g)), s = small_vec(g, dim(g));
        if (r == s) {
          continue;
        }
        ++pairs;
        expect(!concat(encode_w(r), invert(encode_w(s))).empty(),
               "w_r = w_s for " + r.str() + " " + s.str());
        std::vector<PatternFactor> fs;
        for (int k = cnt(g); k > 0; --k) {
          PatternFactor f{coin(g) ? 1 : -1, coin(g) ? r : s};
          if (!fs.empty() && fs.back().r == f.r && fs.back().eps == -f.eps) {
            continue;
          }
          fs.push_back(f);
        }
        Word w = multiply_factors(fs);
        auto back = nielsen_decompose(w);
        expect(back && *back == fs, "decomposition not unique for " + w.str());
        Word raw;
        for (auto const& f : fs) {
          raw.append(f.eps == 1 ? encode_w(f.r) : invert(encode_w(f.r)));
        }
        // span_decide splits w into whole blocks, which exist only when the
        // factors meet without cancelling.
        if (raw.size() != w.size()) {
          ++merged;
        } else if (w.size() <= span_letter_cap) {
          ++spans;
          expect(span_decide(w, Y), "span_decide rejects " + w.str());
          Word bad = w;
          bad.push_back(pos(xgen(Rat(1), Rat(99))));
          if (bad.size() <= span_letter_cap) {
            expect(!span_decide(bad, Y) && !nielsen_decompose(free_reduce(bad)),
                   "mutated word accepted: " + bad.str());
          }
        }
      }
      return "1000 pairs, " + std::to_string(spans) + " span checks, " + std::to_string(merged)
             + " products with cancellation between factors";
    }

    //! All freely reduced words of length <= n over a, t.
    inline std::vector<Word> bs12_words(std::size_t n) {
      std::vector<Letter> alphabet{pos(bs12::a()), neg(bs12::a()), pos(bs12::t()),
                                   neg(bs12::t())};
      std::vector<Word> out{Word{}}, layer{Word{}};
      for (std::size_t len = 1; len <= n; ++len) {
        std::vector<Word> next;
        for (auto const& w : layer) {
          for (auto const& l : alphabet) {
            if (!w.empty() && w.letters().back().cancels(l)) {
              continue;
            }
            Word v = w;
            v.push_back(l);
            next.push_back(std::move(v));
          }
        }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
      }
      return out;
    }

    inline std::string britton(std::uint64_t) {
      auto h = bs12::structure();
      auto p = bs12::presentation();
      std::size_t total = 0, trivial = 0;
      for (auto const& w : bs12_words(8)) {
        ++total;
        bool id = hnn_is_identity(h, w);
        expect(id == bs12::eval(w).is_identity(), "disagrees with representation: " + w.str());
        if (id && !w.empty()) {
          ++trivial;
          auto res = wp_semidecide(p, w, 20000);
          expect(res.proved() && verify_certificate(p, w, res.certificate),
                 "rewriting fails on " + w.str());
        }
      }
      return std::to_string(total) + " words, " + std::to_string(trivial)
             + " nonempty trivial ones rewritten";
    }

    //! Free base, A = B = < w_r : r_1 >= 0 >, phi the identity.
    inline HnnStructure fixing_structure() {
      HnnStructure h;
      h.label = "fixing";
      h.base_identity = [](Word const& w) -> Tri { return free_reduce(w).empty(); };
      StableLetterSpec s;
      s.family = Family::t;
      auto member = [](Word const& g, RatVec const&) -> Tri {
        auto fs = nielsen_decompose(free_reduce(g));
        if (!fs) {
          return false;
        }
        for (auto const& f : *fs) {
          if (f.r.dim() == 0 || f.r[0].sign() < 0) {
            return false;
          }
        }
        return true;
      };
      s.in_A = member;
      s.in_B = member;
      s.phi = [](Word const& g, RatVec const&) -> std::optional<Word> { return free_reduce(g); };
      s.phi_inverse = s.phi;
      h.stable.push_back(std::move(s));
      return h;
    }

    inline std::string commutator_membership(std::uint64_t seed) {
      auto h = fixing_structure();
      std::mt19937_64 g(seed);
      std::uniform_int_distribution<int> dim(1, 3), len(1, 3), coin(0, 3);
      Letter t{gen(Family::t), 1};
      int members = 0;
      for (int n = 0; n < 200; ++n) {
        Word w;
        for (int k = len(g); k > 0; --k) {
          Word f = encode_w(small_vec(g, dim(g)));
          if (coin(g) == 0) {
            f = invert(f);
          }
          if (coin(g) == 0) {
            f.push_back(pos(xgen(Rat(1), small(g))));
          }
          w.append(f);
        }
        w = free_reduce(w);
        Word c{t};
        c.append(w);
        c.push_back(t.inverse());
        c.append(invert(w));
        bool in = *h.stable[0].in_A(w, {});
        members += in;
        expect(hnn_is_identity(h, c) == in, "commutator mismatch on " + w.str());
      }
      return "200 words, " + std::to_string(members) + " members";
    }

    inline std::string certificates(std::uint64_t seed) {
      std::mt19937_64 g(seed);
      auto corpus = example_corpus();
      std::size_t proved = 0, refuted = 0;
      for (std::size_t n = 0; n < 500; ++n) {
        auto const& c = corpus[n % corpus.size()];
        Word w = relator_built_identity(c, g, 1 + n % 2, 2);
        expect(c.oracle(w), c.name + " oracle rejects relator-built " + w.str());
        auto res = wp_semidecide(c.presentation, w, 100000);
        expect(res.proved(), c.name + " not proved: " + w.str());
        expect(verify_certificate(c.presentation, w, res.certificate),
               c.name + " certificate rejected: " + w.str());
        ++proved;
      }
      for (std::size_t n = 0; refuted < 500; ++n) {
        auto const& c = corpus[n % corpus.size()];
        Word w = random_corpus_word(c, g, 4);
        if (w.empty() || c.oracle(w)) {
          continue;
        }
        ++refuted;
        auto res = wp_semidecide(c.presentation, w, 2000);
        expect(!res.proved(), c.name + " refuted word proved: " + w.str());
      }
      return std::to_string(proved) + " identities proved and verified, "
             + std::to_string(refuted) + " refuted words unproved";
    }

    inline std::string op_table(std::uint64_t seed) {
      std::size_t rows = 0;
      for (auto k : {PathOp::Kind::copy, PathOp::Kind::assign, PathOp::Kind::add,
                     PathOp::Kind::neg, PathOp::Kind::mul, PathOp::Kind::inv,
                     PathOp::Kind::guard_geq, PathOp::Kind::guard_lt}) {
        auto rep = op_table_check(k, 100, 20, seed);
        expect(rep.positives == 100 && rep.negatives == 20,
               rep.row + " generated too few instances");
        expect(rep.ok(), rep.row + ": " + (rep.failures.empty() ? "" : rep.failures[0]));
        ++rows;
      }
      return std::to_string(rows) + " rows, 100 positive and 20 negative each";
    }

    inline std::string action_laws(std::uint64_t seed) {
      std::mt19937_64 g(seed);
      std::uniform_int_distribution<long> slot(1, 4);
      for (int n = 0; n < 1000; ++n) {
        Word w = free_reduce(
            concat(encode_w(small_vec(g, 4)), invert(encode_w(small_vec(g, 2)))));
        Rat i(slot(g)), j(slot(g)), t = small(g, 12, 5), u = small(g, 12, 5);
        expect(stable_conjugate(a_letter(i, t), stable_conjugate(a_letter(i, u), w))
                   == stable_conjugate(a_letter(i, t + u), w),
               "additive law fails on " + w.str());
        if (!t.is_zero() && !u.is_zero()) {
          expect(stable_conjugate(m_letter(i, t), stable_conjugate(m_letter(i, u), w))
                     == stable_conjugate(m_letter(i, t * u), w),
                 "multiplicative law fails on " + w.str());
        }
        if (!(i == j) && !u.is_zero()) {
          expect(stable_conjugate(a_letter(i, t), stable_conjugate(m_letter(j, u), w))
                     == stable_conjugate(m_letter(j, u), stable_conjugate(a_letter(i, t), w)),
                 "cross-index commutation fails on " + w.str());
        }
      }
      return "1000 cases";
    }

    struct ProgramCase {
      std::string file;
      std::size_t dim;
    };

    inline std::vector<ProgramCase> reduction_programs() {
      return {{"sign.bss", 1},     {"poly_sign.bss", 1}, {"muldiv.bss", 2},
              {"div2d.bss", 2},    {"countdown.bss", 1}, {"halt.bss", 1}};
    }

    inline std::string reduction(std::uint64_t seed, std::string const& data_dir) {
      std::mt19937_64 g(seed);
      std::size_t programs = 0, conclusive = 0, halted = 0;
      for (auto const& pc : reduction_programs()) {
        auto prog = load_program(data_dir, pc.file);
        std::vector<RatVec> in;
        for (int n = 0; n < 200; ++n) {
          std::vector<Rat> xs;
          for (std::size_t k = 0; k < pc.dim; ++k) {
            xs.push_back(n % 7 == 0 ? Rat(0) : small(g, 12, 5));
          }
          in.emplace_back(xs);
        }
        auto rep = check_reduction(prog, in, 10000);
        expect(rep.disagreements() == 0,
               pc.file + ": " + std::to_string(rep.disagreements()) + " disagreements");
        for (auto const& r : rep.records) {
          conclusive += r.conclusive();
          halted += r.halted;
        }
        ++programs;
      }
      return std::to_string(programs) + " programs x 200 inputs, " + std::to_string(conclusive)
             + " conclusive, " + std::to_string(halted) + " halting, 0 disagreements";
    }

    inline std::string sl2_relations(std::uint64_t seed) {
      auto corpus = example_corpus();
      auto const& sl2 = corpus[2];
      auto const& p = sl2.presentation;
      std::mt19937_64 g(seed);
      std::size_t words = 0;
      for (int n = 0; n < 100; ++n) {
        for (std::size_t k = 0; k < p.relators.size(); ++k) {
          Word r = *p.relators[k].instantiate(sample_relator_params(sl2, k, g));
          auto m = sl2_eval(r);
          expect(m.det() == Rat(1) && sl2_wp(r), p.relators[k].name + " fails: " + r.str());
          ++words;
        }
        Word w = random_corpus_word(sl2, g, 12);
        expect(sl2_eval(w).det() == Rat(1), "det != 1 on " + w.str());
        ++words;
      }
      return std::to_string(words) + " words, all relators evaluate to 1, det 1";
    }

    inline std::string hygiene(std::uint64_t seed, std::string const& data_dir) {
      std::mt19937_64 g(seed);
      std::size_t scanned = 0;
      for (auto const& pc : reduction_programs()) {
        auto prog = load_program(data_dir, pc.file);
        if (!prog.constants().empty()) {
          continue;
        }
        for (auto const& c : mult_guard_transform(prog).constants()) {
          expect(c.is_zero(), pc.file + ": guard introduces constant " + c.str());
        }
        auto u = assemble_U(prog);
        for (int n = 0; n < 50; ++n) {
          RatVec x = small_vec(g, pc.dim);
          std::set<Rat> inputs(x.begin(), x.end());
          auto q = reduce_halting(prog, x);
          for (auto const& s : x_values(q.commutator)) {
            expect(inputs.count(s) > 0, pc.file + ": foreign rational " + s.str());
          }
          auto m = u.member(q.query, 1000);
          for (auto const& f : m.factors) {
            for (auto const& c : path_constants(f.witness.path)) {
              expect(c.is_zero(), pc.file + ": path constant " + c.str());
            }
          }
          ++scanned;
        }
      }
      expect(scanned > 0, "no constant-free program found");
      return std::to_string(scanned) + " artifacts scanned";
    }

    inline CriterionResult timed(int id, std::string name, double limit,
                                 std::function<std::string()> body) {
      CriterionResult r;
      r.id = id;
      r.name = std::move(name);
      auto t0 = std::chrono::steady_clock::now();
      try {
        r.detail = body();
        r.passed = true;
      } catch (std::exception const& e) {
        r.detail = e.what();
      }
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (r.passed && limit > 0 && r.seconds >= limit) {
        r.passed = false;
        r.detail += ", over the time limit";
      }
      return r;
    }
  }  // namespace acceptance

  //! Runs all criteria concurrently; results come back in criterion order.
  //! Time limits are wall-clock and measured per criterion.
  inline std::vector<CriterionResult> run_acceptance(std::uint64_t seed,
                                                     std::string const& data_dir) {
    using namespace acceptance;
    std::vector<std::future<CriterionResult>> jobs;
    auto add = [&](int id, std::string name, double limit, std::function<std::string()> f) {
      jobs.push_back(std::async(std::launch::async, timed, id, std::move(name), limit,
                                std::move(f)));
    };
    add(1, "free-reduction confluence", 10, [=] { return confluence(seed + 1); });
    add(2, "nielsen freeness", 0, [=] { return nielsen(seed + 2); });
    add(3, "britton oracle equivalence", 60, [=] { return britton(seed + 3); });
    add(4, "commutator membership", 0, [=] { return commutator_membership(seed + 4); });
    add(5, "certificate round trip", 0, [=] { return certificates(seed + 5); });
    add(6, "operation table coherence", 30, [=] { return op_table(seed + 6); });
    add(7, "action laws", 0, [=] { return action_laws(seed + 7); });
    add(8, "halting reduction", 300, [=] { return reduction(seed + 8, data_dir); });
    add(9, "sl2 relations", 0, [=] { return sl2_relations(seed + 9); });
    add(10, "constant hygiene", 0, [=] { return hygiene(seed + 10, data_dir); });
    std::vector<CriterionResult> out;
    for (auto& j : jobs) {
      out.push_back(j.get());
    }
    return out;
  }

}  // namespace realword

#endif  // REALWORD_ACCEPTANCE_HPP_
