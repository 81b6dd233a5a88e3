// realword: command-line front end.
//
// Exit codes: 0 success, 1 disagreement or failed verification, 2 usage or
// input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "realword/realword.hpp"

#ifndef REALWORD_DATA_DIR
#define REALWORD_DATA_DIR "data"
#endif

using namespace realword;
using nlohmann::json;

namespace {

  //! Raised for bad input files or values; exit code 2.
  struct InputError : Error {
    using Error::Error;
  };

  std::string read_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw InputError("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  BssProgram load_program(std::string const& path) {
    return BssProgram::parse(read_file(path));
  }

  Presentation load_presentation(std::string const& path) {
    return Presentation::from_json(json::parse(read_file(path)));
  }

  class Emitter {
   public:
    explicit Emitter(std::string format) : _jsonl(format == "jsonl") {}

    //! Text mode prints "key: value" lines and a blank line per record.
    void operator()(json const& rec) const {
      if (_jsonl) {
        std::cout << rec.dump() << "\n";
        return;
      }
      for (auto const& [k, v] : rec.items()) {
        std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
      std::cout << "\n";
    }

   private:
    bool _jsonl;
  };

  json str_list(std::vector<std::string> const& xs) {
    json a = json::array();
    for (auto const& x : xs) {
      a.push_back(x);
    }
    return a;
  }

  char const* run_kind(RunResult::Kind k) {
    switch (k) {
      case RunResult::Kind::halted:
        return "halted";
      case RunResult::Kind::out_of_fuel:
        return "out_of_fuel";
      case RunResult::Kind::division_by_zero:
        return "division_by_zero";
    }
    return "?";
  }

  //! One "+R2 (params) by conjugator" string per entry.
  json certificate_record(Presentation const& p, Certificate const& c) {
    json entries = json::array();
    for (auto const& e : c.entries) {
      std::string name = e.schema < p.relators.size() ? p.relators[e.schema].name
                                                      : std::to_string(e.schema);
      entries.push_back((e.inverted ? "-" : "+") + name + " " + e.params.str() + " by "
                        + (e.conjugator.empty() ? "1" : e.conjugator.str()));
    }
    return entries;
  }

  //! Named HNN structures available to hnn-reduce.
  HnnStructure hnn_structure(std::string const& name) {
    if (name == "bs12") {
      return bs12::structure();
    }
    if (name == "fixing") {
      return acceptance::fixing_structure();
    }
    throw InputError("unknown structure '" + name + "' (expected bs12 or fixing)");
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word problems, BSS machines and the halting reduction"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  Index fuel = 10000;
  std::uint64_t seed = 0;
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "jsonl"}))
      ->capture_default_str();

  auto fuel_opt = [&](CLI::App* sub) {
    sub->add_option("--fuel", fuel, "Step or node budget")->capture_default_str();
  };
  auto seed_opt = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Seed of randomized suites")->capture_default_str();
  };

  // run
  std::string program_path;
  std::vector<std::string> inputs;
  bool show_trace = false;
  auto* run_cmd = app.add_subcommand("run", "Simulate a BSS program");
  run_cmd->add_option("program", program_path, "Program file")->required();
  run_cmd->add_option("--input", inputs, "Input vector p/q,p/q,...")->required();
  run_cmd->add_flag("--trace", show_trace, "Print the computation trace");
  fuel_opt(run_cmd);

  // paths
  Index count = 0;
  auto* paths_cmd = app.add_subcommand("paths", "Computation paths of a program");
  paths_cmd->add_option("program", program_path, "Program file")->required();
  auto* paths_input = paths_cmd->add_option("--input", inputs, "Find the path taken on inputs");
  auto* paths_count =
      paths_cmd->add_option("--count", count, "List the first paths, scanning --fuel indices");
  paths_input->excludes(paths_count);
  fuel_opt(paths_cmd);

  // wp
  std::string presentation_path, word_text, certificate_out, certificate_path;
  auto* wp_cmd = app.add_subcommand("wp", "Search a relator certificate for w = 1");
  wp_cmd->add_option("presentation", presentation_path, "Presentation JSON")->required();
  wp_cmd->add_option("--word", word_text, "Word, e.g. 'x(1,5)^-1 . y'")->required();
  wp_cmd->add_option("--certificate-out", certificate_out, "Write the certificate JSON here");
  fuel_opt(wp_cmd);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Check a certificate for w = 1");
  verify_cmd->add_option("presentation", presentation_path, "Presentation JSON")->required();
  verify_cmd->add_option("--word", word_text, "Word")->required();
  verify_cmd->add_option("--certificate", certificate_path, "Certificate JSON")->required();

  // hnn-reduce
  std::string structure = "bs12";
  auto* hnn_cmd = app.add_subcommand("hnn-reduce", "Britton-reduce a word");
  hnn_cmd->add_option("--word", word_text, "Word")->required();
  hnn_cmd->add_option("--structure", structure, "bs12 or fixing")->capture_default_str();

  // reduce
  bool inject_fault = false;
  auto* reduce_cmd = app.add_subcommand("reduce", "Halting reduction to the word problem");
  reduce_cmd->add_option("program", program_path, "Program file")->required();
  reduce_cmd->add_option("--input", inputs, "Input vector; repeatable")->required();
  reduce_cmd->add_flag("--inject-fault", inject_fault)->group("");
  fuel_opt(reduce_cmd);

  // figure1
  std::string row = "all";
  std::size_t samples = 100;
  auto* fig_cmd = app.add_subcommand("figure1", "Coherence of the operation subgroup table");
  fig_cmd->add_option("--row", row, "copy, const, add, neg, mul, inv, geq, lt or all")
      ->capture_default_str();
  fig_cmd->add_option("--samples", samples, "Positive instances per row")->capture_default_str();
  seed_opt(fig_cmd);

  // examples
  std::string group;
  auto* ex_cmd = app.add_subcommand("examples", "Oracle and semi-decider on an example group");
  ex_cmd->add_option("group", group, "circle, torus, sl2, rationals-a, rationals-b, qgroup")
      ->required();
  ex_cmd->add_option("--word", word_text, "Word")->required();
  fuel_opt(ex_cmd);

  // selftest
  std::string data_dir = REALWORD_DATA_DIR;
  bool timings = false;
  auto* self_cmd = app.add_subcommand("selftest", "Run every acceptance suite");
  seed_opt(self_cmd);
  self_cmd->add_option("--data", data_dir, "Data directory")->capture_default_str();
  self_cmd->add_flag("--timings", timings, "Append wall-clock times");

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return 2;
  }

  Emitter emit(format);
  try {
    if (*run_cmd) {
      auto p = load_program(program_path);
      auto r = run(p, RatVec::parse(inputs.at(0)), fuel, show_trace);
      json rec{{"status", run_kind(r.kind)}, {"steps", r.steps}};
      if (r.halted()) {
        rec["output"] = r.output.str();
      }
      if (show_trace) {
        std::vector<std::string> lines;
        for (auto const& e : r.trace.entries) {
          lines.push_back(std::to_string(e.before.n) + ": " + e.instruction.str());
        }
        rec["trace"] = str_list(lines);
      }
      emit(rec);
      return 0;
    }

    if (*paths_cmd) {
      auto p = load_program(program_path);
      if (!inputs.empty()) {
        RatVec x = RatVec::parse(inputs.at(0));
        auto w = find_path_witness(p, x, fuel);
        json rec{{"input", x.str()}};
        if (w) {
          rec["index"] = w->n;
          rec["path"] = w->path.str();
        } else {
          rec["index"] = nullptr;
        }
        emit(rec);
        return 0;
      }
      Index found = 0;
      for (Index n = 0; n < fuel && found < count; ++n) {
        if (auto path = enumerate_paths(p, n)) {
          emit(json{{"index", n}, {"path", path->str()}});
          ++found;
        }
      }
      return 0;
    }

    if (*wp_cmd) {
      auto p = load_presentation(presentation_path);
      Word w = Word::parse(word_text);
      auto res = wp_semidecide(p, w, fuel);
      json rec{{"word", w.str()},
               {"status", res.proved() ? "proved" : "unknown"},
               {"nodes", res.nodes}};
      if (res.proved()) {
        rec["certificate"] = certificate_record(p, res.certificate);
        if (!certificate_out.empty()) {
          std::ofstream(certificate_out) << res.certificate.to_json().dump(2) << "\n";
        }
      }
      emit(rec);
      return 0;
    }

    if (*verify_cmd) {
      auto p = load_presentation(presentation_path);
      Word w = Word::parse(word_text);
      auto cert = Certificate::from_json(json::parse(read_file(certificate_path)));
      bool ok = verify_certificate(p, w, cert);
      emit(json{{"word", w.str()}, {"entries", cert.size()}, {"valid", ok}});
      return ok ? 0 : 1;
    }

    if (*hnn_cmd) {
      auto h = hnn_structure(structure);
      Word w = Word::parse(word_text);
      auto r = britton_reduce_counted(h, w);
      json rec{{"word", w.str()},
               {"reduced", r.word.empty() ? "1" : r.word.str()},
               {"pinches", r.pinches},
               {"stable_letters", stable_letter_count(h, r.word)}};
      try {
        rec["identity"] = hnn_is_identity(h, w);
      } catch (OracleUndefined const&) {
        rec["identity"] = nullptr;
      }
      emit(rec);
      return 0;
    }

    if (*reduce_cmd) {
      auto p = load_program(program_path);
      std::vector<RatVec> xs;
      for (auto const& s : inputs) {
        xs.push_back(RatVec::parse(s));
      }
      auto rep = check_reduction(p, xs, fuel, inject_fault);
      for (auto const& r : rep.records) {
        emit(json{{"input", r.input.str()},
                  {"query", r.words.query.str()},
                  {"commutator", r.words.commutator.str()},
                  {"halted", r.halted},
                  {"steps", r.steps},
                  {"group", group_side_name(r.group)},
                  {"agree", r.agree()}});
      }
      emit(json{{"inputs", rep.records.size()}, {"disagreements", rep.disagreements()}});
      return rep.disagreements() == 0 ? 0 : 1;
    }

    if (*fig_cmd) {
      std::vector<PathOp::Kind> rows;
      if (row == "all") {
        rows = {PathOp::Kind::copy, PathOp::Kind::assign, PathOp::Kind::add,
                PathOp::Kind::neg,  PathOp::Kind::mul,    PathOp::Kind::inv,
                PathOp::Kind::guard_geq, PathOp::Kind::guard_lt};
      } else if (auto k = row_from_name(row)) {
        rows = {*k};
      } else {
        throw InputError("--row: unknown row '" + row + "'");
      }
      bool ok = true;
      for (auto k : rows) {
        auto rep = op_table_check(k, samples, std::max<std::size_t>(1, samples / 5), seed);
        ok = ok && rep.ok();
        emit(json{{"row", rep.row},
                  {"positives", rep.positives},
                  {"negatives", rep.negatives},
                  {"random_checks", rep.random_checks},
                  {"failures", str_list(rep.failures)},
                  {"ok", rep.ok()}});
      }
      return ok ? 0 : 1;
    }

    if (*ex_cmd) {
      for (auto const& c : example_corpus()) {
        if (c.name != group) {
          continue;
        }
        Word w = Word::parse(word_text);
        bool oracle = c.oracle(w);
        auto res = wp_semidecide(c.presentation, w, fuel);
        bool consistent = !res.proved() || oracle;
        json rec{{"group", c.name},
                 {"word", w.str()},
                 {"oracle", oracle ? "identity" : "not_identity"},
                 {"wp", res.proved() ? "proved" : "unknown"},
                 {"nodes", res.nodes}};
        if (res.proved()) {
          rec["certificate"] = certificate_record(c.presentation, res.certificate);
        }
        emit(rec);
        return consistent ? 0 : 1;
      }
      throw InputError("unknown group '" + group + "'");
    }

    if (*self_cmd) {
      bool ok = true;
      for (auto const& r : run_acceptance(seed, data_dir)) {
        ok = ok && r.passed;
        json rec{{"criterion", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}};
        if (timings) {
          rec["seconds"] = r.seconds;
        }
        if (format == "jsonl") {
          emit(rec);
        } else {
          std::cout << "criterion " << r.id << " " << (r.passed ? "PASS" : "FAIL") << " "
                    << r.name << ": " << r.detail;
          if (timings) {
            std::cout << " (" << r.seconds << " s)";
          }
          std::cout << "\n";
        }
      }
      return ok ? 0 : 1;
    }
  } catch (InputError const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (ParseError const& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (json::exception const& e) {
    std::cerr << "json error: " << e.what() << "\n";
    return 2;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
