#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lamshift/bisim.hpp"
#include "lamshift/corpus.hpp"
#include "lamshift/ctxeq.hpp"
#include "lamshift/parse.hpp"
#include "lamshift/reduction.hpp"

namespace {

using namespace lamshift;

// Term arguments are inline text or @file indirection.
Term read_term(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw std::runtime_error("cannot open term file: " + arg.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
  }
  return parse(arg);
}

int run_eval(const std::string& term_arg, uint64_t fuel) {
  Outcome o = evaluate(read_term(term_arg), fuel);
  std::cout << outcome_class_name(o) << ": " << print(outcome_term(o)) << "\n";
  if (const auto* f = std::get_if<FuelExhausted>(&o)) {
    std::cout << "steps taken: " << f->steps << "\n";
    return 2;
  }
  return 0;
}

int run_trace(const std::string& term_arg, uint64_t fuel) {
  auto ts = trace(read_term(term_arg), fuel);
  for (const auto& t : ts) std::cout << print(t) << "\n";
  bool finished = !step(ts.back()).has_value();
  return finished ? 0 : 2;
}

int run_bisim(const std::string& l, const std::string& r, const CheckConfig& cfg) {
  Verdict v = check(read_term(l), read_term(r), cfg);
  std::cout << verdict_json(v) << "\n";
  return std::holds_alternative<Inconclusive>(v) ? 2 : 0;
}

int run_distinguish(const std::string& l, const std::string& r, const SearchBounds& bounds,
                    unsigned jobs) {
  DistinguishOptions opts;
  opts.jobs = jobs;
  auto d = distinguish(read_term(l), read_term(r), bounds, opts);
  if (!d) {
    std::cout << "none at bounds\n";
    return 0;
  }
  std::cout << distinguisher_json(*d) << "\n";
  return 0;
}

int run_corpus(const std::string& filter, const std::string& file, const CheckConfig& base_cfg,
               const SearchBounds& bounds, unsigned jobs) {
  auto fixtures = file.empty() ? load_corpus() : load_corpus_file(file);
  int failures = 0;
  int ran = 0;
  for (const auto& f : fixtures) {
    if (!filter.empty() && f.name.find(filter) == std::string::npos) continue;
    ++ran;

    auto classify = [](const Verdict& v) {
      if (std::holds_alternative<Bisimilar>(v)) return VerdictClass::Bisimilar;
      if (std::holds_alternative<NotBisimilar>(v)) return VerdictClass::NotBisimilar;
      return VerdictClass::Inconclusive;
    };
    CheckConfig cfg = base_cfg;
    cfg.mode = Mode::Plain;
    VerdictClass plain = classify(check(f.left, f.right, cfg));
    cfg.mode = Mode::Refined;
    VerdictClass refined = classify(check(f.left, f.right, cfg));
    DistinguishOptions opts;
    opts.jobs = jobs;
    auto d = distinguish(f.left, f.right, bounds, opts);
    DistinguisherExpectation dist =
        d ? DistinguisherExpectation::Found : DistinguisherExpectation::NotFoundAtBound;

    bool ok = plain == f.expected_plain && refined == f.expected_refined &&
              dist == f.expected_distinguisher;
    failures += ok ? 0 : 1;
    std::cout << (ok ? "PASS " : "FAIL ") << f.name << "  plain=" << to_string(plain)
              << " refined=" << to_string(refined) << " distinguisher=" << to_string(dist);
    if (!ok) {
      std::cout << "  (expected plain=" << to_string(f.expected_plain)
                << " refined=" << to_string(f.expected_refined)
                << " distinguisher=" << to_string(f.expected_distinguisher) << ")";
    }
    std::cout << "\n";
  }
  std::cout << ran << " fixtures, " << failures << " failures\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for the call-by-value lambda calculus with shift and reset"};
  app.require_subcommand(1);

  uint64_t fuel = 10000;
  std::string mode = "plain";
  bool up_to_context = true;
  uint32_t up_to_depth = 6;
  uint32_t max_pairs = 5000;
  bool assume_divergence = false;
  uint32_t context_size = 6;
  unsigned jobs = 1;
  std::string left, right, term_arg, filter, corpus_file;

  auto add_fuel = [&](CLI::App* c) { c->add_option("--fuel", fuel, "step budget (default 10000)"); };
  auto add_check_flags = [&](CLI::App* c) {
    add_fuel(c);
    c->add_option("--mode", mode, "plain|refined (default plain)")
        ->check(CLI::IsMember({"plain", "refined"}));
    c->add_flag("--up-to-context,!--no-up-to-context", up_to_context,
                "discharge obligations via the context closure (default on)");
    c->add_option("--up-to-depth", up_to_depth, "closure matching depth (default 6)");
    c->add_option("--max-pairs", max_pairs, "visited-pair budget (default 5000)");
    c->add_flag("--assume-divergence", assume_divergence,
                "treat double fuel exhaustion as a diverging pair");
  };
  auto add_search_flags = [&](CLI::App* c) {
    add_fuel(c);
    c->add_option("--context-size", context_size, "max context frames (default 6)");
    c->add_option("--jobs", jobs, "parallel workers (default 1)");
  };

  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a term to a normal form");
  eval_cmd->add_option("term", term_arg, "term text or @file")->required();
  add_fuel(eval_cmd);

  CLI::App* trace_cmd = app.add_subcommand("trace", "print the reduction sequence");
  trace_cmd->add_option("term", term_arg, "term text or @file")->required();
  add_fuel(trace_cmd);

  CLI::App* bisim_cmd = app.add_subcommand("bisim", "run the normal-form bisimulation checker");
  bisim_cmd->add_option("left", left, "left term or @file")->required();
  bisim_cmd->add_option("right", right, "right term or @file")->required();
  add_check_flags(bisim_cmd);

  CLI::App* dist_cmd =
      app.add_subcommand("distinguish", "search for a distinguishing context and substitution");
  dist_cmd->add_option("left", left, "left term or @file")->required();
  dist_cmd->add_option("right", right, "right term or @file")->required();
  add_search_flags(dist_cmd);

  CLI::App* corpus_cmd = app.add_subcommand("corpus", "run the shipped fixtures");
  corpus_cmd->add_option("filter", filter, "substring filter on fixture names");
  corpus_cmd->add_option("--file", corpus_file, "fixture file (default: shipped corpus)");
  add_check_flags(corpus_cmd);
  corpus_cmd->add_option("--context-size", context_size, "max context frames (default 6)");
  corpus_cmd->add_option("--jobs", jobs, "parallel workers (default 1)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval_cmd->parsed()) return run_eval(term_arg, fuel);
    if (trace_cmd->parsed()) return run_trace(term_arg, fuel);
    CheckConfig cfg;
    cfg.fuel = fuel;
    cfg.max_pairs = max_pairs;
    cfg.mode = mode == "refined" ? Mode::Refined : Mode::Plain;
    cfg.up_to_context = up_to_context;
    cfg.up_to_depth = up_to_depth;
    cfg.assume_divergence = assume_divergence;
    SearchBounds bounds;
    bounds.context_size = context_size;
    bounds.fuel = fuel;
    if (bisim_cmd->parsed()) return run_bisim(left, right, cfg);
    if (dist_cmd->parsed()) return run_distinguish(left, right, bounds, jobs);
    if (corpus_cmd->parsed()) return run_corpus(filter, corpus_file, cfg, bounds, jobs);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
