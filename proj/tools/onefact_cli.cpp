#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "onefact/generators.hpp"
#include "onefact/graph.hpp"
#include "onefact/pipeline.hpp"
#include "onefact/spectral.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;       // verification or pipeline failure outcome
constexpr int kUsage = 2;         // input / usage error
constexpr int kExhausted = 3;     // retry budget ran out

onefact::Graph load_graph(const std::string& path) {
  return onefact::read_edge_list_file(path);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::invalid_argument("cannot open output file " + out_path);
    f << text;
  }
}

nlohmann::json default_config_json() {
  onefact::PipelineConfig cfg;
  onefact::GenSpec gen;
  return nlohmann::json{
      {"seed", cfg.seed},
      {"t", cfg.t},
      {"epsilon", cfg.epsilon},
      {"alpha", cfg.alpha},
      {"max_attempts", cfg.max_attempts},
      {"full_attempts", cfg.full_attempts},
      {"mode", "auto"},
      {"format", "text"},
      {"partition",
       {{"max_retries", cfg.partition.max_retries},
        {"slack", cfg.partition.slack},
        {"sample_count", cfg.partition.sample_count}}},
      {"completion",
       {{"alpha", cfg.completion.alpha},
        {"beta", cfg.completion.beta},
        {"submatch_retries", cfg.completion.submatch_retries},
        {"split_k", cfg.completion.split_k},
        {"max_rounds", cfg.completion.max_rounds}}},
      {"gen", {{"model", "complete"}, {"n", gen.n}, {"d", gen.d}}},
  };
}

int run(int argc, char** argv) {
  CLI::App app{"1-factorization toolkit for regular graphs"};
  app.require_subcommand(0, 1);
  bool print_config = false;
  app.add_flag("--print-config", print_config,
               "dump default configuration as JSON and exit");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a graph");
  std::string model = "complete", out_path;
  onefact::GenSpec spec;
  gen->add_option("--model", model,
                  "complete | cycle | random-regular | random-bipartite-regular");
  gen->add_option("-n", spec.n, "vertex count")->required();
  gen->add_option("-d", spec.d, "degree (random models)");
  gen->add_option("--seed", spec.seed, "RNG seed");
  gen->add_option("-o", out_path, "output file (default stdout)");

  // spectral
  auto* sp = app.add_subcommand("spectral", "second eigenvalue report");
  std::string sp_graph;
  double sp_tol = 1e-8;
  sp->add_option("graph", sp_graph, "edge-list file")->required();
  sp->add_option("--tol", sp_tol, "iterative tolerance");

  // factorize
  auto* fa = app.add_subcommand("factorize", "search for a 1-factorization");
  std::string fa_graph, fa_out, fa_mode = "auto", fa_format = "text";
  onefact::PipelineConfig pcfg;
  fa->add_option("graph", fa_graph, "edge-list file")->required();
  fa->add_option("-o", fa_out, "factorization output file (default stdout)");
  fa->add_option("--seed", pcfg.seed, "RNG seed");
  fa->add_option("--t", pcfg.t, "piece count (odd)");
  fa->add_option("--epsilon", pcfg.epsilon, "spectral exponent parameter");
  fa->add_option("--alpha", pcfg.alpha, "goodness parameter (<= 1/10)");
  fa->add_option("--max-retries", pcfg.partition.max_retries,
                 "partition resampling budget");
  fa->add_option("--max-attempts", pcfg.max_attempts, "outer attempt budget");
  fa->add_option("--slack", pcfg.partition.slack, "window slack multiplier");
  fa->add_option("--mode", fa_mode, "auto | dense | sparse");
  fa->add_option("--format", fa_format, "output format (text)");

  // verify
  auto* ve = app.add_subcommand("verify", "check a factorization file");
  std::string ve_graph, ve_fact;
  ve->add_option("graph", ve_graph, "edge-list file")->required();
  ve->add_option("factorization", ve_fact, "factorization file")->required();

  // bounds
  auto* bo = app.add_subcommand("bounds", "1-factorization counting bounds");
  int bo_n = 0, bo_d = 0;
  double bo_eps = 0.5;
  std::optional<int> bo_k;
  bo->add_option("-n", bo_n, "vertex count")->required();
  bo->add_option("-d", bo_d, "degree")->required();
  bo->add_option("--epsilon", bo_eps, "epsilon in (0,1)");
  bo->add_option("-k", bo_k, "bipartite half-size for the Schrijver bound");

  CLI11_PARSE(app, argc, argv);

  if (print_config) {
    std::cout << default_config_json().dump(2) << "\n";
    return kOk;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return kUsage;
  }

  if (*gen) {
    spec.model = onefact::parse_gen_model(model);
    onefact::Graph g = onefact::generate(spec);
    std::ostringstream os;
    std::ostringstream comment;
    comment << "model=" << model << " n=" << spec.n << " d=" << spec.d
            << " seed=" << spec.seed;
    onefact::write_edge_list(g, os, {comment.str()});
    emit(os.str(), out_path);
    return kOk;
  }

  if (*sp) {
    onefact::Graph g = load_graph(sp_graph);
    onefact::SpectralReport rep = onefact::second_eigenvalue(g, sp_tol);
    std::cout << "d " << rep.d << "\nlambda " << rep.lambda
              << "\nepsilon_star " << rep.epsilon_star << "\nmethod "
              << rep.method << "\n";
    return kOk;
  }

  if (*fa) {
    onefact::Graph g = load_graph(fa_graph);
    if (fa_mode == "dense")
      pcfg.force_mode = onefact::PipelineMode::kDense;
    else if (fa_mode == "sparse")
      pcfg.force_mode = onefact::PipelineMode::kSparse;
    else if (fa_mode != "auto")
      throw std::invalid_argument("unknown mode: " + fa_mode);
    if (fa_format != "text")
      throw std::invalid_argument("unknown format: " + fa_format);
    onefact::FactorizeOutcome outcome = onefact::factorize(g, pcfg);
    std::cerr << "lambda=" << outcome.spectral.lambda
              << " epsilon_star=" << outcome.spectral.epsilon_star
              << " attempts=" << outcome.stats.attempts
              << " t_used=" << outcome.stats.t_used
              << " wall=" << outcome.stats.wall_seconds << "s\n";
    if (!outcome.ok()) {
      std::cerr << "failure at stage " << outcome.stage << ": "
                << outcome.detail << "\n";
      return kFailure;
    }
    std::ostringstream os;
    std::ostringstream hdr;
    hdr << "n=" << g.vertex_count() << " d=" << *g.regular_degree()
        << " seed=" << pcfg.seed << " attempts=" << outcome.stats.attempts;
    onefact::write_factorization(g, *outcome.factorization, os, {hdr.str()});
    emit(os.str(), fa_out);
    return kOk;
  }

  if (*ve) {
    onefact::Graph g = load_graph(ve_graph);
    std::ifstream f(ve_fact);
    if (!f) throw std::invalid_argument("cannot open " + ve_fact);
    std::string problem;
    onefact::OneFactorization fac =
        onefact::read_factorization(f, g, &problem);
    onefact::VerifyVerdict v = onefact::verify_factorization(g, fac);
    if (!v.accept) {
      std::cerr << "reject: " << (problem.empty() ? v.violation : problem)
                << "\n";
      return kFailure;
    }
    std::cout << "accept\n";
    return kOk;
  }

  if (*bo) {
    onefact::BoundReport rep = onefact::counting_bounds(bo_n, bo_d, bo_eps, bo_k);
    std::cout << "log_lower " << rep.log_lower << "\nlog_upper " << rep.log_upper
              << " (asymptotic factor omitted)\n";
    if (rep.log_schrijver)
      std::cout << "log_schrijver " << *rep.log_schrijver << "\n";
    return kOk;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExhausted;
  }
}
