// Command-line front end: simulate, fit, summarize, compare, replicate-study.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dpcp/diagnostics.hpp"
#include "dpcp/errors.hpp"
#include "dpcp/io.hpp"
#include "dpcp/report.hpp"
#include "dpcp/study.hpp"

using namespace dpcp;

namespace {

struct ChainFlags {
  std::size_t iters = 130000;
  std::size_t burnin = 80000;
  std::size_t thin = 10;
  std::uint64_t seed = 1;
  double sigma_beta2 = 1000.0;
  std::size_t init_segments = 10;
  std::vector<std::size_t> kstar_grid{4, 5, 6, 7, 8, 9, 10};
  std::string moves = "exact";
  double alpha = 1.0;

  void add_to(CLI::App* app) {
    app->add_option("--iters", iters, "Total iterations")->capture_default_str();
    app->add_option("--burnin", burnin, "Burn-in iterations")->capture_default_str();
    app->add_option("--thin", thin, "Keep every n-th post burn-in draw")->capture_default_str();
    app->add_option("--seed", seed, "Random seed")->capture_default_str();
    app->add_option("--sigma-beta2", sigma_beta2, "Half-normal prior variance for beta")->capture_default_str();
    app->add_option("--init-segments", init_segments, "Initial equal segments (dp, ko)")->capture_default_str();
    app->add_option("--kstar-grid", kstar_grid, "K* values for the finite model")->delimiter(',')->capture_default_str();
    app->add_option("--moves", moves, "Allocation moves for dp: exact or as-printed")
        ->check(CLI::IsMember({"exact", "as-printed"}))
        ->capture_default_str();
    app->add_option("--alpha", alpha, "Self-transition mass for ko")->capture_default_str();
  }

  FitOptions options(ModelKind model) const {
    FitOptions o;
    o.model = model;
    o.chain.iterations = iters;
    o.chain.burn_in = burnin;
    o.chain.thin = thin;
    o.chain.seed = seed;
    o.chain.beta_prior_variance = sigma_beta2;
    o.chain.init_segments = init_segments;
    o.kstar_grid = kstar_grid;
    o.moves.rule = moves == "exact" ? MoveRule::Exact : MoveRule::AsPrinted;
    o.ko.alpha = alpha;
    return o;
  }

  nlohmann::json meta() const {
    return {{"iters", iters},       {"burnin", burnin}, {"thin", thin},   {"seed", seed},
            {"sigma_beta2", sigma_beta2}, {"init_segments", init_segments}, {"moves", moves}};
  }
};

// Segmentation from a draw file (its MAP segmentation) or a CSV with a
// regime column.
StateSequence load_partition(const std::string& path) {
  std::ifstream probe(path);
  if (!probe) throw InvalidInput("cannot open '" + path + "'");
  std::string first;
  std::getline(probe, first);
  if (!first.empty() && first.front() == '{') {
    const DrawFile f = read_draws(path);
    const RunSummary s = summarize(f.draws, EmissionFamily::from_name(f.header.family));
    return s.map_segmentation;
  }
  const TimeSeries ts = load_csv(path);
  if (!ts.truth) throw InvalidInput(path + ": no regime column");
  return *ts.truth;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Change-point inference with a Dirichlet-process prior on regime dynamics"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Generate a simulated series");
  std::string sim_scheme = "1", sim_out;
  std::uint64_t sim_seed = 1;
  sim->add_option("--scheme", sim_scheme, "1, 2 or radon")->required();
  sim->add_option("--seed", sim_seed, "Random seed")->capture_default_str();
  sim->add_option("--out", sim_out, "Output CSV")->required();

  // fit
  auto* fit = app.add_subcommand("fit", "Run a sampler and write posterior draws");
  std::string fit_model_name = "dp", fit_emission = "normal", fit_data, fit_out, value_col, time_col, ktrace_out;
  bool fit_standardize = false;
  ChainFlags fit_flags;
  fit->add_option("--model", fit_model_name, "dp, chib or ko")->check(CLI::IsMember({"dp", "chib", "ko"}))->capture_default_str();
  fit->add_option("--emission", fit_emission, "normal, poisson or lintrend")
      ->check(CLI::IsMember({"normal", "poisson", "lintrend"}))
      ->capture_default_str();
  fit->add_option("--data", fit_data, "Input CSV")->required();
  fit->add_option("--out", fit_out, "Output draw file")->required();
  fit->add_option("--value-column", value_col, "Value column (name or 1-based index)");
  fit->add_option("--time-column", time_col, "Time label column (name or 1-based index)");
  fit->add_flag("--standardize", fit_standardize, "Standardize values before fitting");
  fit->add_option("--k-trace", ktrace_out, "Write the per-iteration K trajectory here");
  fit_flags.add_to(fit);

  // summarize
  auto* sum = app.add_subcommand("summarize", "Summarize a draw file");
  std::string sum_draws, sum_table;
  double sum_level = 0.95;
  sum->add_option("--draws", sum_draws, "Draw file")->required();
  sum->add_option("--level", sum_level, "Credible level")->capture_default_str();
  sum->add_option("--table", sum_table, "Also write the table to this file");

  // compare
  auto* cmp = app.add_subcommand("compare", "Rand index between two segmentations");
  std::string cmp_a, cmp_b;
  cmp->add_option("--a", cmp_a, "Draw file or CSV with a regime column")->required();
  cmp->add_option("--b", cmp_b, "Draw file or CSV with a regime column")->required();

  // replicate-study
  auto* rep = app.add_subcommand("replicate-study", "Simulate and fit many replicates");
  std::string rep_scheme = "1", rep_model = "dp";
  std::size_t rep_n = 20;
  ChainFlags rep_flags;
  rep->add_option("--scheme", rep_scheme, "1, 2 or radon")->capture_default_str();
  rep->add_option("--model", rep_model, "dp, chib or ko")->check(CLI::IsMember({"dp", "chib", "ko"}))->capture_default_str();
  rep->add_option("--replicates", rep_n, "Number of replicates")->capture_default_str();
  rep_flags.add_to(rep);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) {
      const TimeSeries ts = simulate(scheme_spec(parse_scheme(sim_scheme)), sim_seed);
      write_series_csv(sim_out, ts);
    } else if (*fit) {
      CsvOptions co;
      if (!value_col.empty()) co.value_column = value_col;
      if (!time_col.empty()) co.time_column = time_col;
      co.standardize = fit_standardize;
      const TimeSeries data = load_csv(fit_data, co);
      const EmissionFamily family = EmissionFamily::from_name(fit_emission);
      FitOptions opts = fit_flags.options(parse_model(fit_model_name));
      opts.chain.record_k_trace = !ktrace_out.empty();
      const FitOutput out = fit_model(data, family, opts, [](const std::string& m) { std::cerr << "warning: " << m << '\n'; });

      DrawFile df;
      df.header.model = fit_model_name;
      df.header.family = family.name();
      df.header.length = data.length();
      df.header.time_labels = data.time_labels;
      nlohmann::json meta = fit_flags.meta();
      meta["beta_acceptance"] = out.beta_acceptance;
      if (out.finite) {
        nlohmann::json grid = nlohmann::json::array();
        for (const auto& f : out.finite->fits) grid.push_back({{"kstar", f.kstar}, {"bic", f.bic}});
        meta["bic"] = grid;
        meta["selected_kstar"] = out.finite->best().kstar;
        std::cerr << "BIC:";
        for (const auto& f : out.finite->fits) std::cerr << "  K*=" << f.kstar << " " << f.bic;
        std::cerr << "\nselected K* = " << out.finite->best().kstar << '\n';
      }
      df.header.meta_json = meta.dump();
      df.draws = out.draws;
      write_draws(fit_out, df);
      if (!ktrace_out.empty()) {
        std::ofstream kt(ktrace_out);
        for (std::size_t i = 0; i < out.k_trace.size(); ++i) kt << i + 1 << '\t' << out.k_trace[i] << '\n';
      }
    } else if (*sum) {
      const DrawFile df = read_draws(sum_draws);
      const RunSummary s =
          summarize(df.draws, EmissionFamily::from_name(df.header.family), sum_level, df.header.time_labels);
      write_summary_report(std::cout, s, df.header);
      std::cout << '\n';
      write_summary_table(std::cout, s);
      if (!sum_table.empty()) {
        std::ofstream t(sum_table);
        write_summary_table(t, s);
        if (!t) throw InvalidInput("cannot write '" + sum_table + "'");
      }
    } else if (*cmp) {
      const StateSequence a = load_partition(cmp_a);
      const StateSequence b = load_partition(cmp_b);
      std::cout << rand_index(a, b) << '\n';
    } else if (*rep) {
      StudyConfig sc;
      sc.scheme = parse_scheme(rep_scheme);
      sc.replicates = rep_n;
      sc.seed = rep_flags.seed;
      sc.fit = rep_flags.options(parse_model(rep_model));
      const StudyReport r = replicate_study(sc, [](const ReplicateOutcome& o) {
        std::cerr << "replicate " << o.index + 1 << ": K=" << o.map_K << " RI=" << o.rand_index << '\n';
      });
      write_study_report(std::cout, r, sc);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
