#include "dpcp/study.hpp"

#include <algorithm>

#include "dpcp/errors.hpp"
#include "dpcp/random.hpp"

namespace dpcp {

ModelKind parse_model(const std::string& text) {
  if (text == "dp") return ModelKind::Dp;
  if (text == "chib") return ModelKind::Chib;
  if (text == "ko") return ModelKind::Ko;
  throw ConfigError("unknown model '" + text + "' (expected dp, chib or ko)");
}

std::string model_name(ModelKind m) {
  switch (m) {
    case ModelKind::Dp: return "dp";
    case ModelKind::Chib: return "chib";
    case ModelKind::Ko: return "ko";
  }
  return "?";
}

FitOutput fit_model(const TimeSeries& data, const EmissionFamily& family, const FitOptions& opts,
                    const std::function<void(const std::string&)>& warn) {
  FitOutput out;
  switch (opts.model) {
    case ModelKind::Dp: {
      ChainResult r = run_chain(data, family, opts.chain, opts.moves);
      out.draws = std::move(r.draws);
      out.beta_acceptance = r.beta_acceptance;
      out.k_trace = std::move(r.k_trace);
      break;
    }
    case ModelKind::Ko: {
      ChainResult r = ko_run_chain(data, family, opts.chain, opts.ko);
      out.draws = std::move(r.draws);
      out.beta_acceptance = r.beta_acceptance;
      out.k_trace = std::move(r.k_trace);
      break;
    }
    case ModelKind::Chib: {
      FiniteModelConfig fc{opts.kstar_grid, opts.chain};
      out.finite = fit_finite(data, family, fc, warn);
      out.draws = out.finite->best().chain.draws;
      out.beta_acceptance = out.finite->best().chain.beta_acceptance;
      break;
    }
  }
  return out;
}

std::size_t StudyReport::count_K(std::size_t k) const {
  const auto it = map_K_counts.find(k);
  return it == map_K_counts.end() ? 0 : it->second;
}

StudyReport replicate_study(const StudyConfig& cfg, const std::function<void(const ReplicateOutcome&)>& progress) {
  if (cfg.replicates == 0) throw ConfigError("at least one replicate is required");
  const SchemeSpec spec = scheme_spec(cfg.scheme);
  const EmissionFamily family = scheme_family(cfg.scheme);
  StudyReport report;
  std::vector<double> ris;
  for (std::size_t i = 0; i < cfg.replicates; ++i) {
    ReplicateOutcome r;
    r.index = i;
    r.data_seed = RandomStream::derive_seed(cfg.seed, 2 * i);
    const TimeSeries data = simulate(spec, r.data_seed);
    FitOptions fo = cfg.fit;
    fo.chain.seed = RandomStream::derive_seed(cfg.seed, 2 * i + 1);
    const FitOutput fit = fit_model(data, family, fo);
    const RunSummary s = summarize(fit.draws, family);
    r.map_K = s.map_K;
    r.rand_index = rand_index(s.map_segmentation, *data.truth);
    ++report.map_K_counts[r.map_K];
    ris.push_back(r.rand_index);
    report.replicates.push_back(r);
    if (progress) progress(r);
  }
  std::sort(ris.begin(), ris.end());
  report.rand_min = ris.front();
  report.rand_max = ris.back();
  report.rand_median = quantile(ris, 0.5);
  return report;
}

}  // namespace dpcp
