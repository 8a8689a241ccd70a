#include "dpcp/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "dpcp/errors.hpp"
#include "dpcp/random.hpp"
#include "dpcp/sequence.hpp"

namespace dpcp {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(trim(field));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::optional<double> parse_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  const char* begin = s.data();
  if (*begin == '+') ++begin;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Resolves a column given by name or 1-based index.
std::size_t resolve_column(const std::string& spec, const std::vector<std::string>& header, std::size_t columns,
                           const std::string& source) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (lower(header[i]) == lower(spec)) return i;
  }
  std::size_t idx = 0;
  const auto [ptr, ec] = std::from_chars(spec.data(), spec.data() + spec.size(), idx);
  if (ec == std::errc() && ptr == spec.data() + spec.size() && idx >= 1 && idx <= columns) return idx - 1;
  throw InvalidInput(source + ": no column '" + spec + "'");
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Schemes
// ---------------------------------------------------------------------------

Scheme parse_scheme(const std::string& text) {
  if (text == "1") return Scheme::One;
  if (text == "2") return Scheme::Two;
  if (text == "radon") return Scheme::Radon;
  throw ConfigError("unknown scheme '" + text + "' (expected 1, 2 or radon)");
}

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::One: return "1";
    case Scheme::Two: return "2";
    case Scheme::Radon: return "radon";
  }
  return "?";
}

void SchemeSpec::validate() const {
  if (change_points.empty()) throw ConfigError("scheme has no regimes");
  if (change_points.size() != params.size()) throw ConfigError("one parameter set per regime required");
  for (std::size_t i = 0; i < change_points.size(); ++i) {
    if (change_points[i] < 1 || (i > 0 && change_points[i] <= change_points[i - 1])) {
      throw ConfigError("change points must be strictly increasing and positive");
    }
  }
  for (const auto& p : params) {
    if (kind == EmissionKind::PoissonRate ? !(p.level > 0.0) : !(p.variance > 0.0)) {
      throw ConfigError("scheme parameters outside the family support");
    }
  }
}

SchemeSpec scheme_spec(Scheme s) {
  SchemeSpec spec;
  spec.id = s;
  auto normal = [&](std::vector<double> mu, std::vector<double> var) {
    for (std::size_t i = 0; i < mu.size(); ++i) spec.params.push_back(RegimeParams::normal(mu[i], var[i]));
  };
  switch (s) {
    case Scheme::One:
      spec.change_points = {50, 250, 650, 750, 1000, 1400, 1500};
      normal({0, 5, 2, -2, 0, 2, 10}, {1, 2, 1, 0.5, 1, 3, 5});
      break;
    case Scheme::Two:
      spec.change_points = {50, 250, 900, 950, 1100, 1400, 1500};
      normal({0, 5, 2, 2, 2, 2, 10}, {1, 2, 1, 0.1, 1, 15, 5});
      break;
    case Scheme::Radon:
      // Per-regime trends in raw time units, on a standardized scale.
      spec.kind = EmissionKind::NormalLinearTrend;
      spec.change_points = {367, 470, 614, 881, 1022, 1183, 1315, 1500};
      spec.params = {RegimeParams::trend(-0.19, 0.0, 0.027),    RegimeParams::trend(1.429, -0.003, 0.039),
                     RegimeParams::trend(5.824, -0.011, 0.032), RegimeParams::trend(-1.136, 0.0, 0.021),
                     RegimeParams::trend(-9.571, 0.01, 0.027),  RegimeParams::trend(-2.042, 0.002, 0.041),
                     RegimeParams::trend(-18.73, 0.016, 0.069), RegimeParams::trend(31.758, -0.022, 0.046)};
      break;
  }
  return spec;
}

EmissionFamily scheme_family(Scheme s) {
  return s == Scheme::Radon ? EmissionFamily::linear_trend() : EmissionFamily::normal_mean_var();
}

TimeSeries simulate(const SchemeSpec& spec, std::uint64_t seed) {
  spec.validate();
  RandomStream rng(seed);
  TimeSeries ts;
  ts.name = "scheme-" + scheme_name(spec.id);
  ts.truth = StateSequence::from_change_points(spec.change_points, spec.length());
  ts.truth_params = spec.params;
  ts.values.reserve(spec.length());
  for (std::size_t t = 1; t <= spec.length(); ++t) {
    const RegimeParams& p = spec.params[static_cast<std::size_t>(ts.truth->label_at(t)) - 1];
    switch (spec.kind) {
      case EmissionKind::NormalMeanVar:
        ts.values.push_back(rng.normal(p.level, std::sqrt(p.variance)));
        break;
      case EmissionKind::NormalLinearTrend:
        ts.values.push_back(rng.normal(p.level + p.slope * static_cast<double>(t), std::sqrt(p.variance)));
        break;
      case EmissionKind::PoissonRate: {
        std::mt19937_64 engine(rng.next_u64());
        ts.values.push_back(static_cast<double>(std::poisson_distribution<long>(p.level)(engine)));
        break;
      }
    }
  }
  return ts;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

void standardize(TimeSeries& series) {
  const std::size_t n = series.values.size();
  if (n < 2) throw InvalidInput("standardization needs at least two values");
  double mean = 0.0;
  for (double v : series.values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : series.values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  if (!(sd > 0.0)) throw InvalidInput("cannot standardize a constant series");
  for (double& v : series.values) v = (v - mean) / sd;
}

TimeSeries parse_csv(std::istream& in, const CsvOptions& opts, const std::string& source) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;
  std::vector<std::string> header;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto fields = split(t, ',');
    if (rows.empty() && header.empty()) {
      const bool numeric = std::all_of(fields.begin(), fields.end(), [](const std::string& f) {
        return parse_double(f).has_value();
      });
      if (!numeric) {
        header = std::move(fields);
        continue;
      }
    }
    rows.push_back(std::move(fields));
    line_numbers.push_back(line_no);
  }
  if (rows.empty()) throw InvalidInput(source + ": no data rows");

  const std::size_t columns = header.empty() ? rows.front().size() : header.size();
  auto named = [&](std::initializer_list<const char*> names) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i) {
      for (const char* n : names) {
        if (lower(header[i]) == n) return i;
      }
    }
    return std::nullopt;
  };

  std::size_t value_col;
  if (opts.value_column) {
    value_col = resolve_column(*opts.value_column, header, columns, source);
  } else if (auto v = named({"value"})) {
    value_col = *v;
  } else {
    value_col = columns == 1 ? 0 : 1;
  }
  std::optional<std::size_t> time_col;
  if (opts.time_column) {
    time_col = resolve_column(*opts.time_column, header, columns, source);
  } else if (auto tcol = named({"time", "year"})) {
    time_col = tcol;
  } else if (value_col != 0 && columns > 1) {
    time_col = 0;
  }
  const std::optional<std::size_t> regime_col = named({"regime"});

  TimeSeries ts;
  ts.name = source;
  std::vector<int> regimes;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& f = rows[r];
    const std::string where = source + ":" + std::to_string(line_numbers[r]);
    if (f.size() != columns) {
      throw InvalidInput(where + ": expected " + std::to_string(columns) + " fields, found " + std::to_string(f.size()));
    }
    const auto v = parse_double(f[value_col]);
    if (!v || !std::isfinite(*v)) throw InvalidInput(where + ": cannot parse value '" + f[value_col] + "'");
    ts.values.push_back(*v);
    if (time_col) {
      const auto tl = parse_double(f[*time_col]);
      if (!tl) throw InvalidInput(where + ": cannot parse time '" + f[*time_col] + "'");
      ts.time_labels.push_back(*tl);
    }
    if (regime_col) {
      const auto g = parse_double(f[*regime_col]);
      if (!g || *g != std::floor(*g)) throw InvalidInput(where + ": cannot parse regime '" + f[*regime_col] + "'");
      regimes.push_back(static_cast<int>(*g));
    }
  }
  if (regime_col) ts.truth = canonicalize(regimes);
  if (opts.standardize) standardize(ts);
  ts.validate();
  return ts;
}

TimeSeries load_csv(const std::string& path, const CsvOptions& opts) {
  auto in = open_in(path);
  return parse_csv(in, opts, path);
}

void write_series_csv(std::ostream& out, const TimeSeries& series) {
  out << (series.truth ? "time,value,regime\n" : "time,value\n");
  for (std::size_t t = 1; t <= series.length(); ++t) {
    out << format_double(series.label(t)) << ',' << format_double(series.values[t - 1]);
    if (series.truth) out << ',' << series.truth->label_at(t);
    out << '\n';
  }
}

void write_series_csv(const std::string& path, const TimeSeries& series) {
  auto out = open_out(path);
  write_series_csv(out, series);
  if (!out) throw InvalidInput("write failed for '" + path + "'");
}

// ---------------------------------------------------------------------------
// Draw files
// ---------------------------------------------------------------------------

void write_draws(std::ostream& out, const DrawFile& file) {
  const EmissionFamily family = EmissionFamily::from_name(file.header.family);
  nlohmann::json h;
  h["format"] = "cpdraws";
  h["version"] = kDrawFormatVersion;
  h["model"] = file.header.model;
  h["family"] = file.header.family;
  h["T"] = file.header.length;
  h["time_labels"] = file.header.time_labels;
  h["meta"] = nlohmann::json::parse(file.header.meta_json);
  out << h.dump() << '\n';
  for (const auto& d : file.draws) {
    out << d.iteration << '\t' << d.regime_count() << '\t' << format_double(d.beta) << '\t' << run_length_encode(d.seq);
    for (const auto& theta : d.thetas) {
      for (double v : family.parameter_values(theta)) out << '\t' << format_double(v);
    }
    out << '\t' << format_double(d.log_posterior) << '\n';
  }
  out << "#end " << file.draws.size() << '\n';
}

void write_draws(const std::string& path, const DrawFile& file) {
  auto out = open_out(path);
  write_draws(out, file);
  if (!out) throw InvalidInput("write failed for '" + path + "'");
}

DrawFile read_draws(std::istream& in, const std::string& source) {
  DrawFile file;
  std::string line;
  if (!std::getline(in, line)) throw FormatError(source + ": empty draw file");
  try {
    const auto h = nlohmann::json::parse(line);
    if (h.value("format", "") != "cpdraws") throw FormatError(source + ": not a draw file");
    if (h.value("version", -1) != kDrawFormatVersion) {
      throw FormatError(source + ": unsupported draw file version " + h.value("version", nlohmann::json()).dump());
    }
    file.header.model = h.at("model").get<std::string>();
    file.header.family = h.at("family").get<std::string>();
    file.header.length = h.at("T").get<std::size_t>();
    file.header.time_labels = h.value("time_labels", std::vector<double>{});
    file.header.meta_json = h.value("meta", nlohmann::json::object()).dump();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(source + ":1: bad header: " + e.what());
  }
  const EmissionFamily family = [&] {
    try {
      return EmissionFamily::from_name(file.header.family);
    } catch (const std::exception& e) {
      throw FormatError(source + ":1: " + e.what());
    }
  }();
  const std::size_t dim = family.dimension();

  std::size_t line_no = 1;
  bool ended = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = source + ":" + std::to_string(line_no);
    if (ended) {
      if (!trim(line).empty()) throw FormatError(where + ": content after end marker");
      continue;
    }
    if (line.rfind("#end", 0) == 0) {
      const auto n = parse_double(trim(line.substr(4)));
      if (!n || *n != static_cast<double>(file.draws.size())) throw FormatError(where + ": draw count mismatch");
      ended = true;
      continue;
    }
    const auto f = split(line, '\t');
    if (f.size() < 5) throw FormatError(where + ": too few fields");
    const auto iter = parse_double(f[0]);
    const auto K = parse_double(f[1]);
    const auto beta = parse_double(f[2]);
    if (!iter || !K || !beta || *K < 1) throw FormatError(where + ": malformed draw");
    const std::size_t k = static_cast<std::size_t>(*K);
    if (f.size() != 5 + k * dim) throw FormatError(where + ": expected " + std::to_string(5 + k * dim) + " fields");
    PosteriorDraw d;
    d.iteration = static_cast<std::size_t>(*iter);
    d.beta = *beta;
    d.seq = run_length_decode(f[3]);
    if (d.seq.regime_count() != k || d.seq.length() != file.header.length) {
      throw FormatError(where + ": allocation does not match K or T");
    }
    std::vector<double> vals(dim);
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t j = 0; j < dim; ++j) {
        const auto v = parse_double(f[4 + r * dim + j]);
        if (!v) throw FormatError(where + ": malformed parameter value");
        vals[j] = *v;
      }
      d.thetas.push_back(family.from_values(vals));
    }
    const auto lp = parse_double(f.back());
    if (!lp) throw FormatError(where + ": malformed log posterior");
    d.log_posterior = *lp;
    file.draws.push_back(std::move(d));
  }
  if (!ended) throw FormatError(source + ": truncated draw file (no end marker)");
  return file;
}

DrawFile read_draws(const std::string& path) {
  auto in = open_in(path);
  return read_draws(in, path);
}

}  // namespace dpcp
