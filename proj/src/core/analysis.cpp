#include "wsmf/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include "wsmf/error.hpp"
#include "wsmf/synth.hpp"

namespace wsmf {
namespace {

const std::set<std::string> kInputKeys = {"input.path", "input.format", "input.channels", "wavelet.vanishing_moments",
                                          "wavelet.j_coarse", "scales.j1", "scales.j2", "scales.preset",
                                          "output.json", "output.tsv_dir"};

void check_keys(const Config& config, std::initializer_list<const std::set<std::string>*> allowed) {
  for (const auto& [key, value] : config.entries()) {
    bool ok = false;
    for (const auto* set : allowed) ok = ok || set->count(key) != 0;
    if (!ok) throw Error(Errc::ConfigError, "unknown configuration key '" + key + "'");
  }
}

Config provenance_echo(const Config& config) {
  Config echo;
  for (const auto& [key, value] : config.entries()) {
    if (key.rfind("output.", 0) != 0) echo.set(key, value);
  }
  return echo;
}

Json provenance(const std::string& command, const Config& echo) {
  Json cfg = Json::object();
  for (const auto& [key, value] : echo.entries()) cfg[key] = value;
  Json p = Json::object();
  p["tool"] = "wsmf";
  p["version"] = kVersion;
  p["command"] = command;
  p["config"] = std::move(cfg);
  return p;
}

int checked_int(const Config& config, const std::string& key, long long fallback, long long lo, long long hi) {
  const long long v = config.get_int(key, fallback);
  if (v < lo || v > hi) {
    throw Error(Errc::ConfigError, "key '" + key + "' = " + std::to_string(v) + " outside [" + std::to_string(lo) +
                                       ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(v);
}

std::vector<std::size_t> parse_channels(const Config& config) {
  std::vector<std::size_t> out;
  for (double v : config.get_doubles("input.channels")) {
    if (v < 0.0 || v != std::floor(v)) throw Error(Errc::ConfigError, "input.channels must be non-negative integers");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

struct InputSpec {
  std::string path;
  InputFormat format = InputFormat::Auto;
  std::vector<std::size_t> channels;
  int vanishing_moments = WaveletSpec::kDefaultVanishingMoments;
  int j_coarse = 1;
  int j1 = 0;
  int j2 = 0;
};

InputSpec read_input_spec(const Config& config) {
  InputSpec in;
  in.path = config.get_string("input.path", "");
  in.format = parse_input_format(config.get_string("input.format", "auto"));
  in.channels = parse_channels(config);
  in.vanishing_moments =
      checked_int(config, "wavelet.vanishing_moments", in.vanishing_moments, 1, WaveletSpec::kMaxVanishingMoments);
  in.j_coarse = checked_int(config, "wavelet.j_coarse", 1, 1, 60);
  const std::string preset = config.get_string("scales.preset", "");
  if (preset == "meg") {
    in.j1 = 10;
    in.j2 = 14;
  } else if (!preset.empty()) {
    throw Error(Errc::ConfigError, "unknown scale preset '" + preset + "' (meg)");
  }
  in.j1 = checked_int(config, "scales.j1", in.j1, 0, 60);
  in.j2 = checked_int(config, "scales.j2", in.j2, 0, 60);
  if ((in.j1 == 0) != (in.j2 == 0)) throw Error(Errc::ConfigError, "scales.j1 and scales.j2 must be given together");
  return in;
}

// Rejects explicit scale ranges the signal cannot support, before any compute.
void validate_range(int j1, int j2, std::size_t length, const std::string& label) {
  if (j1 == 0) return;
  const int depth = dyadic_depth(length);
  if (j2 > depth - 1) {
    throw Error(Errc::ConfigError, "channel '" + label + "': j2 = " + std::to_string(j2) +
                                       " exceeds the decomposable depth " + std::to_string(depth - 1) + " of " +
                                       std::to_string(length) + " samples");
  }
  if (j2 - j1 < 2) {
    throw Error(Errc::ScaleRangeTooNarrow, "need at least 3 scales, got [" + std::to_string(j1) + ", " +
                                               std::to_string(j2) + "]");
  }
}

template <typename F>
void for_each_channel(std::size_t count, unsigned threads, F&& work) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        work(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

Error annotate(const Error& e, const Signal& signal, std::size_t index) {
  return Error(e.code(), "channel " + std::to_string(index) + " '" + signal.label + "': " + e.message());
}

std::string table_name(std::size_t index, const std::string& label) {
  std::string clean;
  for (char c : label) clean += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  return std::to_string(index) + (clean.empty() ? "" : "_" + clean) + ".tsv";
}

Json spectrum_json(const LegendreSpectrum& s) {
  Json j = Json::object();
  j["h"] = json_array(s.h);
  j["d"] = json_array(s.d);
  j["mode_h"] = json_number(s.mode_h);
  j["max_d"] = json_number(s.max_d());
  j["half_width"] = json_number(s.half_width());
  j["q_min"] = json_number(s.q_min);
  j["q_max"] = json_number(s.q_max);
  return j;
}

Table spectrum_table(const std::string& name, const LegendreSpectrum& s) {
  Table t{name, {"H", "D"}, {}};
  for (std::size_t i = 0; i < s.h.size(); ++i) t.rows.push_back({s.h[i], s.d[i]});
  return t;
}

Json optional_number(const std::optional<double>& v) { return v ? json_number(*v) : Json(nullptr); }

std::vector<Signal> load_signals(const InputSpec& in) {
  if (in.path.empty()) throw Error(Errc::ConfigError, "input.path is required");
  auto signals = ingest(in.path, in.format, in.channels);
  for (auto& s : signals) {
    for (double v : s.samples) {
      if (!std::isfinite(v)) throw Error(Errc::NonFiniteInput, "channel '" + s.label + "' has non-finite samples");
    }
  }
  return signals;
}

}  // namespace

const char* to_string(AnalysisMethod method) noexcept {
  switch (method) {
    case AnalysisMethod::Leaders: return "leaders";
    case AnalysisMethod::PLeaders: return "pleaders";
    case AnalysisMethod::ThetaOmega: return "theta_omega";
  }
  return "unknown";
}

AnalysisMethod parse_analysis_method(const std::string& name) {
  if (name == "leaders") return AnalysisMethod::Leaders;
  if (name == "pleaders" || name == "p_leaders") return AnalysisMethod::PLeaders;
  if (name == "theta_omega" || name == "ws") return AnalysisMethod::ThetaOmega;
  throw Error(Errc::ConfigError, "unknown formalism '" + name + "' (leaders, pleaders, theta_omega)");
}

AnalysisConfig AnalysisConfig::from(const Config& config) {
  static const std::set<std::string> keys = {
      "formalism.kind", "formalism.p",     "formalism.beta", "formalism.a",        "formalism.theta_const",
      "analysis.s",     "analysis.q_min",  "analysis.q_max", "analysis.q_count",   "analysis.h_points",
      "analysis.floor", "analysis.threads", "sparsity.enabled", "sparsity.q",      "sparsity.c"};
  check_keys(config, {&kInputKeys, &keys});

  const InputSpec in = read_input_spec(config);
  AnalysisConfig a;
  a.input = in.path;
  a.format = in.format;
  a.channels = in.channels;
  a.vanishing_moments = in.vanishing_moments;
  a.j_coarse = in.j_coarse;
  a.j1 = in.j1;
  a.j2 = in.j2;
  a.method = parse_analysis_method(config.get_string("formalism.kind", "theta_omega"));
  a.p = config.get_double("formalism.p", a.p);
  if (a.method == AnalysisMethod::PLeaders && !(a.p > 0.0)) throw Error(Errc::NonPositiveP, "formalism.p must be > 0");
  a.growth.beta = config.get_double("formalism.beta", a.growth.beta);
  a.growth.a = config.get_double("formalism.a", a.growth.a);
  a.growth.theta_const = checked_int(config, "formalism.theta_const", a.growth.theta_const, 0, 60);
  a.s = config.get_double("analysis.s", 0.0);
  a.q_min = config.get_double("analysis.q_min", a.q_min);
  a.q_max = config.get_double("analysis.q_max", a.q_max);
  a.q_count = static_cast<std::size_t>(checked_int(config, "analysis.q_count", 64, 2, 100000));
  a.h_points = static_cast<std::size_t>(checked_int(config, "analysis.h_points", 512, 2, 10000000));
  a.floor = config.get_double("analysis.floor", a.floor);
  a.threads = static_cast<unsigned>(checked_int(config, "analysis.threads", 0, 0, 4096));
  a.sparsity = config.get_bool("sparsity.enabled", false);
  a.sparsity_q = config.get_double("sparsity.q", a.sparsity_q);
  a.sparsity_c = config.get_double("sparsity.c", a.sparsity_c);
  if (!std::isfinite(a.s)) throw Error(Errc::ConfigError, "analysis.s must be finite");
  if (!(a.q_max > a.q_min)) throw Error(Errc::ConfigError, "analysis.q_max must exceed analysis.q_min");
  a.echo = provenance_echo(config);
  return a;
}

ScaleRange default_scale_range(std::size_t length, int field_valid_hi) {
  const int depth = dyadic_depth(length);
  return ScaleRange{std::max(3, depth - 8), std::min(depth - 2, field_valid_hi)};
}

ChannelResult analyze_signal(const AnalysisConfig& config, const Signal& signal, std::size_t index) {
  validate_range(config.j1, config.j2, signal.length(), signal.label);
  const WaveletSpec spec = WaveletSpec::daubechies(config.vanishing_moments);
  const CoefficientPyramid pyramid = decompose(signal, spec, config.j_coarse);
  const CoefficientPyramid work = config.s != 0.0 ? pseudo_fractional_integrate(pyramid, config.s) : pyramid;

  MultiscaleField field;
  switch (config.method) {
    case AnalysisMethod::Leaders: field = wavelet_leaders(work); break;
    case AnalysisMethod::PLeaders: field = p_leaders(work, config.p); break;
    case AnalysisMethod::ThetaOmega: field = theta_omega_leaders(work, config.growth); break;
  }

  ChannelResult r;
  r.index = index;
  r.label = signal.label;
  r.samples_used = pyramid.origin_length();
  if (config.j1 != 0) {
    r.range = {config.j1, config.j2};
  } else {
    r.range = default_scale_range(signal.length(), field.valid_hi());
    r.range.j1 = std::max({r.range.j1, field.valid_lo(), pyramid.j_coarse()});
  }

  const auto grid = MomentGrid::linspace(config.q_min, config.q_max, config.q_count);
  const auto sf = structure_functions(field, grid);
  if (config.j1 == 0) {
    // Short signals: coarse scales may have no unclipped position at all.
    auto present = [&](int j) { return std::find(sf.scales.begin(), sf.scales.end(), j) != sf.scales.end(); };
    while (r.range.j1 < r.range.j2 && !present(r.range.j1)) ++r.range.j1;
  }
  r.zeta = scaling_function(sf, r.range.j1, r.range.j2);
  for (int j = r.range.j1; j <= r.range.j2; ++j) {
    const std::size_t row = sf.scale_index(j);
    r.zero_counts.push_back(sf.zero_counts[row]);
    if (sf.unreliable_negative_q[row]) r.unreliable_scales.push_back(j);
  }

  const auto h_grid = default_h_grid(r.zeta, config.h_points);
  r.spectrum = legendre_transform(r.zeta, h_grid, QRestriction::AllQ, config.floor);
  if (config.s != 0.0) {
    for (double& h : r.spectrum.h) h -= config.s;
    r.spectrum.mode_h -= config.s;
  }

  r.hmin = estimate_hmin(pyramid, r.range.j1, r.range.j2);
  const auto positive = MomentGrid::linspace(0.1, std::max(config.q_max, 1.0), 64);
  const auto raw = scaling_function(structure_functions(coefficient_field(work), positive), r.range.j1, r.range.j2);
  r.admissibility = p_admissibility(raw);

  if (config.sparsity) {
    r.sparsity = sparsity_split(pyramid, config.sparsity_q, config.sparsity_c, r.range.j1, r.range.j2);
    if (std::isfinite(r.sparsity->delta) && r.sparsity->delta < 1.0) {
      r.p_bound = admissible_p_bound(r.sparsity->delta, r.hmin);
    }
  }
  return r;
}

AnalysisReport run_analysis(const AnalysisConfig& config, const std::vector<Signal>& signals) {
  for (const auto& s : signals) validate_range(config.j1, config.j2, s.length(), s.label);
  AnalysisReport report;
  report.method = config.method;
  report.s = config.s;
  report.echo = config.echo;
  report.channels.resize(signals.size());
  for_each_channel(signals.size(), config.threads, [&](std::size_t i) {
    try {
      report.channels[i] = analyze_signal(config, signals[i], i);
    } catch (const Error& e) {
      throw annotate(e, signals[i], i);
    }
  });
  return report;
}

AnalysisReport run_analysis(const AnalysisConfig& config) {
  InputSpec in;
  in.path = config.input;
  in.format = config.format;
  in.channels = config.channels;
  return run_analysis(config, load_signals(in));
}

Document to_document(const AnalysisReport& report) {
  Document doc;
  Json& j = doc.json;
  j["schema"] = "wsmf.analysis/1";
  j["provenance"] = provenance("analyze", report.echo);
  j["formalism"] = to_string(report.method);
  j["s"] = json_number(report.s);
  j["channels"] = Json::array();
  for (const auto& c : report.channels) {
    Json ch = Json::object();
    ch["index"] = c.index;
    ch["label"] = c.label;
    ch["samples_used"] = c.samples_used;
    ch["scale_range"] = Json::array({c.range.j1, c.range.j2});
    ch["hmin"] = json_number(c.hmin);
    Json z = Json::object();
    z["q"] = json_array(c.zeta.q);
    z["zeta"] = json_array(c.zeta.zeta);
    z["intercept"] = json_array(c.zeta.intercept);
    z["r_squared"] = json_array(c.zeta.r_squared);
    z["weights"] = json_array(c.zeta.weights);
    z["zero_counts"] = c.zero_counts;
    z["unreliable_negative_q_scales"] = c.unreliable_scales;
    ch["scaling_function"] = std::move(z);
    ch["spectrum"] = spectrum_json(c.spectrum);
    Json adm = Json::object();
    adm["exists_positive"] = c.admissibility.exists_positive;
    adm["best_p"] = optional_number(c.admissibility.best_p);
    adm["slope_at_zero"] = json_number(c.admissibility.slope_at_zero);
    ch["admissibility"] = std::move(adm);
    if (c.sparsity) {
      Json sp = Json::object();
      sp["q"] = json_number(c.sparsity->q);
      sp["c"] = json_number(c.sparsity->c);
      sp["delta"] = json_number(c.sparsity->delta);
      sp["fully_absorbed"] = !std::isfinite(c.sparsity->delta);
      sp["admissible_p_bound"] = optional_number(c.p_bound);
      ch["sparsity"] = std::move(sp);
    }
    j["channels"].push_back(std::move(ch));
    doc.tables.push_back(spectrum_table(table_name(c.index, c.label), c.spectrum));
  }
  return doc;
}

Document command_analyze(const Config& config) { return to_document(run_analysis(AnalysisConfig::from(config))); }

Document command_synth(const Config& config) {
  static const std::set<std::string> keys = {
      "synth.model",  "synth.hurst", "synth.alpha",  "synth.lambda", "synth.eta",    "synth.atoms",
      "synth.uniform_bound", "synth.j_coarse", "synth.length", "synth.seed", "synth.output", "synth.format",
      "synth.channels", "wavelet.vanishing_moments", "output.json", "output.tsv_dir"};
  check_keys(config, {&keys});

  const std::string model = config.get_string("synth.model", "fbm");
  const long long length = config.get_int("synth.length", 1 << 14);
  const long long seed = config.get_int("synth.seed", 0);
  const int channels = checked_int(config, "synth.channels", 1, 1, 4096);
  if (length <= 0 || seed < 0) throw Error(Errc::ConfigError, "synth.length must be > 0 and synth.seed >= 0");
  const int r = checked_int(config, "wavelet.vanishing_moments", WaveletSpec::kDefaultVanishingMoments, 1,
                            WaveletSpec::kMaxVanishingMoments);

  SynthesisConfig sc;
  sc.length = static_cast<std::size_t>(length);
  Json params = Json::object();
  if (model == "fbm") {
    sc.model = FbmModel{config.get_double("synth.hurst", 0.5)};
    params["hurst"] = std::get<FbmModel>(sc.model).hurst;
  } else if (model == "fgn") {
    sc.model = FgnModel{config.get_double("synth.alpha", -0.5)};
    params["alpha"] = std::get<FgnModel>(sc.model).alpha;
  } else if (model == "mrw") {
    sc.model = MrwModel{config.get_double("synth.hurst", 0.5), config.get_double("synth.lambda", 0.3)};
    params["hurst"] = std::get<MrwModel>(sc.model).hurst;
    params["lambda"] = std::get<MrwModel>(sc.model).lambda;
  } else if (model == "lacunary") {
    LacunaryModel m{config.get_double("synth.alpha", 0.5), config.get_double("synth.eta", 0.5),
                    checked_int(config, "synth.j_coarse", 1, 1, 60)};
    sc.model = m;
    params["alpha"] = m.alpha;
    params["eta"] = m.eta;
  } else if (model == "rws") {
    RwsModel m;
    const auto values = config.get_doubles("synth.atoms");
    if (values.empty() || values.size() % 2 != 0) {
      throw Error(Errc::ConfigError, "synth.atoms needs alpha,eta pairs: a1,e1,a2,e2,...");
    }
    Json atoms = Json::array();
    for (std::size_t i = 0; i < values.size(); i += 2) {
      m.atoms.push_back({values[i], values[i + 1]});
      atoms.push_back(Json::array({values[i], values[i + 1]}));
    }
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto& a : m.atoms) lowest = std::min(lowest, a.alpha);
    m.uniform_bound = config.get_double("synth.uniform_bound", std::min(0.0, lowest));
    m.j_coarse = checked_int(config, "synth.j_coarse", 1, 1, 60);
    sc.model = m;
    params["atoms"] = std::move(atoms);
    params["uniform_bound"] = m.uniform_bound;
  } else {
    throw Error(Errc::ConfigError, "unknown synth.model '" + model + "' (fbm, fgn, mrw, rws, lacunary)");
  }

  const std::string output = config.get_string("synth.output", "");
  if (output.empty()) throw Error(Errc::ConfigError, "synth.output is required");
  const InputFormat format = parse_input_format(config.get_string("synth.format", "auto"));
  const WaveletSpec spec = WaveletSpec::daubechies(r);
  std::vector<Signal> signals;
  for (int c = 0; c < channels; ++c) {
    SynthesisConfig one = sc;
    one.seed = static_cast<std::uint64_t>(seed) + static_cast<std::uint64_t>(c);
    Signal s = synthesize(one, spec);
    s.label = model + std::to_string(c);
    signals.push_back(std::move(s));
  }
  write_signals(output, format, signals);

  Document doc;
  doc.json["schema"] = "wsmf.synth/1";
  doc.json["provenance"] = provenance("synth", provenance_echo(config));
  doc.json["provenance"]["seed"] = seed;
  doc.json["model"] = model;
  doc.json["parameters"] = std::move(params);
  doc.json["length"] = sc.length;
  doc.json["channels"] = channels;
  doc.json["output"] = output;
  return doc;
}

Document command_hmin(const Config& config) {
  check_keys(config, {&kInputKeys});
  const InputSpec in = read_input_spec(config);
  const auto signals = load_signals(in);
  for (const auto& s : signals) validate_range(in.j1, in.j2, s.length(), s.label);

  std::vector<double> hmin(signals.size());
  std::vector<ScaleRange> ranges(signals.size());
  for_each_channel(signals.size(), 0, [&](std::size_t i) {
    try {
      const auto pyramid = decompose(signals[i], WaveletSpec::daubechies(in.vanishing_moments), in.j_coarse);
      ranges[i] = in.j1 != 0 ? ScaleRange{in.j1, in.j2} : default_scale_range(signals[i].length(), pyramid.j_fine());
      ranges[i].j1 = std::max(ranges[i].j1, pyramid.j_coarse());
      hmin[i] = estimate_hmin(pyramid, ranges[i].j1, ranges[i].j2);
    } catch (const Error& e) {
      throw annotate(e, signals[i], i);
    }
  });

  Document doc;
  doc.json["schema"] = "wsmf.hmin/1";
  doc.json["provenance"] = provenance("hmin", provenance_echo(config));
  doc.json["channels"] = Json::array();
  std::size_t negative = 0;
  for (std::size_t i = 0; i < signals.size(); ++i) {
    Json ch = Json::object();
    ch["index"] = i;
    ch["label"] = signals[i].label;
    ch["scale_range"] = Json::array({ranges[i].j1, ranges[i].j2});
    ch["hmin"] = json_number(hmin[i]);
    doc.json["channels"].push_back(std::move(ch));
    if (hmin[i] < 0.0) ++negative;
  }
  // Histogram with bins of width 0.1 aligned on multiples of 0.1.
  Json hist = Json::object();
  std::vector<double> edges;
  std::vector<std::size_t> counts;
  if (!hmin.empty()) {
    const auto [lo_it, hi_it] = std::minmax_element(hmin.begin(), hmin.end());
    const long long lo = static_cast<long long>(std::floor(*lo_it * 10.0));
    const long long hi = std::max(lo + 1, static_cast<long long>(std::floor(*hi_it * 10.0)) + 1);
    for (long long b = lo; b <= hi; ++b) edges.push_back(static_cast<double>(b) / 10.0);
    counts.assign(edges.size() - 1, 0);
    for (double h : hmin) {
      const auto b = static_cast<std::size_t>(static_cast<long long>(std::floor(h * 10.0)) - lo);
      ++counts[std::min(b, counts.size() - 1)];
    }
  }
  hist["edges"] = json_array(edges);
  hist["counts"] = counts;
  Json summary = Json::object();
  summary["count"] = signals.size();
  summary["negative"] = negative;
  summary["histogram"] = std::move(hist);
  doc.json["summary"] = std::move(summary);
  Table t{"hmin.tsv", {"channel", "hmin"}, {}};
  for (std::size_t i = 0; i < hmin.size(); ++i) t.rows.push_back({static_cast<double>(i), hmin[i]});
  doc.tables.push_back(std::move(t));
  return doc;
}

Document command_split(const Config& config) {
  static const std::set<std::string> keys = {"sparsity.q", "sparsity.c"};
  check_keys(config, {&kInputKeys, &keys});
  const InputSpec in = read_input_spec(config);
  const double q = config.get_double("sparsity.q", 2.0);
  const double c = config.get_double("sparsity.c", 1.0);
  const auto signals = load_signals(in);
  for (const auto& s : signals) validate_range(in.j1, in.j2, s.length(), s.label);

  struct Result {
    ScaleRange range;
    SparsitySplit split;
    double hmin = 0.0;
    std::optional<double> bound;
  };
  std::vector<Result> results(signals.size());
  for_each_channel(signals.size(), 0, [&](std::size_t i) {
    try {
      const auto pyramid = decompose(signals[i], WaveletSpec::daubechies(in.vanishing_moments), in.j_coarse);
      Result& r = results[i];
      r.range = in.j1 != 0 ? ScaleRange{in.j1, in.j2} : default_scale_range(signals[i].length(), pyramid.j_fine());
      r.range.j1 = std::max(r.range.j1, pyramid.j_coarse());
      r.split = sparsity_split(pyramid, q, c, r.range.j1, r.range.j2);
      r.hmin = estimate_hmin(pyramid, r.range.j1, r.range.j2);
      if (std::isfinite(r.split.delta) && r.split.delta < 1.0) r.bound = admissible_p_bound(r.split.delta, r.hmin);
    } catch (const Error& e) {
      throw annotate(e, signals[i], i);
    }
  });

  Document doc;
  doc.json["schema"] = "wsmf.split/1";
  doc.json["provenance"] = provenance("split", provenance_echo(config));
  doc.json["channels"] = Json::array();
  for (std::size_t i = 0; i < signals.size(); ++i) {
    const Result& r = results[i];
    Json ch = Json::object();
    ch["index"] = i;
    ch["label"] = signals[i].label;
    ch["scale_range"] = Json::array({r.range.j1, r.range.j2});
    ch["q"] = json_number(q);
    ch["c"] = json_number(c);
    ch["delta"] = json_number(r.split.delta);
    ch["fully_absorbed"] = !std::isfinite(r.split.delta);
    ch["fit_levels"] = r.split.fit_levels;
    ch["hmin"] = json_number(r.hmin);
    ch["admissible_p_bound"] = optional_number(r.bound);
    Json levels = Json::array();
    for (const auto& l : r.split.levels) {
      Json lv = Json::object();
      lv["j"] = l.j;
      lv["total"] = l.total;
      lv["small"] = l.small;
      lv["budget"] = json_number(l.budget);
      lv["small_sum"] = json_number(l.small_sum);
      levels.push_back(std::move(lv));
    }
    ch["levels"] = std::move(levels);
    doc.json["channels"].push_back(std::move(ch));
  }
  return doc;
}

Document command_spectrum(const Config& config) {
  static const std::set<std::string> keys = {"spectrum.input", "spectrum.restriction", "spectrum.h_points",
                                             "spectrum.floor", "spectrum.h_min",      "spectrum.h_max",
                                             "output.json",    "output.tsv_dir"};
  check_keys(config, {&keys});
  const std::string path = config.get_string("spectrum.input", "");
  if (path.empty()) throw Error(Errc::ConfigError, "spectrum.input is required");
  const std::string restriction_name = config.get_string("spectrum.restriction", "all");
  QRestriction restriction;
  if (restriction_name == "all") {
    restriction = QRestriction::AllQ;
  } else if (restriction_name == "positive") {
    restriction = QRestriction::PositiveOnly;
  } else {
    throw Error(Errc::ConfigError, "spectrum.restriction must be 'all' or 'positive'");
  }

  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open '" + path + "'");
  std::vector<double> q;
  std::vector<double> zeta;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ss(line);
    double a = 0.0;
    double b = 0.0;
    if (!(ss >> a >> b) || !std::isfinite(a) || !std::isfinite(b)) {
      if (q.empty() && row == 1) continue;  // header
      throw Error(Errc::ParseError, path + ": row " + std::to_string(row) + ": expected 'q<TAB>zeta'");
    }
    q.push_back(a);
    zeta.push_back(b);
  }
  if (q.empty()) throw Error(Errc::ParseError, path + ": no (q, zeta) rows");
  std::vector<std::size_t> order(q.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return q[a] < q[b]; });
  std::vector<double> qs;
  std::vector<double> zs;
  for (std::size_t i : order) {
    qs.push_back(q[i]);
    zs.push_back(zeta[i]);
  }

  const auto n = static_cast<std::size_t>(checked_int(config, "spectrum.h_points", 512, 2, 10000000));
  std::vector<double> h_grid = default_h_grid(qs, zs, n);
  if (config.has("spectrum.h_min") || config.has("spectrum.h_max")) {
    const double lo = config.get_double("spectrum.h_min", h_grid.front());
    const double hi = config.get_double("spectrum.h_max", h_grid.back());
    if (!(hi > lo)) throw Error(Errc::ConfigError, "spectrum.h_max must exceed spectrum.h_min");
    for (std::size_t i = 0; i < n; ++i) h_grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  const auto s = legendre_transform(qs, zs, h_grid, restriction,
                                    config.get_double("spectrum.floor", kDefaultSpectrumFloor));
  Document doc;
  doc.json["schema"] = "wsmf.spectrum/1";
  doc.json["provenance"] = provenance("spectrum", provenance_echo(config));
  doc.json["restriction"] = restriction_name;
  doc.json["spectrum"] = spectrum_json(s);
  doc.tables.push_back(spectrum_table("spectrum.tsv", s));
  return doc;
}

Document run_command(const std::string& name, const Config& config) {
  if (name == "analyze") return command_analyze(config);
  if (name == "synth") return command_synth(config);
  if (name == "hmin") return command_hmin(config);
  if (name == "split") return command_split(config);
  if (name == "spectrum") return command_spectrum(config);
  throw Error(Errc::InvalidArgument, "unknown command '" + name + "'");
}

}  // namespace wsmf
