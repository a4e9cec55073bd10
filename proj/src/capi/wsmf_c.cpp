#include "wsmf/wsmf.h"

#include <cmath>
#include <exception>
#include <new>
#include <string>

#include "wsmf/analysis.hpp"
#include "wsmf/config.hpp"
#include "wsmf/error.hpp"
#include "wsmf/io.hpp"
#include "wsmf/report.hpp"
#include "wsmf/scaling.hpp"
#include "wsmf/wavelet.hpp"

struct wsmf_config {
  wsmf::Config config;
};

struct wsmf_report {
  wsmf::Document doc;
  std::string json;
};

struct wsmf_signal_set {
  std::vector<wsmf::Signal> signals;
};

struct wsmf_pyramid {
  wsmf::CoefficientPyramid pyramid;
};

namespace {

thread_local std::string last_error;

wsmf_status fail(wsmf_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs f, translating exceptions into status codes and the thread-local message.
template <typename F>
wsmf_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return WSMF_OK;
  } catch (const wsmf::Error& e) {
    switch (wsmf::error_class(e.code())) {
      case wsmf::ErrorClass::Validation: return fail(WSMF_ERR_VALIDATION, e.what());
      case wsmf::ErrorClass::Compute: return fail(WSMF_ERR_COMPUTE, e.what());
      case wsmf::ErrorClass::Io: return fail(WSMF_ERR_IO, e.what());
    }
    return fail(WSMF_ERR_COMPUTE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(WSMF_ERR_COMPUTE, "out of memory");
  } catch (const std::exception& e) {
    return fail(WSMF_ERR_COMPUTE, e.what());
  } catch (...) {
    return fail(WSMF_ERR_COMPUTE, "unknown error");
  }
}

wsmf_status null_argument(const char* name) {
  return fail(WSMF_ERR_INVALID_ARGUMENT, std::string("null argument: ") + name);
}

}  // namespace

extern "C" {

const char* wsmf_version(void) { return wsmf::kVersion; }

const char* wsmf_status_name(wsmf_status status) {
  switch (status) {
    case WSMF_OK: return "ok";
    case WSMF_ERR_INVALID_ARGUMENT: return "invalid argument";
    case WSMF_ERR_VALIDATION: return "validation error";
    case WSMF_ERR_COMPUTE: return "compute error";
    case WSMF_ERR_IO: return "i/o error";
  }
  return "unknown status";
}

const char* wsmf_last_error(void) { return last_error.c_str(); }

wsmf_status wsmf_config_create(wsmf_config** out) {
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = new wsmf_config{}; });
}

void wsmf_config_destroy(wsmf_config* config) { delete config; }

wsmf_status wsmf_config_set(wsmf_config* config, const char* key, const char* value) {
  if (config == nullptr) return null_argument("config");
  if (key == nullptr || value == nullptr) return null_argument("key/value");
  return guarded([&] {
    if (*key == '\0') throw wsmf::Error(wsmf::Errc::ConfigError, "empty key");
    config->config.set(key, value);
  });
}

wsmf_status wsmf_config_load(wsmf_config* config, const char* path) {
  if (config == nullptr) return null_argument("config");
  if (path == nullptr) return null_argument("path");
  return guarded([&] { config->config.merge(wsmf::Config::load(path)); });
}

wsmf_status wsmf_run(const char* command, const wsmf_config* config, wsmf_report** out) {
  if (command == nullptr) return null_argument("command");
  if (config == nullptr) return null_argument("config");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto* report = new wsmf_report{wsmf::run_command(command, config->config), {}};
    report->json = wsmf::dump_json(report->doc.json);
    *out = report;
  });
}

wsmf_status wsmf_report_json(const wsmf_report* report, const char** json, size_t* length) {
  if (report == nullptr) return null_argument("report");
  if (json == nullptr) return null_argument("json");
  *json = report->json.c_str();
  if (length != nullptr) *length = report->json.size();
  last_error.clear();
  return WSMF_OK;
}

size_t wsmf_report_table_count(const wsmf_report* report) { return report ? report->doc.tables.size() : 0; }

wsmf_status wsmf_report_write(const wsmf_report* report, const char* json_path, const char* tsv_dir) {
  if (report == nullptr) return null_argument("report");
  return guarded([&] {
    wsmf::emit_document(report->doc, json_path ? json_path : "", tsv_dir ? tsv_dir : "");
  });
}

void wsmf_report_destroy(wsmf_report* report) { delete report; }

wsmf_status wsmf_signal_set_read(const char* path, const char* format, wsmf_signal_set** out) {
  if (path == nullptr) return null_argument("path");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto signals = wsmf::ingest(path, wsmf::parse_input_format(format ? format : "auto"));
    *out = new wsmf_signal_set{std::move(signals)};
  });
}

size_t wsmf_signal_set_count(const wsmf_signal_set* set) { return set ? set->signals.size() : 0; }

wsmf_status wsmf_signal_set_get(const wsmf_signal_set* set, size_t channel, const double** samples, size_t* length,
                                const char** label) {
  if (set == nullptr) return null_argument("set");
  return guarded([&] {
    if (channel >= set->signals.size()) {
      throw wsmf::Error(wsmf::Errc::ChannelOutOfRange, "channel " + std::to_string(channel) + " of " +
                                                           std::to_string(set->signals.size()));
    }
    const auto& s = set->signals[channel];
    if (samples) *samples = s.samples.data();
    if (length) *length = s.samples.size();
    if (label) *label = s.label.c_str();
  });
}

void wsmf_signal_set_destroy(wsmf_signal_set* set) { delete set; }

wsmf_status wsmf_pyramid_decompose(const double* samples, size_t length, int vanishing_moments, int j_coarse,
                                   wsmf_pyramid** out) {
  if (samples == nullptr && length > 0) return null_argument("samples");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    wsmf::Signal signal{std::vector<double>(samples, samples + length), ""};
    for (double v : signal.samples) {
      if (!std::isfinite(v)) throw wsmf::Error(wsmf::Errc::NonFiniteInput, "non-finite sample");
    }
    *out = new wsmf_pyramid{wsmf::decompose(signal, wsmf::WaveletSpec::daubechies(vanishing_moments), j_coarse)};
  });
}

wsmf_status wsmf_pyramid_integrate(const wsmf_pyramid* pyramid, double s, wsmf_pyramid** out) {
  if (pyramid == nullptr) return null_argument("pyramid");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new wsmf_pyramid{wsmf::pseudo_fractional_integrate(pyramid->pyramid, s)}; });
}

wsmf_status wsmf_pyramid_range(const wsmf_pyramid* pyramid, int* j_coarse, int* j_fine) {
  if (pyramid == nullptr) return null_argument("pyramid");
  if (j_coarse) *j_coarse = pyramid->pyramid.j_coarse();
  if (j_fine) *j_fine = pyramid->pyramid.j_fine();
  last_error.clear();
  return WSMF_OK;
}

wsmf_status wsmf_pyramid_level(const wsmf_pyramid* pyramid, int j, const double** coeffs, size_t* count,
                               size_t* interior) {
  if (pyramid == nullptr) return null_argument("pyramid");
  return guarded([&] {
    const auto& level = pyramid->pyramid.level(j);
    if (coeffs) *coeffs = level.coeffs.data();
    if (count) *count = level.coeffs.size();
    if (interior) *interior = level.interior;
  });
}

wsmf_status wsmf_pyramid_hmin(const wsmf_pyramid* pyramid, int j1, int j2, double* out) {
  if (pyramid == nullptr) return null_argument("pyramid");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = wsmf::estimate_hmin(pyramid->pyramid, j1, j2); });
}

void wsmf_pyramid_destroy(wsmf_pyramid* pyramid) { delete pyramid; }

}  // extern "C"
