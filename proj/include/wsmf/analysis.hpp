#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wsmf/config.hpp"
#include "wsmf/io.hpp"
#include "wsmf/multiscale.hpp"
#include "wsmf/report.hpp"
#include "wsmf/scaling.hpp"
#include "wsmf/sparsity.hpp"
#include "wsmf/spectrum.hpp"

namespace wsmf {

inline constexpr const char* kVersion = "0.1.0";

enum class AnalysisMethod { Leaders, PLeaders, ThetaOmega };

const char* to_string(AnalysisMethod method) noexcept;
AnalysisMethod parse_analysis_method(const std::string& name);

struct AnalysisConfig {
  std::string input;
  InputFormat format = InputFormat::Auto;
  std::vector<std::size_t> channels;

  int vanishing_moments = WaveletSpec::kDefaultVanishingMoments;
  int j_coarse = 1;
  int j1 = 0;  // 0 selects the default range
  int j2 = 0;

  AnalysisMethod method = AnalysisMethod::ThetaOmega;
  double p = 1.0;
  GrowthPair growth{};
  double s = 0.0;

  double q_min = -8.0;
  double q_max = 8.0;
  std::size_t q_count = 64;
  std::size_t h_points = kDefaultHGridSize;
  double floor = kDefaultSpectrumFloor;

  bool sparsity = false;
  double sparsity_q = 2.0;
  double sparsity_c = 1.0;

  unsigned threads = 0;  // 0 = hardware concurrency
  Config echo;           // recorded in the provenance block

  // Keys: input.{path,format,channels}, wavelet.{vanishing_moments,j_coarse},
  // scales.{j1,j2,preset}, formalism.{kind,p,beta,a,theta_const},
  // analysis.{s,q_min,q_max,q_count,h_points,floor,threads},
  // sparsity.{enabled,q,c}. Unknown keys are rejected.
  static AnalysisConfig from(const Config& config);
};

struct ScaleRange {
  int j1 = 0;
  int j2 = 0;
};

// [max(3, depth - 8), min(depth - 2, field_valid_hi)] with depth = floor(log2 n).
ScaleRange default_scale_range(std::size_t length, int field_valid_hi);

struct ChannelResult {
  std::size_t index = 0;
  std::string label;
  std::size_t samples_used = 0;
  ScaleRange range;
  double hmin = 0.0;
  ScalingFunction zeta;
  std::vector<std::size_t> zero_counts;  // per scale j1..j2
  std::vector<int> unreliable_scales;    // scales flagged for q < 0
  LegendreSpectrum spectrum;             // H already offset by -s
  Admissibility admissibility;
  std::optional<SparsitySplit> sparsity;
  std::optional<double> p_bound;
};

struct AnalysisReport {
  AnalysisMethod method = AnalysisMethod::ThetaOmega;
  double s = 0.0;
  Config echo;
  std::vector<ChannelResult> channels;
};

ChannelResult analyze_signal(const AnalysisConfig& config, const Signal& signal, std::size_t index = 0);
// Channels are analyzed concurrently; the result order follows the input.
AnalysisReport run_analysis(const AnalysisConfig& config, const std::vector<Signal>& signals);
AnalysisReport run_analysis(const AnalysisConfig& config);

Document to_document(const AnalysisReport& report);

// CLI subcommands over a flat configuration. "synth" writes its signal to
// synth.output; the others only build the returned document.
Document command_analyze(const Config& config);
Document command_synth(const Config& config);
Document command_hmin(const Config& config);
Document command_split(const Config& config);
Document command_spectrum(const Config& config);
Document run_command(const std::string& name, const Config& config);

}  // namespace wsmf
