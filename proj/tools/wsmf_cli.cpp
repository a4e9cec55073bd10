// Command-line front end. Every flag maps onto a configuration key; a
// --config file is read first and flags override it.
#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "wsmf/wsmf.h"

namespace {

struct Binding {
  std::string key;
  std::string value;
  CLI::Option* option = nullptr;
};

class Command {
 public:
  Command(CLI::App& app, const char* name, const char* help) : name_(name), sub_(app.add_subcommand(name, help)) {
    sub_->add_option("-c,--config", config_file_, "key=value configuration file");
    sub_->add_option("--set", overrides_, "extra key=value entries (repeatable)");
    sub_->add_option("-o,--output", json_path_, "JSON report path (default: stdout)");
    sub_->add_option("--tsv-dir", tsv_dir_, "directory for plot-ready TSV tables");
  }

  CLI::App* app() { return sub_; }

  void bind(const std::string& flag, const std::string& key, const std::string& help) {
    auto b = std::make_unique<Binding>();
    b->key = key;
    b->option = sub_->add_option(flag, b->value, help);
    bindings_.push_back(std::move(b));
  }

  void bind_flag(const std::string& flag, const std::string& key, const std::string& help) {
    auto b = std::make_unique<Binding>();
    b->key = key;
    b->value = "true";
    b->option = sub_->add_flag(flag, help);
    bindings_.push_back(std::move(b));
  }

  bool parsed() const { return sub_->parsed(); }

  int run() {
    wsmf_config* cfg = nullptr;
    if (wsmf_config_create(&cfg) != WSMF_OK) return report_error(WSMF_ERR_COMPUTE);
    std::unique_ptr<wsmf_config, void (*)(wsmf_config*)> guard(cfg, wsmf_config_destroy);
    if (!config_file_.empty()) {
      if (auto st = wsmf_config_load(cfg, config_file_.c_str()); st != WSMF_OK) return report_error(st);
    }
    for (const auto& b : bindings_) {
      if (b->option->count() == 0) continue;
      if (auto st = wsmf_config_set(cfg, b->key.c_str(), b->value.c_str()); st != WSMF_OK) return report_error(st);
    }
    for (const auto& kv : overrides_) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        std::fprintf(stderr, "wsmf: --set expects key=value, got '%s'\n", kv.c_str());
        return WSMF_ERR_VALIDATION;
      }
      const std::string key = kv.substr(0, eq);
      const std::string value = kv.substr(eq + 1);
      if (auto st = wsmf_config_set(cfg, key.c_str(), value.c_str()); st != WSMF_OK) return report_error(st);
    }

    wsmf_report* report = nullptr;
    if (auto st = wsmf_run(name_.c_str(), cfg, &report); st != WSMF_OK) return report_error(st);
    std::unique_ptr<wsmf_report, void (*)(wsmf_report*)> report_guard(report, wsmf_report_destroy);
    const bool to_stdout = json_path_.empty() || json_path_ == "-";
    if (auto st = wsmf_report_write(report, to_stdout ? nullptr : json_path_.c_str(), tsv_dir_.c_str());
        st != WSMF_OK) {
      return report_error(st);
    }
    if (to_stdout) {
      const char* json = nullptr;
      size_t length = 0;
      wsmf_report_json(report, &json, &length);
      std::fwrite(json, 1, length, stdout);
    }
    return 0;
  }

 private:
  static int report_error(wsmf_status st) {
    std::fprintf(stderr, "wsmf: %s\n", wsmf_last_error());
    return st == WSMF_ERR_INVALID_ARGUMENT ? WSMF_ERR_VALIDATION : static_cast<int>(st);
  }

  std::string name_;
  CLI::App* sub_;
  std::string config_file_;
  std::vector<std::string> overrides_;
  std::string json_path_;
  std::string tsv_dir_;
  std::vector<std::unique_ptr<Binding>> bindings_;
};

void bind_input(Command& c) {
  c.bind("input,-i,--input", "input.path", "signal file (CSV or RAW)");
  c.bind("--format", "input.format", "csv, raw or auto");
  c.bind("--channels", "input.channels", "comma-separated channel indices");
  c.bind("--wavelet", "wavelet.vanishing_moments", "Daubechies vanishing moments (1-8)");
  c.bind("--j-coarse", "wavelet.j_coarse", "coarsest decomposition scale");
  c.bind("--j1", "scales.j1", "coarsest regression scale");
  c.bind("--j2", "scales.j2", "finest regression scale");
  c.bind("--preset", "scales.preset", "scale range preset (meg = [10, 14])");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wavelet-based multifractal analysis of 1-D signals"};
  app.set_version_flag("--version", wsmf_version());
  app.require_subcommand(1);

  Command analyze(app, "analyze", "scaling function, Legendre spectrum and diagnostics per channel");
  bind_input(analyze);
  analyze.bind("--formalism", "formalism.kind", "leaders, pleaders or theta_omega");
  analyze.bind("-p,--p", "formalism.p", "p for p-leaders");
  analyze.bind("--beta", "formalism.beta", "theta(j) = j + ceil(j^beta)");
  analyze.bind("--a", "formalism.a", "omega(j) = max(1, ceil(j^a))");
  analyze.bind("--theta-const", "formalism.theta_const", "theta(j) = j + const when beta = 0");
  analyze.bind("-s,--s", "analysis.s", "pseudo-fractional integration order");
  analyze.bind("--q-min", "analysis.q_min", "smallest moment");
  analyze.bind("--q-max", "analysis.q_max", "largest moment");
  analyze.bind("--q-count", "analysis.q_count", "number of moments");
  analyze.bind("--h-points", "analysis.h_points", "H grid size");
  analyze.bind("--floor", "analysis.floor", "spectrum values below this are reported as -inf");
  analyze.bind("--threads", "analysis.threads", "worker threads (0 = all cores)");
  analyze.bind_flag("--sparsity", "sparsity.enabled", "add the sparsity split summary");
  analyze.bind("--sparsity-q", "sparsity.q", "moment of the sparsity budget");
  analyze.bind("--sparsity-c", "sparsity.c", "budget constant C");

  Command synth(app, "synth", "generate a synthetic signal");
  synth.bind("--model", "synth.model", "fbm, fgn, mrw, rws or lacunary");
  synth.bind("--hurst", "synth.hurst", "Hurst exponent (fbm, mrw)");
  synth.bind("--alpha", "synth.alpha", "exponent (fgn, lacunary)");
  synth.bind("--lambda", "synth.lambda", "MRW intermittency");
  synth.bind("--eta", "synth.eta", "lacunary density exponent");
  synth.bind("--atoms", "synth.atoms", "rws atoms as alpha,eta,alpha,eta,...");
  synth.bind("--uniform-bound", "synth.uniform_bound", "rws uniform bound A");
  synth.bind("--length", "synth.length", "samples (power of two >= 1024)");
  synth.bind("--seed", "synth.seed", "random seed");
  synth.bind("--count", "synth.channels", "number of channels (seeds seed, seed+1, ...)");
  synth.bind("--signal", "synth.output", "output signal file");
  synth.bind("--format", "synth.format", "csv, raw or auto");
  synth.bind("--wavelet", "wavelet.vanishing_moments", "wavelet used to reconstruct rws models");

  Command hmin(app, "hmin", "uniform regularity exponent per channel");
  bind_input(hmin);

  Command split(app, "split", "sparsity split and admissible p bound per channel");
  bind_input(split);
  split.bind("-q,--q", "sparsity.q", "moment of the budget");
  split.bind("-C,--C", "sparsity.c", "budget constant");

  Command spectrum(app, "spectrum", "Legendre spectrum of a q/zeta table");
  spectrum.bind("zeta,--zeta", "spectrum.input", "table with columns q and zeta");
  spectrum.bind("--restriction", "spectrum.restriction", "all or positive");
  spectrum.bind("--h-points", "spectrum.h_points", "H grid size");
  spectrum.bind("--h-min", "spectrum.h_min", "H grid start");
  spectrum.bind("--h-max", "spectrum.h_max", "H grid end");
  spectrum.bind("--floor", "spectrum.floor", "values below this are reported as -inf");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : WSMF_ERR_VALIDATION;
  }

  for (Command* c : {&analyze, &synth, &hmin, &split, &spectrum}) {
    if (c->parsed()) return c->run();
  }
  return WSMF_ERR_VALIDATION;
}
