#pragma once

#include "filsim/integrator.hpp"
#include "filsim/models.hpp"

#include <map>
#include <string>

namespace filsim {

/// User-facing error (bad flag, unknown key, malformed value). The CLI
/// reports it and exits with status 1.
class usage_error : public std::runtime_error {
 public:
  explicit usage_error(const std::string& what) : std::runtime_error(what) {}
};

/// One run of a built-in model: parameter overrides, solver settings and
/// output destinations. Precedence when assembling a RunSpec is
/// defaults < config file < command-line flags (handled by the CLI).
struct RunSpec {
  std::string model;  // "stickslip2" | "belt3"
  std::map<std::string, std::string> params;
  SimConfig config;
  std::string trace_path = "trace.csv";
  std::string events_path = "events.json";
  std::string plot_path;               // empty: no plot
  std::vector<std::string> plot_vars;  // state names
  unsigned seed = 0;                   // reserved

  bool operator==(const RunSpec&) const = default;

  /// Flat `key = value` text with the same keys the parser accepts.
  std::string to_config_string() const;
};

/// Parse flat `key = value` config text (# starts a comment). Unknown run
/// keys are treated as model parameter overrides; they are validated
/// against the chosen model by build_run.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> load_config_file(const std::string& path);

/// Fold a key/value map into the spec. `overwrite` controls whether values
/// already set by a higher-precedence source are replaced.
void apply_config(RunSpec& spec, const std::map<std::string, std::string>& kv);

/// Parse back a config written by to_config_string.
RunSpec run_spec_from_config(const std::string& text);

struct BuiltRun {
  HybridModel model;
  State x0;
};

/// Instantiate the model named by the spec with its overrides applied.
/// Unknown parameter keys or malformed values raise usage_error.
BuiltRun build_run(const RunSpec& spec);

/// Parse a decimal real, requiring the whole token to be consumed.
double parse_real(const std::string& key, const std::string& value);

}  // namespace filsim
