#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lwrvsl/scenario.hpp"

namespace lwrvsl::io {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OutputFormats {
  bool csv{true};
  bool json{true};
  bool svg{true};

  bool any() const { return csv || json || svg; }
};

/// Parses "csv,json,svg" style lists. Throws ConfigError on unknown names.
OutputFormats parse_formats(std::string_view list);

std::vector<double> case_study_q0_values();

struct RunConfig {
  Scenario scenario{case_study_scenario()};
  std::filesystem::path output_dir{"out"};
  OutputFormats formats{};
  std::vector<double> sweep_q0{case_study_q0_values()};
  std::vector<double> riccati_q0{case_study_q0_values()};
  std::size_t riccati_points{401};
};

/// YAML document; see docs/config.md. Omitted keys take the case-study
/// defaults. Unknown keys and unit suffixes other than the documented one
/// are rejected with the offending key path.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Re-runs scenario validation, reporting failures as ConfigError.
void validate(const RunConfig& config);

}  // namespace lwrvsl::io
