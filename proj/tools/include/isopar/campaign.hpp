#pragma once

// Seeded verification campaigns and their reports.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "isopar/isotropic.hpp"

namespace isopar::campaign {

enum class FieldKind { prime, rational };
enum class OutputFormat { json, csv };
enum class CounterexampleVariant { fixed, zero, random };

/// Inclusive size range. Parsed from "lo:hi" or a single number.
struct SizeRange {
  std::size_t lo = 1;
  std::size_t hi = 1;
  friend bool operator==(const SizeRange&, const SizeRange&) = default;
};
SizeRange parse_range(const std::string& text);

struct CampaignConfig {
  FieldKind field = FieldKind::prime;
  std::uint32_t prime = 32003;
  SizeRange q_range{1, 8};
  SizeRange r_range{1, 6};
  std::optional<std::size_t> k_max;  // command default when absent
  std::size_t trials = 500;
  std::uint64_t seed = 20241014;
  GeneratorMode mode = GeneratorMode::mu_param;
  std::size_t max_degree = 4;        // base-change entry degree
  std::optional<std::size_t> precision_cap;
  std::optional<std::string> input;  // torsion: matrix file
  CounterexampleVariant variant = CounterexampleVariant::fixed;
  unsigned jobs = 0;                 // 0: one per hardware thread
};

std::size_t default_k_max(const std::string& command);

/// Throws UsageError on an invalid configuration for the given command.
void validate(const std::string& command, const CampaignConfig& config);

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;          // regenerates the instance
  bool passed = true;
  nlohmann::ordered_json data;     // parameters, sequences, flags; instance payload on failure
};

struct Report {
  std::string command;
  nlohmann::ordered_json config;
  std::vector<TrialRecord> trials;
  nlohmann::ordered_json summary;  // counts and statistics, no timing
  double wall_time_ms = 0;

  std::size_t failures() const;
};

Report run_skew(const CampaignConfig& config);
Report run_isotropic(const CampaignConfig& config);
Report run_torsion(const CampaignConfig& config);
Report run_base_change(const CampaignConfig& config);
Report run_counterexample(const CampaignConfig& config);

/// Dispatches on "skew", "isotropic", "torsion", "base-change", "counterexample".
Report run_command(const std::string& command, const CampaignConfig& config);

std::string render(const Report& report, OutputFormat format, bool include_timing);

/// 0 when every trial passed, 1 otherwise.
int exit_code(const Report& report);

}  // namespace isopar::campaign
