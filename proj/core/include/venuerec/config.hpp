#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "venuerec/collection.hpp"
#include "venuerec/cross_validation.hpp"
#include "venuerec/features.hpp"
#include "venuerec/sweeps.hpp"
#include "venuerec/synthetic.hpp"

namespace venuerec {

/// Flat `key = value` configuration.
///
/// Grammar, one entry per line:
///   line    := blank | comment | entry
///   comment := optional spaces, then '#' ...
///   entry   := key spaces? '=' spaces? value
///   key     := [A-Za-z0-9_.-]+
/// Values are trimmed; lists are comma-separated. A repeated key is an error.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::istream& in, std::string_view source = "config");
  static KeyValueConfig from_file(const std::filesystem::path& path);

  /// Inserts or replaces (used for command-line overrides).
  void set(std::string key, std::string value);
  bool has(std::string_view key) const;

  std::optional<std::string> get(std::string_view key) const;
  std::string get_string(std::string_view key, std::string_view fallback) const;
  std::string require_string(std::string_view key) const;
  std::int64_t get_int(std::string_view key, std::int64_t fallback) const;
  std::uint64_t get_uint(std::string_view key, std::uint64_t fallback) const;
  double get_double(std::string_view key, double fallback) const;
  std::vector<std::string> get_list(std::string_view key,
                                    std::vector<std::string> fallback = {}) const;
  std::vector<int> get_int_list(std::string_view key, std::vector<int> fallback = {}) const;

  const std::map<std::string, std::string, std::less<>>& entries() const { return entries_; }

  /// Sorted `key=value` lines; the input of the config hash.
  std::string canonical_text() const;
  /// FNV-1a of canonical_text(), as 16 hex digits.
  std::string hash_hex() const;

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

/// Generator parameters from keys named like the SyntheticSpec fields.
SyntheticSpec synthetic_spec_from(const KeyValueConfig& config);

struct ExperimentConfig {
  CollectionPaths dataset;
  std::filesystem::path output_dir = "results";
  std::uint64_t seed = 0;
  std::vector<std::string> variants;
  std::string reference;
  RankerKind ranker = RankerKind::pairwise_neural;
  /// Extra rankers for the per-ranker nDCG@5 table; empty disables it.
  std::vector<RankerKind> ranker_table;
  int random_permutations = 100;
  CrossValidationOptions cv;
  FeatureOptions features;

  SweepAxis sweep_axis = SweepAxis::reviews;
  std::vector<SweepCriterion> sweep_criteria;
  /// k values per criterion, parallel to sweep_criteria.
  std::vector<std::vector<int>> sweep_k_values;
  int sweep_repeats = 5;

  std::string config_hash;

  /// Throws ConfigError on a missing seed, unknown names, or bad values.
  static ExperimentConfig from(const KeyValueConfig& config);

  /// Throws ConfigError naming the first dataset file that does not exist.
  void validate_paths() const;

  std::vector<SweepConfig> sweep_configs() const;
};

}  // namespace venuerec
