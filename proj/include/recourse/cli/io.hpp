#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "recourse/core.hpp"

namespace recourse::cli {

/// A labelled numeric grid as it appears on disk: header row of column ids
/// after a leading corner cell, then one row per seeker starting with its id.
struct LabelledCsv {
  std::string corner;
  std::vector<std::string> column_ids;
  std::vector<std::string> row_ids;
  std::vector<std::vector<double>> rows;
};

LabelledCsv parse_labelled_csv(const std::string& text, const std::string& source);
LabelledCsv read_labelled_csv(const std::filesystem::path& path);
std::string format_labelled_csv(const LabelledCsv& csv);

CostMatrix to_cost_matrix(const LabelledCsv& csv);
WeightMatrix to_weight_matrix(const LabelledCsv& csv, double gamma);

/// Flat "key = value" file; '#' starts a comment.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(const std::string& text, const std::string& source);
  static KeyValueConfig read(const std::filesystem::path& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
  std::optional<std::string> get(const std::string& key) const;
  std::optional<double> get_double(const std::string& key) const;
  std::optional<long long> get_int(const std::string& key) const;
  std::optional<std::vector<double>> get_doubles(const std::string& key) const;
  std::optional<std::vector<int>> get_ints(const std::string& key) const;
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

std::vector<double> parse_doubles(const std::string& text, const std::string& what);
std::vector<int> parse_ints(const std::string& text, const std::string& what);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

/// 64-bit FNV-1a of the bytes, as "fnv1a64:<16 hex digits>".
std::string content_hash(const std::string& bytes);

/// Value rounded to 9 significant digits so serialised reports are stable.
double round9(double value);
std::string format9(double value);

/// Deterministic JSON text: sorted keys, two-space indent, trailing newline.
std::string dump_json(const nlohmann::json& doc);

}  // namespace recourse::cli
