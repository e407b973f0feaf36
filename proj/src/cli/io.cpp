#include "recourse/cli/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace recourse::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& token, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (token.empty() || used != token.size()) {
    throw ValidationError(where + ": '" + token + "' is not a number");
  }
  return v;
}

// Accepts "1,2,3", "(1,2,3)" and "[1, 2, 3]".
std::vector<std::string> list_tokens(const std::string& text) {
  std::string body = trim(text);
  if (body.size() >= 2 && ((body.front() == '(' && body.back() == ')') ||
                           (body.front() == '[' && body.back() == ']'))) {
    body = body.substr(1, body.size() - 2);
  }
  if (trim(body).empty()) return {};
  return split(body, ',');
}

}  // namespace

LabelledCsv parse_labelled_csv(const std::string& text, const std::string& source) {
  LabelledCsv csv;
  std::istringstream is(text);
  std::string line;
  std::size_t line_no = 0;
  bool header = true;
  while (std::getline(is, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split(line, ',');
    const std::string where = source + ":" + std::to_string(line_no);
    if (header) {
      if (cells.size() < 2) throw ValidationError(where + ": header needs a corner cell and at least one column id");
      csv.corner = cells.front();
      csv.column_ids.assign(cells.begin() + 1, cells.end());
      header = false;
      continue;
    }
    if (cells.size() != csv.column_ids.size() + 1) {
      throw ValidationError(where + ": expected " + std::to_string(csv.column_ids.size() + 1) +
                            " cells, found " + std::to_string(cells.size()));
    }
    csv.row_ids.push_back(cells.front());
    std::vector<double> row;
    for (std::size_t c = 1; c < cells.size(); ++c) row.push_back(parse_double(cells[c], where));
    csv.rows.push_back(std::move(row));
  }
  if (header) throw ValidationError(source + ": empty matrix file");
  if (csv.rows.empty()) throw ValidationError(source + ": matrix has no data rows");
  return csv;
}

LabelledCsv read_labelled_csv(const std::filesystem::path& path) {
  return parse_labelled_csv(read_file(path), path.string());
}

std::string format_labelled_csv(const LabelledCsv& csv) {
  std::ostringstream os;
  os << csv.corner;
  for (const auto& id : csv.column_ids) os << ',' << id;
  os << '\n';
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    os << csv.row_ids[r];
    for (double v : csv.rows[r]) os << ',' << format9(v);
    os << '\n';
  }
  return os.str();
}

CostMatrix to_cost_matrix(const LabelledCsv& csv) {
  return CostMatrix::from_rows(csv.rows, csv.row_ids, csv.column_ids);
}

WeightMatrix to_weight_matrix(const LabelledCsv& csv, double gamma) {
  return WeightMatrix::from_rows(csv.rows, gamma, csv.row_ids, csv.column_ids);
}

KeyValueConfig KeyValueConfig::parse(const std::string& text, const std::string& source) {
  KeyValueConfig cfg;
  std::istringstream is(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(source + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ValidationError(source + ":" + std::to_string(line_no) + ": empty key");
    if (cfg.has(key)) throw ValidationError(source + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
    cfg.values_[key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::read(const std::filesystem::path& path) {
  return parse(read_file(path), path.string());
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> KeyValueConfig::get_double(const std::string& key) const {
  auto v = get(key);
  if (!v) return std::nullopt;
  return parse_double(*v, "config key '" + key + "'");
}

std::optional<long long> KeyValueConfig::get_int(const std::string& key) const {
  auto v = get(key);
  if (!v) return std::nullopt;
  const auto ints = parse_ints(*v, "config key '" + key + "'");
  if (ints.size() != 1) throw ValidationError("config key '" + key + "' must be a single integer");
  return ints.front();
}

std::optional<std::vector<double>> KeyValueConfig::get_doubles(const std::string& key) const {
  auto v = get(key);
  if (!v) return std::nullopt;
  return parse_doubles(*v, "config key '" + key + "'");
}

std::optional<std::vector<int>> KeyValueConfig::get_ints(const std::string& key) const {
  auto v = get(key);
  if (!v) return std::nullopt;
  return parse_ints(*v, "config key '" + key + "'");
}

std::vector<double> parse_doubles(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const auto& tok : list_tokens(text)) {
    if (tok == "inf" || tok == "+inf") {
      out.push_back(HUGE_VAL);
    } else if (tok == "-inf") {
      out.push_back(-HUGE_VAL);
    } else {
      out.push_back(parse_double(tok, what));
    }
  }
  return out;
}

std::vector<int> parse_ints(const std::string& text, const std::string& what) {
  std::vector<int> out;
  for (const auto& tok : list_tokens(text)) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (tok.empty() || used != tok.size() || v < INT32_MIN || v > INT32_MAX) {
      throw ValidationError(what + ": '" + tok + "' is not an integer");
    }
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << contents;
}

std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format9(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

double round9(double value) { return std::stod(format9(value)); }

std::string dump_json(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

}  // namespace recourse::cli
