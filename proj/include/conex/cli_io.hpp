#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace conex {

inline constexpr const char* kCodeVersion = "0.1.0";

// Flat ordered key/value row.  Empty (monostate) fields print as blank cells
// in CSV and null in JSON.
using FieldValue = std::variant<std::monostate, double, long long, bool, std::string>;

struct ResultRecord {
  std::vector<std::pair<std::string, FieldValue>> fields;

  void add(const std::string& key, double v) { fields.emplace_back(key, v); }
  void add(const std::string& key, int v) { fields.emplace_back(key, static_cast<long long>(v)); }
  void add(const std::string& key, long long v) { fields.emplace_back(key, v); }
  void add(const std::string& key, std::size_t v) { fields.emplace_back(key, static_cast<long long>(v)); }
  void add(const std::string& key, bool v) { fields.emplace_back(key, v); }
  void add(const std::string& key, const char* v) { fields.emplace_back(key, std::string(v)); }
  void add(const std::string& key, const std::string& v) { fields.emplace_back(key, v); }
  void add_empty(const std::string& key) { fields.emplace_back(key, std::monostate{}); }
  const FieldValue* find(const std::string& key) const;
};

// Reals carry 12 significant digits; bool prints true/false.
std::string format_field(const FieldValue& v);

// Header taken from the first record; later records are matched by key.
std::string to_csv(const std::vector<ResultRecord>& records);
std::string to_json(const std::vector<ResultRecord>& records);

// Minimal RFC-4180 reader (quoted fields, embedded separators/newlines).
std::vector<std::vector<std::string>> read_csv(const std::string& text);

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepts "pi", "pi/8", "3pi/4", "0.75pi" or a plain radian value.
double parse_angle(const std::string& text);
// Accepts "PHIxPSI", e.g. "256x128".
std::pair<int, int> parse_mesh(const std::string& text);
// Comma-separated list of reals, e.g. "0.9,0.99,0.999".
std::vector<double> parse_real_list(const std::string& text);

struct RunConfig {
  std::string command;
  int n = 2;
  double theta = 0.0;
  std::vector<double> s_values;
  int mesh_phi = 128;
  int mesh_psi = 64;
  int cap_nodes = 2000;
  int grid = 21;
  std::string suite = "all";
  std::string check = "half-space";
  std::string output_path;
  std::string format = "csv";
  long long seed = 12345;
};

struct ParseOutcome {
  bool help = false;
  std::string help_text;
  RunConfig config;
};

// Throws UsageError on bad flags or out-of-range values.
ParseOutcome parse_args(const std::vector<std::string>& args);

// Exit status: 0 success, 2 numerical failure (error record still emitted),
// 3 verification suite reported a failing check.
int run(const RunConfig& config);

// Parse + run; returns 1 on usage errors.
int run_cli(int argc, const char* const* argv);

}  // namespace conex
