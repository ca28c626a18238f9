#include "conex/cli_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "conex/asymptotics.hpp"
#include "conex/cap_spectrum.hpp"
#include "conex/errors.hpp"
#include "conex/extension_spectrum.hpp"
#include "conex/frac_oracle.hpp"
#include "conex/mesh.hpp"
#include "conex/mu_zero.hpp"
#include "conex/special_functions.hpp"
#include "conex/verify.hpp"

namespace conex {

namespace {

std::string trim(const std::string& text) {
  std::size_t a = 0;
  std::size_t b = text.size();
  while (a < b && std::isspace(static_cast<unsigned char>(text[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(text[b - 1]))) --b;
  return text.substr(a, b - a);
}

double parse_real(const std::string& text, const std::string& what) {
  std::string t = trim(text);
  if (t.empty()) throw UsageError(what + ": empty number");
  char* end = nullptr;
  double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size()) throw UsageError(what + ": cannot parse '" + text + "'");
  if (!std::isfinite(v)) throw UsageError(what + ": non-finite value '" + text + "'");
  return v;
}

long parse_int(const std::string& text, const std::string& what) {
  std::string t = trim(text);
  if (t.empty()) throw UsageError(what + ": empty number");
  char* end = nullptr;
  long v = std::strtol(t.c_str(), &end, 10);
  if (end != t.c_str() + t.size()) throw UsageError(what + ": cannot parse '" + text + "'");
  return v;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += '"';
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    unsigned char u = static_cast<unsigned char>(ch);
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (u < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", u);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
  return out;
}

std::string json_value(const FieldValue& v) {
  if (std::holds_alternative<std::monostate>(v)) return "null";
  if (const double* d = std::get_if<double>(&v)) {
    if (!std::isfinite(*d)) return "null";
    return format_real(*d);
  }
  if (const long long* i = std::get_if<long long>(&v)) return std::to_string(*i);
  if (const bool* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  return json_escape(std::get<std::string>(v));
}

}  // namespace

const FieldValue* ResultRecord::find(const std::string& key) const {
  for (const auto& kv : fields)
    if (kv.first == key) return &kv.second;
  return nullptr;
}

std::string format_field(const FieldValue& v) {
  if (std::holds_alternative<std::monostate>(v)) return "";
  if (const double* d = std::get_if<double>(&v)) return format_real(*d);
  if (const long long* i = std::get_if<long long>(&v)) return std::to_string(*i);
  if (const bool* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  return std::get<std::string>(v);
}

std::string to_csv(const std::vector<ResultRecord>& records) {
  if (records.empty()) return "";
  std::string out;
  const auto& header = records.front().fields;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(header[i].first);
  }
  out += '\n';
  for (const ResultRecord& rec : records) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out += ',';
      const FieldValue* v = rec.find(header[i].first);
      out += csv_escape(v ? format_field(*v) : "");
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const std::vector<ResultRecord>& records) {
  std::string out = "[";
  for (std::size_t k = 0; k < records.size(); ++k) {
    out += k ? ",\n " : "\n ";
    out += '{';
    const auto& fields = records[k].fields;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ", ";
      out += json_escape(fields[i].first);
      out += ": ";
      out += json_value(fields[i].second);
    }
    out += '}';
  }
  out += "\n]\n";
  return out;
}

std::vector<std::vector<std::string>> read_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  std::size_t i = 0;
  while (i < text.size()) {
    char ch = text[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          i += 2;
          continue;
        }
        in_quotes = false;
        ++i;
        continue;
      }
      field += ch;
      ++i;
      continue;
    }
    if (ch == '"') {
      in_quotes = true;
      ++i;
      continue;
    }
    if (ch == ',') {
      row.push_back(field);
      field.clear();
      ++i;
      continue;
    }
    if (ch == '\r') {
      ++i;
      continue;
    }
    if (ch == '\n') {
      row.push_back(field);
      field.clear();
      rows.push_back(row);
      row.clear();
      ++i;
      continue;
    }
    field += ch;
    ++i;
  }
  if (in_quotes) throw UsageError("csv: unterminated quoted field");
  if (!field.empty() || !row.empty()) {
    row.push_back(field);
    rows.push_back(row);
  }
  return rows;
}

double parse_angle(const std::string& text) {
  std::string t = trim(text);
  if (t.empty()) throw UsageError("angle: empty value");
  std::size_t pos = t.find("pi");
  if (pos == std::string::npos) return parse_real(t, "angle");
  double mult = 1.0;
  if (pos > 0) mult = parse_real(t.substr(0, pos), "angle multiplier");
  double div = 1.0;
  std::string rest = t.substr(pos + 2);
  if (!rest.empty()) {
    if (rest[0] != '/') throw UsageError("angle: cannot parse '" + text + "'");
    div = parse_real(rest.substr(1), "angle divisor");
    if (div == 0.0) throw UsageError("angle: zero divisor in '" + text + "'");
  }
  return mult * kPi / div;
}

std::pair<int, int> parse_mesh(const std::string& text) {
  std::string t = trim(text);
  std::size_t pos = t.find('x');
  if (pos == std::string::npos)
    throw UsageError("mesh: expected PHIxPSI, e.g. 256x128, got '" + text + "'");
  long a = parse_int(t.substr(0, pos), "mesh phi cells");
  long b = parse_int(t.substr(pos + 1), "mesh psi cells");
  if (a < 1 || b < 1) throw UsageError("mesh: cell counts must be positive");
  return {static_cast<int>(a), static_cast<int>(b)};
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::string t = trim(text);
  if (t.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = t.find(',', start);
    std::string item = comma == std::string::npos ? t.substr(start) : t.substr(start, comma - start);
    out.push_back(parse_real(item, "s value"));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

ParseOutcome parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Characteristic exponents of spherical-cap cones"};
  app.name("cone-exponents");
  app.require_subcommand(1);

  struct Raw {
    int dim = 2;
    std::string theta = "pi/4";
    std::string s = "0.5";
    std::string mesh = "128x64";
    int nodes = 2000;
    int grid = 21;
    std::string suite = "all";
    std::string check = "half-space";
    std::string out;
    std::string format = "csv";
    long long seed = 12345;
    std::string config;
  };
  std::map<std::string, Raw> raw;

  auto add_common = [](CLI::App* sub, Raw& r) {
    sub->add_option("--out", r.out, "output file (default: stdout)");
    sub->add_option("--format", r.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", r.seed, "seed recorded in the output");
    sub->add_option("--config", r.config, "key=value option file; flags override it");
  };

  {
    Raw& r = raw["gamma"];
    CLI::App* sub = app.add_subcommand("gamma", "classical homogeneity exponent of a cap cone");
    sub->add_option("--dim", r.dim, "ambient dimension n");
    sub->add_option("--theta", r.theta, "aperture, e.g. pi/4 or 0.7854");
    sub->add_option("--nodes", r.nodes, "meridian mesh nodes");
    add_common(sub, r);
  }
  {
    Raw& r = raw["frac-gamma"];
    CLI::App* sub = app.add_subcommand("frac-gamma", "fractional exponent via the extension eigenvalue");
    sub->add_option("--dim", r.dim, "ambient dimension n");
    sub->add_option("--theta", r.theta, "aperture, e.g. pi/4");
    sub->add_option("--s", r.s, "fractional order in (0,1)");
    sub->add_option("--mesh", r.mesh, "extension mesh PHIxPSI");
    add_common(sub, r);
  }
  {
    Raw& r = raw["mu0"];
    r.theta = "pi/8";
    CLI::App* sub = app.add_subcommand("mu0", "sharp barrier constant of a narrow cap cone");
    sub->add_option("--dim", r.dim, "ambient dimension n");
    sub->add_option("--theta", r.theta, "aperture, e.g. pi/8");
    sub->add_option("--nodes", r.nodes, "meridian mesh nodes");
    add_common(sub, r);
  }
  {
    Raw& r = raw["acf"];
    r.mesh = "96x48";
    r.nodes = 800;
    CLI::App* sub = app.add_subcommand("acf", "pair-mean exponent curve over the aperture grid");
    sub->add_option("--dim", r.dim, "ambient dimension n");
    sub->add_option("--s", r.s, "fractional order in (0,1]; s=1 uses the classical solver");
    sub->add_option("--grid", r.grid, "aperture grid size (odd, >= 9)");
    sub->add_option("--mesh", r.mesh, "extension mesh PHIxPSI");
    sub->add_option("--nodes", r.nodes, "meridian nodes for s=1");
    add_common(sub, r);
  }
  {
    Raw& r = raw["sweep"];
    r.theta = "pi/2";
    r.s = "0.9,0.95,0.99,0.999";
    r.nodes = 800;
    CLI::App* sub = app.add_subcommand("sweep", "exponent table over increasing s with limit fits");
    sub->add_option("--dim", r.dim, "ambient dimension n");
    sub->add_option("--theta", r.theta, "aperture, e.g. pi/8");
    sub->add_option("--s", r.s, "comma-separated s list, increasing, each <= 0.999");
    sub->add_option("--mesh", r.mesh, "extension mesh PHIxPSI");
    sub->add_option("--nodes", r.nodes, "meridian nodes for the barrier solve");
    add_common(sub, r);
  }
  {
    Raw& r = raw["oracle"];
    r.theta = "pi/2";
    r.s = "0.7";
    r.mesh = "96x48";
    r.nodes = 600;
    CLI::App* sub = app.add_subcommand("oracle", "singular-integral residual and barrier sign checks");
    sub->add_option("--dim", r.dim, "ambient dimension n");
    sub->add_option("--theta", r.theta, "aperture (extension and barrier checks)");
    sub->add_option("--s", r.s, "fractional order in (0,1)");
    sub->add_option("--check", r.check, "half-space, extension, or barrier")
        ->check(CLI::IsMember({"half-space", "extension", "barrier"}));
    sub->add_option("--mesh", r.mesh, "extension mesh PHIxPSI");
    sub->add_option("--nodes", r.nodes, "meridian nodes for the barrier solve");
    add_common(sub, r);
  }
  {
    Raw& r = raw["verify"];
    std::vector<std::string> suites = suite_names();
    suites.insert(suites.begin(), "all");
    CLI::App* sub = app.add_subcommand("verify", "run a verification suite");
    sub->add_option("--suite", r.suite, "suite name")->check(CLI::IsMember(suites));
    add_common(sub, r);
  }

  std::vector<const char*> argv;
  argv.push_back("cone-exponents");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    ParseOutcome out;
    out.help = true;
    auto subs = app.get_subcommands();
    out.help_text = subs.empty() ? app.help() : subs.front()->help();
    return out;
  } catch (const CLI::CallForAllHelp&) {
    ParseOutcome out;
    out.help = true;
    out.help_text = app.help("", CLI::AppFormatMode::All);
    return out;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  auto subs = app.get_subcommands();
  if (subs.empty()) throw UsageError("a subcommand is required");
  CLI::App* parsed_sub = subs.front();
  const std::string cmd = parsed_sub->get_name();
  Raw& r = raw.at(cmd);

  if (!r.config.empty()) {
    std::ifstream fs(r.config);
    if (!fs) throw UsageError("config: cannot read '" + r.config + "'");
    auto apply = [&](const std::string& key, const std::string& value) {
      const CLI::Option* opt = parsed_sub->get_option_no_throw("--" + key);
      if (opt == nullptr)
        throw UsageError("config: option --" + key + " does not apply to '" + cmd + "'");
      if (opt->count() > 0) return;
      if (key == "dim")
        r.dim = static_cast<int>(parse_int(value, "config dim"));
      else if (key == "theta")
        r.theta = value;
      else if (key == "s")
        r.s = value;
      else if (key == "mesh")
        r.mesh = value;
      else if (key == "nodes")
        r.nodes = static_cast<int>(parse_int(value, "config nodes"));
      else if (key == "grid")
        r.grid = static_cast<int>(parse_int(value, "config grid"));
      else if (key == "suite")
        r.suite = value;
      else if (key == "check")
        r.check = value;
      else if (key == "out")
        r.out = value;
      else if (key == "format")
        r.format = value;
      else if (key == "seed")
        r.seed = parse_int(value, "config seed");
      else
        throw UsageError("config: unknown key '" + key + "'");
    };
    std::string line;
    while (std::getline(fs, line)) {
      std::string t = trim(line);
      if (t.empty() || t[0] == '#' || t[0] == ';') continue;
      std::size_t eq = t.find('=');
      if (eq == std::string::npos)
        throw UsageError("config: expected key=value, got '" + t + "'");
      std::string value = trim(t.substr(eq + 1));
      if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
        value = value.substr(1, value.size() - 2);
      apply(trim(t.substr(0, eq)), value);
    }
  }

  ParseOutcome out;
  RunConfig& c = out.config;
  c.command = cmd;
  c.n = r.dim;
  if (c.n < 2 || c.n > 10) throw UsageError("--dim must lie in [2, 10]");
  c.theta = parse_angle(r.theta);
  const bool uses_theta = cmd == "gamma" || cmd == "frac-gamma" || cmd == "mu0" ||
                          cmd == "sweep" || cmd == "oracle";
  if (uses_theta && !(c.theta > 0.0 && c.theta < kPi))
    throw UsageError("--theta must lie strictly between 0 and pi");

  c.s_values = parse_real_list(r.s);
  if (cmd == "frac-gamma" || cmd == "oracle") {
    if (c.s_values.size() != 1) throw UsageError("--s takes a single value here");
    double s = c.s_values.front();
    if (!(s > 0.0 && s < 1.0)) throw UsageError("--s must lie in (0, 1)");
  } else if (cmd == "acf") {
    if (c.s_values.size() != 1) throw UsageError("--s takes a single value here");
    double s = c.s_values.front();
    if (!(s > 0.0 && s <= 1.0)) throw UsageError("--s must lie in (0, 1]");
  } else if (cmd == "sweep") {
    if (c.s_values.empty()) throw UsageError("--s needs at least one value");
    for (double s : c.s_values)
      if (!(s > 0.0 && s <= 0.999 + 1e-12))
        throw UsageError("sweep --s values must lie in (0, 0.999]");
    for (std::size_t i = 1; i < c.s_values.size(); ++i)
      if (!(c.s_values[i] > c.s_values[i - 1]))
        throw UsageError("sweep --s values must be strictly increasing");
  }

  auto mesh = parse_mesh(r.mesh);
  c.mesh_phi = mesh.first;
  c.mesh_psi = mesh.second;
  if (c.mesh_phi < 16 || c.mesh_psi < 8)
    throw UsageError("--mesh needs at least 16x8 cells");
  c.cap_nodes = r.nodes;
  if (c.cap_nodes < 32) throw UsageError("--nodes must be at least 32");
  c.grid = r.grid;
  if (cmd == "acf" && (c.grid < 9 || c.grid % 2 == 0))
    throw UsageError("--grid must be odd and at least 9");
  c.suite = r.suite;
  c.check = r.check;
  if (cmd == "oracle" && c.check != "half-space" && c.check != "extension" &&
      c.check != "barrier")
    throw UsageError("--check must be half-space, extension, or barrier");
  if (cmd == "verify") {
    std::vector<std::string> names = suite_names();
    names.insert(names.begin(), "all");
    if (std::find(names.begin(), names.end(), c.suite) == names.end())
      throw UsageError("--suite: unknown suite '" + c.suite + "'");
  }
  c.output_path = r.out;
  c.format = r.format;
  if (c.format != "csv" && c.format != "json")
    throw UsageError("--format must be csv or json");
  c.seed = r.seed;
  return out;
}

namespace {

void finish(ResultRecord& rec, const RunConfig& c) {
  rec.add("code_version", kCodeVersion);
  rec.add("seed", c.seed);
}

std::vector<ResultRecord> run_gamma(const RunConfig& c) {
  CapCone cone(c.n, c.theta);
  Mesh1D mesh = Mesh1D::uniform(c.theta, c.cap_nodes);
  CapEigenResult res = classical_cap_eigenvalue(cone, mesh);
  ResultRecord rec;
  rec.add("n", c.n);
  rec.add("theta", c.theta);
  rec.add("theta_over_pi", c.theta / kPi);
  rec.add("lambda1", res.lambda1);
  rec.add("gamma", res.gamma);
  rec.add("est_error", res.est_error);
  rec.add("mesh_nodes", c.cap_nodes);
  finish(rec, c);
  return {rec};
}

std::vector<ResultRecord> run_frac_gamma(const RunConfig& c) {
  CapCone cone(c.n, c.theta);
  HalfSphereMesh mesh = HalfSphereMesh::make(cone, c.mesh_phi, c.mesh_psi);
  ExtensionEigenResult res = fractional_cap_eigenvalue(cone, c.s_values.front(), mesh);
  ResultRecord rec;
  rec.add("n", c.n);
  rec.add("s", c.s_values.front());
  rec.add("theta", c.theta);
  rec.add("theta_over_pi", c.theta / kPi);
  rec.add("lambda1s", res.lambda1s);
  rec.add("gamma_s", res.gamma_s);
  rec.add("est_error", res.est_error);
  rec.add("iterations", static_cast<long long>(res.iterations));
  rec.add("mesh_phi", c.mesh_phi);
  rec.add("mesh_psi", c.mesh_psi);
  finish(rec, c);
  return {rec};
}

std::vector<ResultRecord> run_mu0(const RunConfig& c) {
  CapCone cone(c.n, c.theta);
  Mesh1D mesh = Mesh1D::uniform(c.theta, c.cap_nodes);
  MuZeroResult res = mu_zero_cap(cone, mesh);
  ResultRecord rec;
  rec.add("n", c.n);
  rec.add("theta", c.theta);
  rec.add("theta_over_pi", c.theta / kPi);
  rec.add("mu0", res.mu0);
  rec.add("lambda1", res.lambda1);
  rec.add("est_error", res.est_error);
  rec.add("mesh_nodes", c.cap_nodes);
  finish(rec, c);
  return {rec};
}

std::vector<ResultRecord> run_acf(const RunConfig& c) {
  AcfParams params;
  params.grid_size = c.grid;
  params.phi_cells = c.mesh_phi;
  params.psi_cells = c.mesh_psi;
  params.cap_nodes = c.cap_nodes;
  AcfCurve curve = acf_curve(c.n, c.s_values.front(), params);
  std::vector<ResultRecord> out;
  for (std::size_t k = 0; k < curve.theta_grid.size(); ++k) {
    ResultRecord rec;
    rec.add("n", c.n);
    rec.add("s", curve.s);
    rec.add("theta", curve.theta_grid[k]);
    rec.add("theta_over_pi", curve.theta_grid[k] / kPi);
    rec.add("gamma_s", curve.gamma_s[k]);
    rec.add("pair_mean", curve.pair_mean[k]);
    rec.add("nu_acf", curve.nu_acf);
    rec.add("argmin_theta", curve.argmin_theta);
    rec.add("argmin_over_pi", curve.argmin_theta / kPi);
    rec.add("grid", c.grid);
    rec.add("mesh_phi", c.mesh_phi);
    rec.add("mesh_psi", c.mesh_psi);
    finish(rec, c);
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<ResultRecord> run_sweep(const RunConfig& c) {
  CapCone cone(c.n, c.theta);
  SweepParams params;
  params.phi_cells = c.mesh_phi;
  params.psi_cells = c.mesh_psi;
  params.mu_nodes = c.cap_nodes;
  SweepTable table = limit_sweep(cone, c.s_values, params);

  CapEigenResult cap = classical_cap_eigenvalue(cone, Mesh1D::uniform(c.theta, 2000));
  std::optional<MuZeroResult> mu;
  if (cap.gamma > 2.0 + 1e-9) {
    try {
      mu = mu_zero_cap(cone, Mesh1D::uniform(c.theta, c.cap_nodes));
    } catch (const AdmissibilityError&) {
    }
  }
  const std::size_t nrows = table.rows.size();
  const bool can_estimate = nrows >= 3 && table.rows[nrows - 3].s >= 0.9 - 1e-12;
  std::optional<LimitEstimate> est;
  if (can_estimate) est = limit_estimates(table, cap, mu ? &*mu : nullptr);

  std::vector<ResultRecord> out;
  for (const SweepRow& row : table.rows) {
    ResultRecord rec;
    rec.add("n", c.n);
    rec.add("s", row.s);
    rec.add("theta", c.theta);
    rec.add("theta_over_pi", c.theta / kPi);
    rec.add("lambda1s", row.lambda1s);
    rec.add("gamma_s", row.gamma_s);
    rec.add("Cns", row.cns);
    rec.add("ratio", row.ratio);
    if (row.has_gamma_star) rec.add("gamma_star", row.gamma_star);
    else rec.add_empty("gamma_star");
    rec.add("est_error", row.est_error);
    if (est) {
      rec.add("gamma_bar_est", est->gamma_bar_est);
      rec.add("mu_est", est->mu_est);
      rec.add("classification",
              est->classification == ConeClass::narrow ? "narrow" : "wide");
      rec.add("predicted_gamma_bar", est->predicted_gamma_bar);
      rec.add("predicted_mu", est->predicted_mu);
    } else {
      rec.add_empty("gamma_bar_est");
      rec.add_empty("mu_est");
      rec.add_empty("classification");
      rec.add_empty("predicted_gamma_bar");
      rec.add_empty("predicted_mu");
    }
    rec.add("mesh_phi", c.mesh_phi);
    rec.add("mesh_psi", c.mesh_psi);
    finish(rec, c);
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<ResultRecord> run_oracle(const RunConfig& c) {
  const double s = c.s_values.front();
  ResultRecord rec;
  if (c.check == "half-space") {
    HomogeneousProfile p = half_space_profile(c.n, s);
    std::vector<PolarPoint> pts = {{1.0, 0.0},
                                   {1.0, 0.12 * kPi},
                                   {1.0, 0.25 * kPi},
                                   {0.8, 0.35 * kPi},
                                   {1.25, 0.45 * kPi}};
    double residual = sharmonicity_residual(p, pts);
    rec.add("check", c.check);
    rec.add("n", c.n);
    rec.add("s", s);
    rec.add("theta", 0.5 * kPi);
    rec.add("theta_over_pi", 0.5);
    rec.add("gamma", p.gamma);
    rec.add("residual", residual);
    rec.add("points", pts.size());
  } else if (c.check == "extension") {
    CapCone cone(c.n, c.theta);
    HalfSphereMesh mesh = HalfSphereMesh::make(cone, c.mesh_phi, c.mesh_psi);
    ExtensionEigenResult sol = fractional_cap_eigenvalue(cone, s, mesh);
    HomogeneousProfile p = profile_from_extension(cone, sol);
    auto clamp_phi = [&](double f) { return std::min(f * c.theta, c.theta - 0.011); };
    std::vector<PolarPoint> pts = {{1.0, clamp_phi(0.05)},
                                   {0.8, clamp_phi(0.35)},
                                   {1.25, clamp_phi(0.7)}};
    double residual = sharmonicity_residual(p, pts);
    rec.add("check", c.check);
    rec.add("n", c.n);
    rec.add("s", s);
    rec.add("theta", c.theta);
    rec.add("theta_over_pi", c.theta / kPi);
    rec.add("gamma", p.gamma);
    rec.add("residual", residual);
    rec.add("points", pts.size());
    rec.add("mesh_phi", c.mesh_phi);
    rec.add("mesh_psi", c.mesh_psi);
  } else {
    CapCone cone(c.n, c.theta);
    MuZeroResult mu = mu_zero_cap(cone, Mesh1D::uniform(c.theta, c.cap_nodes));
    auto clamp_phi = [&](double f) { return std::min(f * c.theta, c.theta - 0.011); };
    std::vector<PolarPoint> pts = {{1.0, 0.0},
                                   {1.0, clamp_phi(0.25)},
                                   {1.0, clamp_phi(0.5)},
                                   {1.0, clamp_phi(0.75)},
                                   {1.0, clamp_phi(0.95)}};
    BarrierReport rep = barrier_sign_check(cone, s, mu, pts);
    rec.add("check", c.check);
    rec.add("n", c.n);
    rec.add("s", s);
    rec.add("theta", c.theta);
    rec.add("theta_over_pi", c.theta / kPi);
    rec.add("gamma_star", rep.gamma_star);
    rec.add("max_value", rep.max_value);
    rec.add("max_error_bound", rep.max_error_bound);
    rec.add("tol", rep.tol);
    rec.add("nonpositive", rep.nonpositive);
    rec.add("points", pts.size());
    rec.add("mesh_nodes", c.cap_nodes);
  }
  finish(rec, c);
  return {rec};
}

std::vector<ResultRecord> run_verify(const RunConfig& c, int& status) {
  std::vector<CheckResult> results = run_suite(c.suite);
  std::vector<ResultRecord> out;
  bool all_passed = true;
  for (const CheckResult& res : results) {
    all_passed = all_passed && res.passed;
    ResultRecord rec;
    rec.add("suite", c.suite);
    rec.add("check", res.name);
    rec.add("passed", res.passed);
    rec.add("seconds", res.seconds);
    rec.add("detail", res.detail);
    finish(rec, c);
    out.push_back(std::move(rec));
  }
  status = all_passed ? 0 : 3;
  return out;
}

void write_output(const std::vector<ResultRecord>& records, const RunConfig& c) {
  std::string text = c.format == "json" ? to_json(records) : to_csv(records);
  if (c.output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream fs(c.output_path, std::ios::binary);
  if (!fs) throw UsageError("cannot open output file: " + c.output_path);
  fs << text;
}

}  // namespace

int run(const RunConfig& c) {
  int status = 0;
  std::vector<ResultRecord> records;
  try {
    if (c.command == "gamma") records = run_gamma(c);
    else if (c.command == "frac-gamma") records = run_frac_gamma(c);
    else if (c.command == "mu0") records = run_mu0(c);
    else if (c.command == "acf") records = run_acf(c);
    else if (c.command == "sweep") records = run_sweep(c);
    else if (c.command == "oracle") records = run_oracle(c);
    else if (c.command == "verify") records = run_verify(c, status);
    else throw UsageError("unknown command: " + c.command);
  } catch (const UsageError&) {
    throw;
  } catch (const NumericalError& e) {
    ResultRecord rec;
    rec.add("error", std::string(e.what()));
    rec.add("residual", e.residual());
    finish(rec, c);
    write_output({rec}, c);
    return 2;
  } catch (const std::exception& e) {
    ResultRecord rec;
    rec.add("error", std::string(e.what()));
    rec.add_empty("residual");
    finish(rec, c);
    write_output({rec}, c);
    return 2;
  }
  write_output(records, c);
  return status;
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  try {
    ParseOutcome out = parse_args(args);
    if (out.help) {
      std::cout << out.help_text;
      return 0;
    }
    return run(out.config);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace conex
