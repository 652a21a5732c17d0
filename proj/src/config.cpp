#include "stochfv/config.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "stochfv/errors.hpp"

namespace stochfv {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::string fmt_real(double v) { return fmt::format("{:.17g}", v); }

double parse_real(const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, out);
  if (r.ec != std::errc() || r.ptr != end) throw ConfigError("expected a number, got '" + v + "'");
  if (!std::isfinite(out)) throw ConfigError("expected a finite number, got '" + v + "'");
  return out;
}

std::uint64_t parse_u64(const std::string& v) {
  std::uint64_t out = 0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, out);
  if (r.ec != std::errc() || r.ptr != end) throw ConfigError("expected a non-negative integer, got '" + v + "'");
  return out;
}

std::size_t parse_count(const std::string& v) {
  const std::uint64_t n = parse_u64(v);
  if (n < 1) throw ConfigError("expected a positive integer, got '" + v + "'");
  return static_cast<std::size_t>(n);
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("expected true or false, got '" + v + "'");
}

double positive(double v, const char* what) {
  if (!(v > 0.0)) throw ConfigError(std::string(what) + " must be positive");
  return v;
}

void one_of(const std::string& v, std::initializer_list<const char*> allowed, const char* what) {
  for (const char* a : allowed) {
    if (v == a) return;
  }
  std::string list;
  for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
  throw ConfigError(fmt::format("{} must be one of {}; got '{}'", what, list, v));
}

void check_field_spec(const std::string& v, bool allow_mean) {
  if (v.rfind("const:", 0) == 0) {
    parse_real(v.substr(6));
    return;
  }
  if (v == "induction_mu_u" || v == "induction_mu_v") return;
  if (allow_mean && v == "mean") return;
  throw ConfigError("expected const:<v>, induction_mu_u, induction_mu_v" + std::string(allow_mean ? " or mean" : "") +
                    "; got '" + v + "'");
}

void check_scalar_initial(const std::string& v) {
  if (v == "sine") return;
  if (v.rfind("indicator:", 0) == 0) {
    const std::string rest = v.substr(10);
    const auto comma = rest.find(',');
    if (comma != std::string::npos) {
      const double lo = parse_real(trim(rest.substr(0, comma)));
      const double hi = parse_real(trim(rest.substr(comma + 1)));
      if (lo < hi) return;
    }
  }
  throw ConfigError("scalar.initial must be indicator:<lo>,<hi> with lo < hi, or sine; got '" + v + "'");
}

std::vector<std::size_t> parse_resolutions(const std::string& v) {
  std::vector<std::size_t> out;
  if (trim(v).empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_count(trim(item)));
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] <= out[i - 1]) throw ConfigError("converge.resolutions must be strictly ascending");
  }
  return out;
}

std::string join_resolutions(const std::vector<std::size_t>& r) {
  std::string s;
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
  return s;
}

struct KeyDef {
  std::string name;
  std::function<void(SimConfig&, const std::string&)> set;
  std::function<std::string(const SimConfig&)> get;  // empty for write-only aliases
};

std::vector<KeyDef> make_registry() {
  std::vector<KeyDef> r;
  auto add = [&](std::string name, auto set, auto get) { r.push_back({std::move(name), set, get}); };
  auto alias = [&](std::string name, auto set) { r.push_back({std::move(name), set, nullptr}); };

  add("scenario", [](SimConfig& c, const std::string& v) { c.scenario = v; },
      [](const SimConfig& c) { return c.scenario; });
  add("model",
      [](SimConfig& c, const std::string& v) {
        one_of(v, {"scalar_ou", "acoustics2d", "induction2d"}, "model");
        c.model = v;
      },
      [](const SimConfig& c) { return c.model; });
  alias("mesh.n", [](SimConfig& c, const std::string& v) { c.nx = c.ny = parse_count(v); });
  add("mesh.nx", [](SimConfig& c, const std::string& v) { c.nx = parse_count(v); },
      [](const SimConfig& c) { return std::to_string(c.nx); });
  add("mesh.ny", [](SimConfig& c, const std::string& v) { c.ny = parse_count(v); },
      [](const SimConfig& c) { return std::to_string(c.ny); });
  add("domain.xmin", [](SimConfig& c, const std::string& v) { c.xmin = parse_real(v); },
      [](const SimConfig& c) { return fmt_real(c.xmin); });
  add("domain.xmax", [](SimConfig& c, const std::string& v) { c.xmax = parse_real(v); },
      [](const SimConfig& c) { return fmt_real(c.xmax); });
  add("domain.ymin", [](SimConfig& c, const std::string& v) { c.ymin = parse_real(v); },
      [](const SimConfig& c) { return fmt_real(c.ymin); });
  add("domain.ymax", [](SimConfig& c, const std::string& v) { c.ymax = parse_real(v); },
      [](const SimConfig& c) { return fmt_real(c.ymax); });
  add("fv.order",
      [](SimConfig& c, const std::string& v) {
        const auto o = parse_u64(v);
        if (o != 1 && o != 2) throw ConfigError("fv.order must be 1 or 2");
        c.order = static_cast<int>(o);
      },
      [](const SimConfig& c) { return std::to_string(c.order); });
  add("fv.cfl",
      [](SimConfig& c, const std::string& v) {
        const double x = parse_real(v);
        if (!(x > 0.0) || x > 0.5) throw ConfigError("fv.cfl must lie in (0, 0.5]");
        c.cfl = x;
      },
      [](const SimConfig& c) { return fmt_real(c.cfl); });
  add("fv.t_end",
      [](SimConfig& c, const std::string& v) {
        const double x = parse_real(v);
        if (x < 0.0) throw ConfigError("fv.t_end must be non-negative");
        c.t_end = x;
      },
      [](const SimConfig& c) { return fmt_real(c.t_end); });
  add("sde.h_factor", [](SimConfig& c, const std::string& v) { c.h_factor = positive(parse_real(v), "sde.h_factor"); },
      [](const SimConfig& c) { return fmt_real(c.h_factor); });
  add("sde.h_dx_ratio",
      [](SimConfig& c, const std::string& v) {
        if (v == "none") {
          c.h_dx_ratio.reset();
        } else {
          c.h_dx_ratio = positive(parse_real(v), "sde.h_dx_ratio");
        }
      },
      [](const SimConfig& c) { return c.h_dx_ratio ? fmt_real(*c.h_dx_ratio) : std::string("none"); });
  add("ou.integrator",
      [](SimConfig& c, const std::string& v) {
        one_of(v, {"auto", "milstein", "implicit", "weak2", "exact"}, "ou.integrator");
        c.integrator = v;
      },
      [](const SimConfig& c) { return c.integrator; });
  for (const std::string& name : coefficient_names()) {
    add("ou." + name + ".theta",
        [name](SimConfig& c, const std::string& v) { c.ou[name].theta = positive(parse_real(v), "OU theta"); },
        [name](const SimConfig& c) { return fmt_real(c.ou.at(name).theta); });
    add("ou." + name + ".sigma",
        [name](SimConfig& c, const std::string& v) {
          const double x = parse_real(v);
          if (x < 0.0) throw ConfigError("OU sigma must be non-negative");
          c.ou[name].sigma = x;
        },
        [name](const SimConfig& c) { return fmt_real(c.ou.at(name).sigma); });
    add("ou." + name + ".mu",
        [name](SimConfig& c, const std::string& v) {
          check_field_spec(v, false);
          c.ou[name].mu = v;
        },
        [name](const SimConfig& c) { return c.ou.at(name).mu; });
    add("ou." + name + ".z0",
        [name](SimConfig& c, const std::string& v) {
          check_field_spec(v, true);
          c.ou[name].z0 = v;
        },
        [name](const SimConfig& c) { return c.ou.at(name).z0; });
  }
  add("grf.kind",
      [](SimConfig& c, const std::string& v) {
        one_of(v, {"rational", "exponential", "table"}, "grf.kind");
        c.grf_kind = v;
      },
      [](const SimConfig& c) { return c.grf_kind; });
  add("grf.q",
      [](SimConfig& c, const std::string& v) {
        c.grf_q = parse_real(v);
        if (c.grf_q < 1.0) throw ConfigError("grf.q must be >= 1");
      },
      [](const SimConfig& c) { return fmt_real(c.grf_q); });
  add("grf.l",
      [](SimConfig& c, const std::string& v) {
        c.grf_l = parse_real(v);
        if (c.grf_l < 1.0) throw ConfigError("grf.l must be >= 1");
      },
      [](const SimConfig& c) { return fmt_real(c.grf_l); });
  add("grf.corr_length",
      [](SimConfig& c, const std::string& v) { c.grf_corr_length = positive(parse_real(v), "grf.corr_length"); },
      [](const SimConfig& c) { return fmt_real(c.grf_corr_length); });
  add("grf.table_path", [](SimConfig& c, const std::string& v) { c.grf_table = v; },
      [](const SimConfig& c) { return c.grf_table; });
  add("acoustics.rho0", [](SimConfig& c, const std::string& v) { c.rho0 = positive(parse_real(v), "acoustics.rho0"); },
      [](const SimConfig& c) { return fmt_real(c.rho0); });
  add("acoustics.K0", [](SimConfig& c, const std::string& v) { c.K0 = positive(parse_real(v), "acoustics.K0"); },
      [](const SimConfig& c) { return fmt_real(c.K0); });
  add("acoustics.boundary",
      [](SimConfig& c, const std::string& v) {
        one_of(v, {"periodic", "source"}, "acoustics.boundary");
        c.acoustics_boundary = v;
      },
      [](const SimConfig& c) { return c.acoustics_boundary; });
  add("scalar.initial",
      [](SimConfig& c, const std::string& v) {
        check_scalar_initial(v);
        c.scalar_initial = v;
      },
      [](const SimConfig& c) { return c.scalar_initial; });
  add("induction.initial",
      [](SimConfig& c, const std::string& v) {
        one_of(v, {"gradient", "curl"}, "induction.initial");
        c.induction_initial = v;
      },
      [](const SimConfig& c) { return c.induction_initial; });
  // only one induction discretisation exists; the key names it
  add("induction.scheme",
      [](SimConfig& c, const std::string& v) {
        one_of(v, {"symmetric-upwind"}, "induction.scheme");
        c.induction_scheme = v;
      },
      [](const SimConfig& c) { return c.induction_scheme; });
  add("mc.samples",
      [](SimConfig& c, const std::string& v) {
        SampleRule rule = SampleRule::parse(v);
        if (rule.kind == SampleRule::Kind::Explicit && rule.samples < 2) {
          throw ConfigError("mc.samples must be at least 2");
        }
        c.samples = rule;
      },
      [](const SimConfig& c) { return c.samples.to_string(); });
  add("mc.seed", [](SimConfig& c, const std::string& v) { c.seed = parse_u64(v); },
      [](const SimConfig& c) { return std::to_string(c.seed); });
  add("mc.threads",
      [](SimConfig& c, const std::string& v) {
        if (v != "auto") parse_count(v);
        c.threads = v;
      },
      [](const SimConfig& c) { return c.threads; });
  add("mc.skip_failed", [](SimConfig& c, const std::string& v) { c.skip_failed = parse_bool(v); },
      [](const SimConfig& c) { return std::string(c.skip_failed ? "true" : "false"); });
  add("mc.progress", [](SimConfig& c, const std::string& v) { c.progress = parse_bool(v); },
      [](const SimConfig& c) { return std::string(c.progress ? "true" : "false"); });
  add("output.dir", [](SimConfig& c, const std::string& v) { c.output_dir = v; },
      [](const SimConfig& c) { return c.output_dir; });
  add("output.formats",
      [](SimConfig& c, const std::string& v) {
        std::stringstream ss(v);
        std::string item;
        int n = 0;
        while (std::getline(ss, item, ',')) {
          one_of(trim(item), {"csv", "raw"}, "output format");
          ++n;
        }
        if (n == 0) throw ConfigError("output.formats must name at least one format");
        c.formats = v;
      },
      [](const SimConfig& c) { return c.formats; });
  add("converge.resolutions",
      [](SimConfig& c, const std::string& v) { c.converge_resolutions = parse_resolutions(v); },
      [](const SimConfig& c) { return join_resolutions(c.converge_resolutions); });
  add("converge.reference",
      [](SimConfig& c, const std::string& v) {
        one_of(v, {"oracle", "finest"}, "converge.reference");
        c.converge_reference = v;
      },
      [](const SimConfig& c) { return c.converge_reference; });
  return r;
}

const std::vector<KeyDef>& registry() {
  static const std::vector<KeyDef> r = make_registry();
  return r;
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::string nearest(const std::string& key, const std::vector<std::string>& candidates) {
  std::string best;
  std::size_t best_d = std::string::npos;
  for (const auto& c : candidates) {
    const std::size_t d = edit_distance(key, c);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

struct Entry {
  std::string key;
  std::string value;
  std::string where;
};

std::vector<Entry> split_lines(const std::string& text, const std::string& source) {
  std::vector<Entry> out;
  std::stringstream ss(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(ss, line)) {
    ++number;
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    const std::string where = fmt::format("{}:{}", source, number);
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    out.push_back({trim(body.substr(0, eq)), trim(body.substr(eq + 1)), where});
  }
  return out;
}

void apply(SimConfig& config, const Entry& e) {
  for (const KeyDef& def : registry()) {
    if (def.name != e.key) continue;
    try {
      def.set(config, e.value);
    } catch (const Error& err) {
      throw ConfigError(fmt::format("{}: invalid value for {}: {}", e.where, e.key, err.what()));
    }
    return;
  }
  throw ConfigError(fmt::format("{}: unknown key '{}' (did you mean '{}'?)", e.where, e.key, nearest(e.key, known_keys())));
}

SimConfig default_config() {
  SimConfig c;
  for (const auto& name : coefficient_names()) c.ou[name] = OuCoefficientConfig{};
  return c;
}

}  // namespace

const std::vector<std::string>& coefficient_names() {
  static const std::vector<std::string> names{"a", "u0", "v0", "u", "v"};
  return names;
}

std::string default_scenario_for(const std::string& model) {
  if (model == "scalar_ou") return "paper-4.1";
  if (model == "acoustics2d") return "paper-4.2";
  if (model == "induction2d") return "paper-4.3";
  return {};
}

std::vector<std::string> known_keys() {
  std::vector<std::string> keys;
  for (const auto& d : registry()) keys.push_back(d.name);
  return keys;
}

SimConfig parse_config_text(const std::string& text, const std::vector<std::string>& overrides,
                            const std::string& source) {
  std::vector<Entry> entries = split_lines(text, source);
  for (std::size_t n = 0; n < overrides.size(); ++n) {
    const auto eq = overrides[n].find('=');
    const std::string where = fmt::format("--set #{}", n + 1);
    if (eq == std::string::npos) throw ConfigError(where + ": expected key=value, got '" + overrides[n] + "'");
    entries.push_back({trim(overrides[n].substr(0, eq)), trim(overrides[n].substr(eq + 1)), where});
  }

  std::string scenario;
  std::string model;
  const Entry* scenario_entry = nullptr;
  for (const Entry& e : entries) {
    if (e.key == "scenario") {
      scenario = e.value;
      scenario_entry = &e;
    }
    if (e.key == "model") model = e.value;
  }
  if (scenario.empty() && !model.empty()) scenario = default_scenario_for(model);

  SimConfig config = default_config();
  if (!scenario.empty()) {
    const auto& presets = scenario_presets();
    const auto it = presets.find(scenario);
    if (it == presets.end()) {
      std::vector<std::string> names;
      for (const auto& [name, body] : presets) names.push_back(name);
      throw ConfigError(fmt::format("{}: unknown scenario '{}' (did you mean '{}'?)",
                                    scenario_entry ? scenario_entry->where : source, scenario,
                                    nearest(scenario, names)));
    }
    for (const Entry& e : split_lines(it->second, "preset " + scenario)) apply(config, e);
  }
  for (const Entry& e : entries) apply(config, e);
  validate(config);
  return config;
}

SimConfig parse_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open config file '" + path.string() + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config_text(ss.str(), overrides, path.string());
}

void validate(const SimConfig& c) {
  one_of(c.model, {"scalar_ou", "acoustics2d", "induction2d"}, "model");
  if (!(c.xmax > c.xmin)) throw ConfigError("domain.xmax must exceed domain.xmin");
  if (c.model != "scalar_ou" && !(c.ymax > c.ymin)) throw ConfigError("domain.ymax must exceed domain.ymin");
  if (c.order != 1 && c.order != 2) throw ConfigError("fv.order must be 1 or 2");
  if (!(c.cfl > 0.0) || c.cfl > 0.5) throw ConfigError("fv.cfl must lie in (0, 0.5]");
  if (c.grf_kind == "table" && c.grf_table.empty() && c.model != "scalar_ou") {
    throw ConfigError("grf.kind = table needs grf.table_path");
  }
  for (const auto& [name, oc] : c.ou) {
    if (!(oc.theta > 0.0)) throw ConfigError("ou." + name + ".theta must be positive");
    if (!(oc.sigma >= 0.0)) throw ConfigError("ou." + name + ".sigma must be non-negative");
  }
  if (c.converge_reference == "oracle" && c.model != "scalar_ou" && !c.converge_resolutions.empty()) {
    throw ConfigError("converge.reference = oracle is only available for the scalar model");
  }
}

std::string echo_config(const SimConfig& config) {
  std::string out;
  for (const KeyDef& def : registry()) {
    if (!def.get) continue;
    out += def.name + " = " + def.get(config) + "\n";
  }
  return out;
}

}  // namespace stochfv
