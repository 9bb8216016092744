#include "cnoma/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "cnoma/channel.hpp"

namespace cnoma {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

std::string where(const ConfigEntry& e) {
  return e.line > 0 ? "line " + std::to_string(e.line) : "command line";
}

double parse_double_token(const std::string& key, const std::string& token,
                          const ConfigEntry& e) {
  const std::string t = trim(token);
  double v = 0.0;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  const auto res = std::from_chars(begin, end, v, std::chars_format::general);
  if (res.ec != std::errc() || res.ptr != end || t.empty()) {
    throw ConfigError("key '" + key + "': invalid number '" + t + "' (" +
                      where(e) + ")");
  }
  return v;
}

long long parse_int_token(const std::string& key, const std::string& token,
                          const ConfigEntry& e) {
  const std::string t = trim(token);
  long long v = 0;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr != end || t.empty()) {
    throw ConfigError("key '" + key + "': invalid integer '" + t + "' (" +
                      where(e) + ")");
  }
  return v;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(value);
  while (std::getline(ss, cur, ',')) out.push_back(cur);
  if (!value.empty() && value.back() == ',') out.push_back("");
  return out;
}

const ConfigEntry* find_entry(const ConfigMap& map, const std::string& key) {
  const auto it = map.find(key);
  return it == map.end() ? nullptr : &it->second;
}

double get_double(const ConfigMap& map, const std::string& key, double dflt) {
  const ConfigEntry* e = find_entry(map, key);
  if (!e) return dflt;
  return parse_double_token(key, e->value, *e);
}

int get_int(const ConfigMap& map, const std::string& key, int dflt, int min_v,
            const char* what) {
  const ConfigEntry* e = find_entry(map, key);
  long long v = e ? parse_int_token(key, e->value, *e) : dflt;
  if (v < min_v) {
    throw ConfigError("key '" + key + "': " + what + " (got " +
                      std::to_string(v) + ")");
  }
  return static_cast<int>(v);
}

std::vector<double> get_double_list(const ConfigMap& map, const std::string& key) {
  const ConfigEntry* e = find_entry(map, key);
  if (!e) return {};
  std::vector<double> out;
  for (const std::string& tok : split_list(e->value))
    out.push_back(parse_double_token(key, tok, *e));
  return out;
}

std::string get_enum(const ConfigMap& map, const std::string& key,
                     const std::string& dflt,
                     const std::vector<std::string>& allowed) {
  const ConfigEntry* e = find_entry(map, key);
  const std::string v = e ? trim(e->value) : dflt;
  if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
    std::string opts;
    for (const auto& a : allowed) {
      if (!opts.empty()) opts += ", ";
      opts += a;
    }
    throw ConfigError("key '" + key + "': unknown value '" + v +
                      "' (expected one of: " + opts + ")");
  }
  return v;
}

void reject_unknown(const ConfigMap& map, const std::set<std::string>& allowed) {
  for (const auto& [key, entry] : map) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown key '" + key + "' (" + where(entry) + ")");
    }
  }
}

const std::set<std::string> kScenarioKeys = {
    "k",           "trials",        "mode",        "pairing",
    "relay_power", "lambda_s_db",   "lambda_w_db", "lambda_d_db",
    "lambda_si_db", "p_bs_dbm",     "p_d_max_dbm", "r_th_bpshz",
    "noise_floor_dbm"};

const std::vector<std::string> kSweepableKeys = {
    "p_bs_dbm",    "p_d_max_dbm", "lambda_s_db",
    "lambda_w_db", "lambda_d_db", "lambda_si_db"};

SweepAxis axis_of_key(const std::string& key) {
  if (key == "p_bs_dbm") return SweepAxis::PBs;
  if (key == "p_d_max_dbm") return SweepAxis::PdMax;
  if (key == "lambda_s_db") return SweepAxis::LambdaS;
  if (key == "lambda_w_db") return SweepAxis::LambdaW;
  if (key == "lambda_d_db") return SweepAxis::LambdaD;
  return SweepAxis::LambdaSi;
}

SolveMode parse_mode(const ConfigMap& map) {
  const std::string m =
      get_enum(map, "mode", "mode_select", {"hd", "fd", "mode_select", "noma"});
  if (m == "hd") return SolveMode::HD;
  if (m == "fd") return SolveMode::FD;
  if (m == "noma") return SolveMode::NOMA;
  return SolveMode::ModeSelect;
}

RelayPolicy parse_relay(const ConfigMap& map) {
  return get_enum(map, "relay_power", "adaptive", {"adaptive", "fixed"}) ==
                 "fixed"
             ? RelayPolicy::Fixed
             : RelayPolicy::Adaptive;
}

QosSpec parse_qos(const ConfigMap& map) {
  const double r_th = get_double(map, "r_th_bpshz", 1.0);
  if (!std::isfinite(r_th) || r_th < 0.0) {
    throw ConfigError("key 'r_th_bpshz': rate threshold must be finite and >= 0");
  }
  return QosSpec::from_rate(r_th);
}

Scenario scenario_impl(const ConfigMap& map, bool allow_axis) {
  const double noise = get_double(map, "noise_floor_dbm", 0.0);
  const auto dbm = [noise](double x) {
    return dbm_to_linear_normalized(x, noise);
  };

  // Locate the sweep axis: the unique sweepable key holding a comma list.
  std::string axis_key;
  for (const auto& key : kSweepableKeys) {
    const ConfigEntry* e = find_entry(map, key);
    if (!e || e->value.find(',') == std::string::npos) continue;
    if (!allow_axis) {
      throw ConfigError("key '" + key +
                        "': value lists are not accepted here (" + where(*e) +
                        ")");
    }
    if (!axis_key.empty()) {
      throw ConfigError("more than one swept key: '" + axis_key + "' and '" +
                        key + "' both hold lists");
    }
    axis_key = key;
  }

  Scenario sc;
  sc.k = get_int(map, "k", 1, 1, "must be >= 1");
  sc.trials = get_int(map, "trials", 10000, 1, "must be >= 1");
  sc.mode = parse_mode(map);
  sc.relay_power = parse_relay(map);
  sc.qos = parse_qos(map);
  const std::string pairing = get_enum(
      map, "pairing", "hungarian", {"hungarian", "baseline1", "baseline2", "random"});
  sc.pairing = pairing == "hungarian"    ? PairingPolicy::Hungarian
               : pairing == "baseline1"  ? PairingPolicy::Baseline1
               : pairing == "baseline2"  ? PairingPolicy::Baseline2
                                         : PairingPolicy::Random;

  const auto scalar = [&](const std::string& key, double dflt_raw) {
    if (key == axis_key) return dflt_raw;  // resolved per axis value instead
    const ConfigEntry* e = find_entry(map, key);
    if (!e) return dflt_raw;
    return parse_double_token(key, e->value, *e);
  };
  const double lambda_s_db = scalar("lambda_s_db", 10.0);
  const double lambda_w_db = scalar("lambda_w_db", 0.0);
  const double lambda_d_db = scalar("lambda_d_db", 6.0);
  const double lambda_si_db = scalar("lambda_si_db", 0.0);
  const double p_bs_dbm = scalar("p_bs_dbm", 30.0);
  const double p_d_max_dbm = scalar("p_d_max_dbm", 30.0);

  sc.stats.lambda_s = db_to_linear(lambda_s_db);
  sc.stats.lambda_w = db_to_linear(lambda_w_db);
  sc.stats.lambda_d = db_to_linear(lambda_d_db);
  sc.stats.lambda_si = db_to_linear(lambda_si_db);
  sc.p_bs = dbm(p_bs_dbm);
  sc.p_d_max = dbm(p_d_max_dbm);

  if (axis_key.empty()) {
    sc.axis = SweepAxis::PBs;
    sc.axis_display = {p_bs_dbm};
    sc.axis_values = {sc.p_bs};
  } else {
    sc.axis = axis_of_key(axis_key);
    sc.axis_display = get_double_list(map, axis_key);
    if (sc.axis_display.empty()) {
      throw ConfigError("key '" + axis_key + "': empty sweep list");
    }
    sc.axis_values.clear();
    const bool is_dbm = axis_key.size() >= 4 &&
                        axis_key.compare(axis_key.size() - 4, 4, "_dbm") == 0;
    for (double raw : sc.axis_display) {
      sc.axis_values.push_back(is_dbm ? dbm(raw) : db_to_linear(raw));
    }
  }
  return sc;
}

}  // namespace

ConfigMap parse_config_text(const std::string& text) {
  ConfigMap map;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected 'key = value', got '" + stripped + "'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (!valid_key(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": invalid key '" +
                        key + "' (use lowercase letters, digits, underscores)");
    }
    if (value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": key '" + key +
                        "' has an empty value");
    }
    const auto [it, inserted] = map.emplace(key, ConfigEntry{value, line_no});
    if (!inserted) {
      throw ConfigError("duplicate key '" + key + "' (lines " +
                        std::to_string(it->second.line) + " and " +
                        std::to_string(line_no) + ")");
    }
  }
  return map;
}

ConfigMap load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void apply_overrides(ConfigMap& map, const std::vector<std::string>& overrides) {
  for (const std::string& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("override '" + ov + "': expected key=value");
    }
    const std::string key = trim(ov.substr(0, eq));
    const std::string value = trim(ov.substr(eq + 1));
    if (!valid_key(key)) {
      throw ConfigError("override '" + ov + "': invalid key '" + key + "'");
    }
    if (value.empty()) {
      throw ConfigError("override '" + ov + "': empty value");
    }
    map[key] = ConfigEntry{value, 0};
  }
}

Scenario scenario_from_config(const ConfigMap& map) {
  reject_unknown(map, kScenarioKeys);
  return scenario_impl(map, /*allow_axis=*/true);
}

PairProblem pair_from_config(const ConfigMap& map) {
  static const std::set<std::string> allowed = {
      "gamma_m_db", "gamma_n_db", "gamma_d_db",  "gamma_si_db",
      "p_bs_dbm",   "p_d_max_dbm", "r_th_bpshz", "mode",
      "relay_power", "noise_floor_dbm"};
  reject_unknown(map, allowed);
  for (const char* req : {"gamma_m_db", "gamma_n_db"}) {
    if (!find_entry(map, req)) {
      throw ConfigError(std::string("missing required key '") + req + "'");
    }
  }
  const double noise = get_double(map, "noise_floor_dbm", 0.0);
  PairProblem p;
  const double gm = db_to_linear(get_double(map, "gamma_m_db", 0.0));
  const double gn = db_to_linear(get_double(map, "gamma_n_db", 0.0));
  const ConfigEntry* gd_e = find_entry(map, "gamma_d_db");
  const ConfigEntry* gs_e = find_entry(map, "gamma_si_db");
  const double gd = gd_e ? db_to_linear(parse_double_token("gamma_d_db", gd_e->value, *gd_e)) : 0.0;
  const double gs = gs_e ? db_to_linear(parse_double_token("gamma_si_db", gs_e->value, *gs_e)) : 0.0;
  p.ch = PairChannels(gm, gn, gd, gs);
  p.p_bs = dbm_to_linear_normalized(get_double(map, "p_bs_dbm", 30.0), noise);
  p.p_d_max = dbm_to_linear_normalized(get_double(map, "p_d_max_dbm", 30.0), noise);
  p.qos = parse_qos(map);
  p.mode = parse_mode(map);
  p.relay_power = parse_relay(map);
  return p;
}

NetworkProblem network_from_config(const ConfigMap& map) {
  std::set<std::string> allowed = kScenarioKeys;
  allowed.insert("user_gains_db");
  reject_unknown(map, allowed);
  NetworkProblem np;
  np.scenario = scenario_impl(map, /*allow_axis=*/false);
  for (double g_db : get_double_list(map, "user_gains_db")) {
    np.user_gains.push_back(db_to_linear(g_db));
  }
  return np;
}

VerifyRun verify_from_config(const ConfigMap& map) {
  static const std::set<std::string> allowed = {
      "instances",          "mode",          "tol",
      "boundary_tol",       "grid_alpha_points", "grid_pd_points",
      "grid_refine_rounds", "grid_refine_shrink"};
  reject_unknown(map, allowed);
  VerifyRun run;
  run.spec.instances = get_int(map, "instances", run.spec.instances, 1, "must be >= 1");
  run.spec.sum_tol = get_double(map, "tol", run.spec.sum_tol);
  run.spec.boundary_tol = get_double(map, "boundary_tol", run.spec.boundary_tol);
  run.spec.grid.alpha_points =
      get_int(map, "grid_alpha_points", run.spec.grid.alpha_points, 2, "must be >= 2");
  run.spec.grid.pd_points =
      get_int(map, "grid_pd_points", run.spec.grid.pd_points, 2, "must be >= 2");
  run.spec.grid.refine_rounds =
      get_int(map, "grid_refine_rounds", run.spec.grid.refine_rounds, 0, "must be >= 0");
  const double shrink =
      get_double(map, "grid_refine_shrink", run.spec.grid.refine_shrink);
  if (!(shrink > 0.0 && shrink < 1.0)) {
    throw ConfigError("key 'grid_refine_shrink': must lie in (0, 1)");
  }
  run.spec.grid.refine_shrink = shrink;
  const std::string m = get_enum(map, "mode", "both", {"hd", "fd", "both"});
  run.run_hd = (m != "fd");
  run.run_fd = (m != "hd");
  return run;
}

BenchRun bench_from_config(const ConfigMap& map) {
  std::set<std::string> allowed = kScenarioKeys;
  allowed.insert("bench_k");
  allowed.insert("bench_reps");
  reject_unknown(map, allowed);
  BenchRun run;
  run.scenario = scenario_impl(map, /*allow_axis=*/false);
  run.reps = get_int(map, "bench_reps", 5, 5, "must be >= 5");
  const ConfigEntry* e = find_entry(map, "bench_k");
  if (e) {
    run.k_values.clear();
    for (const std::string& tok : split_list(e->value)) {
      const long long v = parse_int_token("bench_k", tok, *e);
      if (v < 1 || v > 500) {
        throw ConfigError("key 'bench_k': values must lie in [1, 500] (got " +
                          std::to_string(v) + ")");
      }
      run.k_values.push_back(static_cast<int>(v));
    }
  }
  return run;
}

}  // namespace cnoma
