#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "hbo/error.hpp"

namespace hbo::cli {

std::string ConfigError::message() const {
  return key + " = '" + value + "': " + constraint;
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

bool parse_real(const std::string& s, double& v) {
  try {
    std::size_t pos = 0;
    v = std::stod(s, &pos);
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

bool parse_int(const std::string& s, int& v) {
  try {
    std::size_t pos = 0;
    long x = std::stol(s, &pos);
    v = static_cast<int>(x);
    return pos == s.size() && x == v;
  } catch (...) {
    return false;
  }
}

bool parse_flag(const std::string& s, bool& v) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") return v = true, true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return v = false, true;
  return false;
}

bool parse_list(const std::string& s, std::vector<double>& out) {
  out.clear();
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v;
    if (!parse_real(trim(item), v)) return false;
    out.push_back(v);
  }
  return !out.empty();
}

const std::vector<KeySpec> common_keys = {
    {"seed", KeyType::integer, "1", "seed for all randomness"},
    {"out", KeyType::text, "runs", "parent directory for run outputs"},
};

std::vector<KeySpec> with_common(std::vector<KeySpec> v) {
  v.insert(v.end(), common_keys.begin(), common_keys.end());
  return v;
}

const std::map<std::string, std::vector<KeySpec>>& schemas() {
  static const std::map<std::string, std::vector<KeySpec>> s = {
      {"decay", with_common({
                    {"d", KeyType::integer, "2", "dimension (2, 3 or 4)"},
                    {"L", KeyType::real, "0", "half box length, 0 picks the default per d"},
                    {"M", KeyType::integer, "0", "samples per axis, 0 picks the default per d"},
                    {"band", KeyType::integer, "0", "Littlewood-Paley band of the datum"},
                    {"t-min", KeyType::real, "8", "first time"},
                    {"t-max", KeyType::real, "64", "last time"},
                    {"t-count", KeyType::integer, "13", "log-spaced time samples"},
                    {"method", KeyType::text, "fft", "fft (lattice sup), radial (refined sup) or both"},
                })},
      {"strichartz", with_common({
                         {"mode", KeyType::text, "scaling", "scaling, knapp or degenerate"},
                         {"d", KeyType::integer, "2", "dimension"},
                         {"q", KeyType::real, "6", "space exponent"},
                         {"r", KeyType::real, "6", "time exponent"},
                         {"L", KeyType::real, "0", "half box length (scaling mode), 0 picks the default per d"},
                         {"M", KeyType::integer, "0", "samples per axis (scaling mode), 0 picks the default per d"},
                         {"T", KeyType::real, "0", "time window at lambda = 1 (scaling mode), 0 picks the default per d"},
                         {"lambdas", KeyType::real_list, "1,2,4", "dyadic rescalings"},
                         {"R", KeyType::real_list, "16,32,64,128,256", "Knapp slab parameters"},
                         {"n1", KeyType::integer, "4", "lattice cells across the Knapp slab"},
                         {"deltas", KeyType::real_list, "0.0625,0.03125,0.015625,0.0078125,0.00390625", "packet parameters"},
                         {"c0", KeyType::real, "0.5", "packet window constant, t in [0, c0/delta]"},
                         {"t-samples", KeyType::integer, "17", "uniform time samples"},
                     })},
      {"smoothing", with_common({
                        {"d", KeyType::integer, "2", "dimension"},
                        {"alpha", KeyType::real, "1", "weight exponent"},
                        {"count", KeyType::integer, "20", "random data"},
                        {"L", KeyType::real, "32", "half box length"},
                        {"M", KeyType::integer, "256", "samples per axis"},
                        {"T", KeyType::real, "4", "time truncation, t in [-T, T]"},
                        {"t-samples", KeyType::integer, "41", "uniform time samples"},
                        {"k-min", KeyType::real, "1", "smallest packet frequency"},
                        {"k-max", KeyType::real, "3", "largest packet frequency"},
                        {"refine", KeyType::flag, "false", "repeat every datum with M doubled"},
                    })},
      {"oscint", with_common({
                     {"d", KeyType::integer, "2", "dimension"},
                     {"t", KeyType::real_list, "1,2,4,8", "times"},
                     {"x1-min", KeyType::real, "-8", "lattice range along x1"},
                     {"x1-max", KeyType::real, "0", ""},
                     {"x1-count", KeyType::integer, "5", ""},
                     {"x2-max", KeyType::real, "4", "lattice range along x2 (from 0)"},
                     {"x2-count", KeyType::integer, "5", ""},
                     {"density", KeyType::real, "10", "nodes per oscillation period"},
                 })},
      {"evolve", with_common({
                     {"datum", KeyType::text, "gaussian", "gaussian, zero, tail or file"},
                     {"input", KeyType::text, "", "HBOF snapshot for datum = file"},
                     {"d", KeyType::integer, "2", "dimension"},
                     {"L", KeyType::real, "16", "half box length"},
                     {"M", KeyType::integer, "128", "samples per axis"},
                     {"amplitude", KeyType::real, "1", "datum amplitude"},
                     {"width", KeyType::real, "2", "gaussian width"},
                     {"s", KeyType::real, "2", "tail datum regularity"},
                     {"dt", KeyType::real, "0.001", "time step"},
                     {"T", KeyType::real, "1", "horizon"},
                     {"mu", KeyType::real, "0", "parabolic regularization"},
                     {"dealias", KeyType::flag, "true", "2/3-rule truncation"},
                     {"nonlinear", KeyType::flag, "true", "include u d1 u"},
                     {"stride", KeyType::integer, "10", "steps between invariant records"},
                     {"monitor-s", KeyType::real, "2", "Sobolev index of the energy monitor"},
                     {"snapshot-stride", KeyType::integer, "0", "steps between HBOF snapshots, 0 for none"},
                 })},
      {"bona-smith", with_common({
                         {"s", KeyType::real, "2", "regularity of the datum"},
                         {"eps", KeyType::real, "0.05", "tail excess over the critical decay"},
                         {"amplitude", KeyType::real, "1", "datum amplitude"},
                         {"L", KeyType::real, "8", "half box length"},
                         {"M", KeyType::integer, "256", "samples per axis"},
                         {"n", KeyType::real_list, "2,4,8,16", "mollification scales, m = 2n"},
                         {"dt", KeyType::real, "0.001", "time step"},
                         {"T", KeyType::real, "0.5", "horizon"},
                         {"stride", KeyType::integer, "10", "steps between difference samples"},
                     })},
      {"gronwall", with_common({
                       {"L", KeyType::real, "16", "half box length"},
                       {"M", KeyType::integer, "128", "samples per axis"},
                       {"amplitude", KeyType::real, "1", "datum amplitude"},
                       {"width", KeyType::real, "2", "gaussian width"},
                       {"perturbation", KeyType::real, "1e-4", "size of the random perturbation"},
                       {"dt", KeyType::real, "0.001", "time step"},
                       {"T", KeyType::real, "1", "horizon"},
                       {"stride", KeyType::integer, "10", "steps between samples"},
                   })},
      {"soliton", with_common({
                      {"c", KeyType::real, "1", "speed"},
                      {"L", KeyType::real, "32", "half box length"},
                      {"M", KeyType::integer, "256", "samples per axis"},
                      {"tol", KeyType::real, "1e-10", "residual tolerance"},
                      {"max-iter", KeyType::integer, "2000", "iteration cap"},
                      {"travel", KeyType::flag, "true", "run the traveling test"},
                      {"travel-L", KeyType::real, "32", "half box length of the traveling test"},
                      {"travel-M", KeyType::integer, "128", "samples per axis of the traveling test"},
                      {"dt", KeyType::real, "0.005", "time step of the traveling test"},
                      {"T", KeyType::real, "0", "traveling horizon, 0 for one transit"},
                  })},
      {"nonuniform", with_common({
                         {"n", KeyType::real_list, "2,4,8", "speeds c2 = n, c1 = n + 1"},
                         {"t", KeyType::real, "0.3", "observation time"},
                         {"L", KeyType::real, "2.5", "half box length"},
                         {"M", KeyType::integer, "128", "samples per axis"},
                         {"dt", KeyType::real, "0.000125", "time step"},
                         {"ref-L", KeyType::real, "20", "grid of the c = 1 reference wave"},
                         {"ref-M", KeyType::integer, "128", ""},
                         {"tol", KeyType::real, "1e-10", "residual tolerance"},
                     })},
      {"illposed", with_common({
                       {"d", KeyType::integer, "2", "dimension"},
                       {"eps", KeyType::real, "0.1", "box exponent"},
                       {"s", KeyType::real, "1", "Sobolev index"},
                       {"t", KeyType::real, "0.1", "time"},
                       {"N", KeyType::real_list, "64,128,256,512,1024", "frequencies"},
                       {"allow-outside", KeyType::flag, "false", "permit eps outside (0, 1/(2d-1))"},
                   })},
  };
  return s;
}

}  // namespace

const std::string& Config::text(const std::string& k) const {
  auto it = values.find(k);
  if (it == values.end()) throw ValidationError("config: unknown key " + k);
  return it->second;
}

double Config::real(const std::string& k) const {
  double v;
  if (!parse_real(text(k), v)) throw ValidationError("config: " + k + " is not a number");
  return v;
}

int Config::integer(const std::string& k) const {
  int v;
  if (!parse_int(text(k), v)) throw ValidationError("config: " + k + " is not an integer");
  return v;
}

bool Config::flag(const std::string& k) const {
  bool v;
  if (!parse_flag(text(k), v)) throw ValidationError("config: " + k + " is not a flag");
  return v;
}

std::vector<double> Config::list(const std::string& k) const {
  std::vector<double> v;
  if (!parse_list(text(k), v)) throw ValidationError("config: " + k + " is not a number list");
  return v;
}

std::string Config::canonical(const std::vector<std::string>& exclude) const {
  std::set<std::string> ex(exclude.begin(), exclude.end());
  std::string s;
  for (auto& kv : values)
    if (!ex.count(kv.first)) s += kv.first + "=" + kv.second + "\n";
  return s;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (auto& kv : schemas()) n.push_back(kv.first);
    return n;
  }();
  return names;
}

const std::vector<KeySpec>& schema(const std::string& command) {
  auto it = schemas().find(command);
  if (it == schemas().end()) throw ValidationError("unknown command: " + command);
  return it->second;
}

std::map<std::string, std::string> parse_kv_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string line;
  int no = 0;
  while (std::getline(ss, line)) {
    ++no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError("config: line " + std::to_string(no) + " is not key = value");
    const auto k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
    if (k.empty()) throw ValidationError("config: empty key on line " + std::to_string(no));
    out[k] = v;
  }
  return out;
}

std::map<std::string, std::string> parse_kv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("config: missing input file " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_kv_text(ss.str());
}

namespace {

void check_domain(const std::string& cmd, const Config& c, std::vector<ConfigError>& errs) {
  auto err = [&](const std::string& k, const std::string& why) { errs.push_back({k, c.values.at(k), why}); };
  auto has = [&](const std::string& k) { return c.values.count(k) > 0; };
  if (has("d")) {
    const int d = c.integer("d");
    const int lo = cmd == "oscint" ? 1 : 2;
    if (d < lo || d > 4) err("d", "dimension must be in {" + std::to_string(lo) + ",...,4}");
    if (cmd == "evolve" && d > 3) err("d", "the solver supports d in {2,3}");
  }
  const bool auto_ok = cmd == "decay" || cmd == "strichartz";
  if (has("M") && !(auto_ok && c.integer("M") == 0)) {
    const int M = c.integer("M");
    if (M < 4 || M % 2) err("M", "samples per axis must be even and >= 4");
  }
  if (has("L") && !(auto_ok && c.real("L") == 0) && !(c.real("L") > 0)) err("L", "half box length must be positive");
  if (has("dt") && !(c.real("dt") > 0)) err("dt", "time step must be positive");
  if (has("T") && c.real("T") < 0) err("T", "horizon must be nonnegative");
  if (has("mu") && c.real("mu") < 0) err("mu", "parabolic regularization must be nonnegative");
  if (has("stride") && c.integer("stride") < 1) err("stride", "must be >= 1");
  if (cmd == "strichartz") {
    if (c.real("q") < 2) err("q", "Strichartz space exponent needs q >= 2");
    if (!(c.real("r") > 0)) err("r", "time exponent needs r > 0");
    const auto& m = c.text("mode");
    if (m != "scaling" && m != "knapp" && m != "degenerate") err("mode", "must be scaling, knapp or degenerate");
    for (double R : c.list("R"))
      if (R < 4) err("R", "Knapp slab needs R >= 4");
    for (double d : c.list("deltas"))
      if (!(d > 0 && d <= 1.0 / 16)) err("deltas", "packet parameter must be in (0, 1/16]");
    for (double l : c.list("lambdas"))
      if (!(l > 0)) err("lambdas", "rescalings must be positive");
    if (c.integer("t-samples") < 2) err("t-samples", "need >= 2 time samples");
    if (m == "degenerate" && c.integer("d") != 2) err("d", "the degenerate packet is a d = 2 construction");
  }
  if (cmd == "smoothing") {
    if (!(c.real("alpha") > 0.5)) err("alpha", "local smoothing requires alpha > 1/2 (d >= 2 and alpha > 1/2)");
    if (c.integer("count") < 1) err("count", "need at least one datum");
    if (!(c.real("T") > 0)) err("T", "time truncation must be positive");
    if (c.integer("t-samples") < 2) err("t-samples", "need >= 2 time samples");
    if (!(c.real("k-min") > 0 && c.real("k-max") >= c.real("k-min"))) err("k-min", "need 0 < k-min <= k-max");
  }
  if (cmd == "decay") {
    if (!(c.real("t-min") > 0 && c.real("t-max") > c.real("t-min"))) err("t-min", "need 0 < t-min < t-max");
    if (c.integer("t-count") < 2) err("t-count", "need >= 2 times");
    const auto& m = c.text("method");
    if (m != "fft" && m != "radial" && m != "both") err("method", "must be fft, radial or both");
  }
  if (cmd == "oscint") {
    if (c.real("density") < 10) err("density", "quadrature needs >= 10 nodes per oscillation period");
    if (c.integer("x1-count") < 1 || c.integer("x2-count") < 1) err("x1-count", "lattice counts must be >= 1");
  }
  if (cmd == "evolve") {
    const auto& dm = c.text("datum");
    if (dm != "gaussian" && dm != "zero" && dm != "tail" && dm != "file") err("datum", "must be gaussian, zero, tail or file");
    if (dm == "file" && c.text("input").empty()) err("input", "datum = file needs an input snapshot");
    if (c.integer("snapshot-stride") < 0) err("snapshot-stride", "must be >= 0");
  }
  if (cmd == "bona-smith") {
    if (!(c.real("s") > 0)) err("s", "regularity must be positive");
    if (!(c.real("eps") > 0)) err("eps", "tail excess must be positive");
    for (double n : c.list("n"))
      if (n < 1) err("n", "mollification scale must be >= 1");
  }
  if (cmd == "gronwall" && c.real("perturbation") < 0) err("perturbation", "must be nonnegative");
  if (cmd == "soliton") {
    if (!(c.real("c") > 0)) err("c", "speed must be positive");
    if (!(c.real("tol") > 0)) err("tol", "tolerance must be positive");
    if (c.integer("max-iter") < 1) err("max-iter", "must be >= 1");
  }
  if (cmd == "nonuniform") {
    for (double n : c.list("n"))
      if (n < 1 || n != std::floor(n)) err("n", "speeds must be positive integers");
    if (c.real("t") < 0) err("t", "time must be nonnegative");
  }
  if (cmd == "illposed") {
    const int d = c.integer("d");
    const double e = c.real("eps");
    if (!c.flag("allow-outside") && !(e > 0 && e < 1.0 / (2 * d - 1)))
      err("eps", "counterexample requires 0 < eps < 1/(2d-1) = " + std::to_string(1.0 / (2 * d - 1)));
    if (!(e > 0)) err("eps", "eps must be positive");
    if (c.real("t") == 0) err("t", "time must be nonzero");
    for (double N : c.list("N"))
      if (!(N > 1)) err("N", "frequencies must be > 1");
    if (c.list("N").size() < 2) err("N", "growth fit needs at least two values");
  }
}

}  // namespace

ValidationResult validate_config(const std::string& command, const std::map<std::string, std::string>& raw) {
  ValidationResult res;
  const auto& sch = schema(command);
  std::set<std::string> known;
  for (auto& k : sch) {
    known.insert(k.name);
    res.config.values[k.name] = k.default_value;
  }
  for (auto& kv : raw) {
    if (!known.count(kv.first)) {
      res.errors.push_back({kv.first, kv.second, "unknown key for command " + command});
      continue;
    }
    res.config.values[kv.first] = kv.second;
  }
  bool types_ok = true;
  for (auto& k : sch) {
    const auto& v = res.config.values[k.name];
    double dv;
    int iv;
    bool bv;
    std::vector<double> lv;
    bool ok = true;
    std::string what;
    switch (k.type) {
      case KeyType::integer: ok = parse_int(v, iv); what = "must be an integer"; break;
      case KeyType::real: ok = parse_real(v, dv) && std::isfinite(dv); what = "must be a finite number"; break;
      case KeyType::flag: ok = parse_flag(v, bv); what = "must be true or false"; break;
      case KeyType::real_list: ok = parse_list(v, lv); what = "must be a comma-separated number list"; break;
      case KeyType::text: break;
    }
    if (!ok) {
      res.errors.push_back({k.name, v, what});
      types_ok = false;
    }
  }
  if (types_ok) check_domain(command, res.config, res.errors);
  return res;
}

ValidationResult validate_config_file(const std::string& command, const std::string& path) {
  return validate_config(command, parse_kv_file(path));
}

}  // namespace hbo::cli
