// Command-line front end. Talks to the library only through the C API.
//
// Exit codes: 0 success or check passed, 1 verification threshold breached,
// 2 invalid configuration (bad flags, unparseable specs, unreadable files),
// 3 mathematical hypothesis failure (non-normalized input, negative density,
// non-integrable law, quadrature failure).

#include <CLI11.hpp>
#include <json.hpp>

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "orlicz/orlicz.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitBreach = 1;
constexpr int kExitConfig = 2;
constexpr int kExitMath = 3;

// Thrown to unwind with a given exit code after the message has been printed.
struct Exit {
  int code;
};

[[noreturn]] void config_error(const std::string& msg) {
  std::cerr << "error: " << msg << '\n';
  throw Exit{kExitConfig};
}

int exit_code_for(orlicz_status s) {
  switch (s) {
    case ORLICZ_OK:
      return kExitPass;
    case ORLICZ_E_INVALID_ARGUMENT:
    case ORLICZ_E_PARSE:
    case ORLICZ_E_IO:
      return kExitConfig;
    default:
      return kExitMath;
  }
}

// Reports a failed C call; for parse errors the spec is echoed with a caret.
void check(orlicz_status s, const std::string& spec = {}) {
  if (s == ORLICZ_OK) return;
  std::cerr << "error (" << orlicz_status_name(s) << "): " << orlicz_last_error() << '\n';
  if (s == ORLICZ_E_PARSE && !spec.empty()) {
    std::cerr << "  " << spec << "\n  " << std::string(orlicz_last_error_position(), ' ') << "^\n";
  }
  throw Exit{exit_code_for(s)};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

double round12(double v) { return std::isfinite(v) ? std::stod(fmt(v)) : v; }

struct CString {
  char* p = nullptr;
  ~CString() { orlicz_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

struct Function {
  orlicz_function_t* p = nullptr;
  Function() = default;
  Function(const Function&) = delete;
  Function& operator=(const Function&) = delete;
  ~Function() { orlicz_function_free(p); }
};

struct Tail {
  orlicz_tail_t* p = nullptr;
  Tail() = default;
  Tail(const Tail&) = delete;
  Tail& operator=(const Tail&) = delete;
  ~Tail() { orlicz_tail_free(p); }
};

struct Report {
  orlicz_report_t* p = nullptr;
  Report() = default;
  Report(const Report&) = delete;
  Report& operator=(const Report&) = delete;
  ~Report() { orlicz_report_free(p); }
};

void parse_function(const std::string& spec, Function& f, const char* flag) {
  if (spec.empty()) config_error(std::string("missing ") + flag);
  check(orlicz_function_parse(spec.c_str(), &f.p), spec);
}

std::string describe(const Function& f) {
  CString s;
  check(orlicz_function_describe(f.p, &s.p));
  return s.str();
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    while (end && *end == ' ') ++end;
    if (cell.empty() || end == cell.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
      config_error(std::string("bad number '") + cell + "' in " + flag);
    }
    out.push_back(v);
  }
  if (out.empty()) config_error(std::string("empty list in ") + flag);
  return out;
}

// ---------------------------------------------------------------------------
// Options and the key=value config file

struct Options {
  std::string fn, fn_m, fn_n, mu, musielak, x, suite = "default", out, atoms_out, csv_out, config;
  double p = NAN;
  double tol = NAN;
  double c = 1.1;
  double range = 1e4;
  double scale = 1.0;
  double max_spread = 8.0;
  std::size_t n = 64;
  std::size_t n_mc = 200000;
  std::size_t points = 0;
  std::uint64_t seed = 0;
};

// Options bound to one subcommand, by config key.
using Binding = std::map<std::string, std::pair<CLI::Option*, std::function<void(const std::string&)>>>;

template <class T>
std::function<void(const std::string&)> setter(T& target, const std::string& key) {
  return [&target, key](const std::string& v) {
    std::stringstream ss(v);
    T tmp{};
    ss >> tmp;
    if (ss.fail() || !ss.eof()) config_error("bad value '" + v + "' for config key '" + key + "'");
    target = tmp;
  };
}

template <>
std::function<void(const std::string&)> setter<std::string>(std::string& target, const std::string&) {
  return [&target](const std::string& v) { target = v; };
}

template <class T>
void bind_option(CLI::App* app, Binding& b, const std::string& key, T& target, const std::string& help,
          bool with_default = false) {
  CLI::Option* opt = app->add_option("--" + key, target, help);
  if (with_default) opt->capture_default_str();
  b[key] = {opt, setter(target, key)};
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot read config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) config_error(path + ":" + std::to_string(row) + ": expected key=value");
    auto strip = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto z = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, z - a + 1);
    };
    std::string key = strip(line.substr(0, eq));
    for (auto& ch : key) {
      if (ch == '_') ch = '-';
    }
    kv[key] = strip(line.substr(eq + 1));
  }
  return kv;
}

// Fills options not given on the command line from the config file.
void apply_config(const Options& o, const Binding& b) {
  if (o.config.empty()) return;
  for (const auto& [key, value] : read_config(o.config)) {
    auto it = b.find(key);
    if (it == b.end()) {
      if (key == "config") config_error("config files cannot include other config files");
      continue;  // keys for other subcommands are ignored
    }
    if (it->second.first->count() == 0) it->second.second(value);
  }
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) config_error("cannot write '" + o.out + "'");
  f << text;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) config_error("cannot write '" + path + "'");
  f << text;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_norm(const Options& o) {
  if (o.x.empty()) config_error("missing --x");
  const auto x = parse_list(o.x, "--x");
  const double tol = std::isnan(o.tol) ? 0.0 : o.tol;
  double value = 0.0;
  if (!o.musielak.empty()) {
    if (!o.fn.empty()) config_error("--fn and --musielak are mutually exclusive");
    check(orlicz_musielak_norm(o.musielak.c_str(), x.data(), x.size(), tol, &value), o.musielak);
  } else {
    Function f;
    parse_function(o.fn, f, "--fn");
    check(orlicz_norm(f.p, x.data(), x.size(), tol, &value));
  }
  emit(o, fmt(value) + "\n");
  return kExitPass;
}

int cmd_generate(const Options& o, orlicz_law law) {
  Function f;
  parse_function(o.fn, f, "--fn");
  if (law == ORLICZ_LAW_LP && std::isnan(o.p)) config_error("generate lp needs --p");
  Tail t;
  check(orlicz_tail_from_function(f.p, law, law == ORLICZ_LAW_LP ? o.p : 2.0, &t.p));
  std::size_t warnings = 0;
  check(orlicz_tail_warning_count(t.p, &warnings));
  for (std::size_t i = 0; i < warnings; ++i) std::cerr << "warning: " << orlicz_tail_warning(t.p, i) << '\n';
  CString table, atoms;
  check(orlicz_tail_csv(t.p, o.points ? o.points : 512, o.range, &table.p));
  check(orlicz_tail_atoms_csv(t.p, &atoms.p));
  if (!o.atoms_out.empty()) {
    emit(o, table.str());
    write_file(o.atoms_out, atoms.str());
  } else if (!o.out.empty()) {
    emit(o, table.str());
    write_file(o.out + ".atoms.csv", atoms.str());
  } else {
    emit(o, table.str() + "\n" + atoms.str());
  }
  return kExitPass;
}

int cmd_smooth(const Options& o) {
  Function f;
  parse_function(o.fn, f, "--fn");
  CString csv;
  check(orlicz_smoothing_csv(f.p, o.c, o.points ? o.points : 257, &csv.p));
  emit(o, csv.str());
  return kExitPass;
}

int finish_check(const Options& o, nlohmann::ordered_json j, bool pass) {
  j["pass"] = pass;
  emit(o, j.dump(2) + "\n");
  return pass ? kExitPass : kExitBreach;
}

int cmd_roundtrip(const Options& o, bool p_case) {
  Function f;
  parse_function(o.fn, f, "--fn");
  double err = 0.0;
  double threshold = std::isnan(o.tol) ? (p_case ? 1e-4 : 1e-6) : o.tol;
  nlohmann::ordered_json j;
  j["check"] = p_case ? "roundtrip-p" : "roundtrip-max";
  j["function"] = describe(f);
  if (p_case) {
    if (std::isnan(o.p)) config_error("roundtrip-p needs --p");
    check(orlicz_roundtrip_p(f.p, o.p, &err));
    j["p"] = round12(o.p);
  } else {
    check(orlicz_roundtrip_max(f.p, &err));
  }
  j["sup_error"] = round12(err);
  j["threshold"] = threshold;
  return finish_check(o, j, err <= threshold);
}

int cmd_experiment(const Options& o, orlicz_experiment kind, const char* name) {
  Function f;
  orlicz_experiment_config cfg{};
  cfg.kind = kind;
  if (kind != ORLICZ_EXPERIMENT_PARETO) {
    parse_function(o.fn, f, "--fn");
    cfg.function = f.p;
  }
  if ((kind == ORLICZ_EXPERIMENT_LP || kind == ORLICZ_EXPERIMENT_PARETO) && std::isnan(o.p)) {
    config_error(std::string("verify ") + name + " needs --p");
  }
  cfg.p = o.p;
  cfg.n = o.n;
  cfg.n_mc = o.n_mc;
  cfg.seed = o.seed;
  cfg.suite = o.suite.c_str();
  cfg.scale = o.scale;
  Report r;
  check(orlicz_run_experiment(&cfg, &r.p), o.suite);
  CString json;
  check(orlicz_report_json(r.p, &json.p));
  if (!o.csv_out.empty()) {
    CString csv;
    check(orlicz_report_csv(r.p, &csv.p));
    write_file(o.csv_out, csv.str());
  }
  double spread = 0.0;
  check(orlicz_report_spread(r.p, &spread, nullptr, nullptr));
  auto j = nlohmann::ordered_json::parse(json.str());
  j["check"] = name;
  j["threshold"] = o.max_spread;
  return finish_check(o, j, spread <= o.max_spread);
}

int cmd_convolution(const Options& o) {
  Function m, n;
  parse_function(o.fn_m, m, "--fnM");
  parse_function(o.fn_n, n, "--fnN");
  if (o.mu.empty()) config_error("missing --mu");
  Tail mu;
  check(orlicz_tail_parse(o.mu.c_str(), &mu.p), o.mu);
  double sup = 0.0, argmax = 0.0;
  check(orlicz_check_convolution(m.p, n.p, mu.p, o.points ? o.points : 512, &sup, &argmax));
  const double threshold = std::isnan(o.tol) ? 1e-4 : o.tol;
  nlohmann::ordered_json j;
  j["check"] = "convolution";
  j["M"] = describe(m);
  j["N"] = describe(n);
  j["mu"] = o.mu;
  j["sup_residual"] = round12(sup);
  j["argmax"] = round12(argmax);
  j["threshold"] = threshold;
  return finish_check(o, j, sup <= threshold);
}

int cmd_khintchine(const Options& o) {
  if (o.x.empty()) config_error("missing --x");
  const auto a = parse_list(o.x, "--x");
  double ratio = 0.0;
  check(orlicz_khintchine(a.data(), a.size(), o.seed, &ratio));
  nlohmann::ordered_json j;
  j["check"] = "khintchine";
  j["n"] = a.size();
  j["ratio"] = round12(ratio);
  j["lower"] = round12(1.0 / std::sqrt(2.0));
  j["upper"] = 1.0;
  return finish_check(o, j, ratio >= 1.0 / std::sqrt(2.0) - 1e-12 && ratio <= 1.0 + 1e-12);
}

std::uint64_t default_seed() {
  const char* env = std::getenv("ORLICZ_SEED");
  if (env == nullptr || *env == '\0') return 0;
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || errno == ERANGE || env[0] == '-') config_error("ORLICZ_SEED must be a nonnegative integer");
  return v;
}

int run(int argc, char** argv) {
  CLI::App app{"Orlicz norms, their generating distributions, and Monte Carlo checks of the equivalences"};
  app.require_subcommand(1);
  Options o;
  o.seed = default_seed();

  struct Leaf {
    CLI::App* app;
    Binding binding;
    std::function<int()> action;
  };
  std::vector<std::unique_ptr<Leaf>> leaves;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    auto l = std::make_unique<Leaf>();
    l->app = parent->add_subcommand(name, help);
    l->app->add_option("--config", o.config, "key=value file; command-line flags take precedence");
    bind_option(l->app, l->binding, "out", o.out, "output path (default: standard output)");
    leaves.push_back(std::move(l));
    return leaves.back().get();
  };
  auto common_mc = [&](Leaf* l) {
    bind_option(l->app, l->binding, "n", o.n, "dimension of the default vector suite", true);
    bind_option(l->app, l->binding, "n-mc", o.n_mc, "Monte Carlo replications per vector", true);
    bind_option(l->app, l->binding, "seed", o.seed, "seed (default: $ORLICZ_SEED or 0)");
    bind_option(l->app, l->binding, "suite", o.suite, "'default' or ';'-separated comma lists", true);
    bind_option(l->app, l->binding, "scale", o.scale, "multiply every suite vector by this factor", true);
    bind_option(l->app, l->binding, "max-spread", o.max_spread, "pass threshold for the ratio spread", true);
    bind_option(l->app, l->binding, "csv", o.csv_out, "also write the per-vector CSV report here");
  };

  // norm
  Leaf* norm = leaf(&app, "norm", "Orlicz or Musielak-Orlicz norm of a vector");
  bind_option(norm->app, norm->binding, "fn", o.fn, "function spec");
  bind_option(norm->app, norm->binding, "musielak", o.musielak, "';'-separated function specs, one per coordinate");
  bind_option(norm->app, norm->binding, "x", o.x, "comma-separated coordinates");
  bind_option(norm->app, norm->binding, "tol", o.tol, "modular tolerance (default 1e-10)");
  norm->action = [&] { return cmd_norm(o); };

  // generate
  CLI::App* gen = app.add_subcommand("generate", "tail/density table of a generating distribution");
  gen->require_subcommand(1);
  const std::pair<const char*, orlicz_law> laws[] = {
      {"max", ORLICZ_LAW_MAX}, {"lp", ORLICZ_LAW_LP}, {"p2", ORLICZ_LAW_P2}};
  for (const auto& [name, law] : laws) {
    Leaf* g = leaf(gen, name, std::string("law generating the norm (") + name + ")");
    bind_option(g->app, g->binding, "fn", o.fn, "function spec");
    if (law == ORLICZ_LAW_LP) bind_option(g->app, g->binding, "p", o.p, "exponent p > 1");
    bind_option(g->app, g->binding, "points", o.points, "rows of the table (default 512)");
    bind_option(g->app, g->binding, "range", o.range, "table covers [floor/2, floor*range]", true);
    bind_option(g->app, g->binding, "atoms-out", o.atoms_out, "path for the atom table (location,mass)");
    const orlicz_law l = law;
    g->action = [&o, l] { return cmd_generate(o, l); };
  }

  // verify
  CLI::App* ver = app.add_subcommand("verify", "numerical and Monte Carlo checks; JSON on output");
  ver->require_subcommand(1);
  for (const char* name : {"roundtrip-max", "roundtrip-p"}) {
    Leaf* v = leaf(ver, name, "rebuild M from its generating law and report the sup-error on [0, T]");
    bind_option(v->app, v->binding, "fn", o.fn, "function spec");
    bind_option(v->app, v->binding, "tol", o.tol, "pass threshold (default 1e-6 max, 1e-4 p)");
    const bool p_case = std::string(name) == "roundtrip-p";
    if (p_case) bind_option(v->app, v->binding, "p", o.p, "exponent p > 1");
    v->action = [&o, p_case] { return cmd_roundtrip(o, p_case); };
  }
  const std::tuple<const char*, orlicz_experiment, const char*> experiments[] = {
      {"max", ORLICZ_EXPERIMENT_MAX, "E max|x_i X_i| against ||x||_M"},
      {"lp", ORLICZ_EXPERIMENT_LP, "E ||(x_i X_i)||_p against ||x||_M"},
      {"pareto", ORLICZ_EXPERIMENT_PARETO, "E max|x_i xi_i| against ||x||_p, xi log-gamma(1,p)"},
      {"embedding", ORLICZ_EXPERIMENT_EMBEDDING, "E|sum a_i r_i X_i| against ||a||_M"}};
  for (const auto& [name, kind, help] : experiments) {
    Leaf* v = leaf(ver, name, help);
    if (kind != ORLICZ_EXPERIMENT_PARETO) bind_option(v->app, v->binding, "fn", o.fn, "function spec");
    if (kind == ORLICZ_EXPERIMENT_LP || kind == ORLICZ_EXPERIMENT_PARETO) {
      bind_option(v->app, v->binding, "p", o.p, "exponent p > 1");
    }
    common_mc(v);
    const orlicz_experiment k = kind;
    const char* nm = name;
    v->action = [&o, k, nm] { return cmd_experiment(o, k, nm); };
  }
  Leaf* conv = leaf(ver, "convolution", "tail of M against the product law mu * (law of N)");
  bind_option(conv->app, conv->binding, "fnM", o.fn_m, "function spec of M");
  bind_option(conv->app, conv->binding, "fnN", o.fn_n, "function spec of N");
  bind_option(conv->app, conv->binding, "mu", o.mu, "point:<a> | loggamma:<p> | max:<fn> | lp:<p>:<fn>");
  bind_option(conv->app, conv->binding, "points", o.points, "grid size (default 512)");
  bind_option(conv->app, conv->binding, "tol", o.tol, "pass threshold (default 1e-4)");
  conv->action = [&] { return cmd_convolution(o); };
  Leaf* kh = leaf(ver, "khintchine", "E|sum a_i eps_i| / ||a||_2, exact for n <= 20");
  bind_option(kh->app, kh->binding, "x", o.x, "comma-separated coefficients");
  bind_option(kh->app, kh->binding, "seed", o.seed, "seed for n > 20");
  kh->action = [&] { return cmd_khintchine(o); };

  // smooth
  Leaf* sm = leaf(&app, "smooth", "smooth the kink; CSV t,M,N,M2,N2 with the width in a comment");
  bind_option(sm->app, sm->binding, "fn", o.fn, "function spec");
  bind_option(sm->app, sm->binding, "c", o.c, "constant c > 1 of N <= M <= cN", true);
  bind_option(sm->app, sm->binding, "points", o.points, "rows (default 257)");
  sm->action = [&] { return cmd_smooth(o); };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  for (const auto& l : leaves) {
    if (l->app->parsed()) {
      apply_config(o, l->binding);
      return l->action();
    }
  }
  config_error("no command given");
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Exit& e) {
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMath;
  }
}
