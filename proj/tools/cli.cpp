#include "cli.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ssp/config.hpp"
#include "ssp/error.hpp"
#include "ssp/experiments.hpp"
#include "ssp/families.hpp"
#include "ssp/sspcert.hpp"
#include "ssp/tableau.hpp"

namespace ssp::cli {
namespace {

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view s) : s_(s) {}

  double parse() {
    const double v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("cannot read number '" + std::string(s_) + "': " + why);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  double expr() {
    double v = term();
    for (;;) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }

  double term() {
    double v = unary();
    for (;;) {
      if (eat('*'))
        v *= unary();
      else if (eat('/'))
        v /= unary();
      else
        return v;
    }
  }

  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return primary();
  }

  double primary() {
    skip();
    if (eat('(')) {
      const double v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (s_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      if (!eat('(')) fail("expected '(' after sqrt");
      const double v = expr();
      if (!eat(')')) fail("missing ')'");
      return std::sqrt(v);
    }
    const char* begin = s_.data() + pos_;
    char* end = nullptr;
    const std::string rest(begin, s_.size() - pos_);
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

struct UsageError : Error {
  using Error::Error;
};

double parse_k(const std::string& text) {
  double k = 0.0;
  try {
    k = parse_scalar_expression(text);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  if (!(k > 0.0) || !std::isfinite(k)) throw UsageError("K must be positive");
  // Decimal renderings of sqrt(2)/2 with eight or more digits mean that value.
  if (std::abs(k - kInvSqrt2) <= 1e-8) return kInvSqrt2;
  return k;
}

FamilyId parse_family_or_throw(const std::string& name) {
  const auto id = parse_family(name);
  if (!id) throw UsageError("unknown family '" + name + "' (see 'families list')");
  return *id;
}

std::string text_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_families_list(std::ostream& out) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-12s %6s %5s  %s\n", "family", "stages", "order", "K range");
  out << buf;
  for (auto id : all_families()) {
    const auto info = family_info(id);
    std::snprintf(buf, sizeof buf, "%-12s %6d %5d  %s\n", std::string(to_string(id)).c_str(), info.stages,
                  info.order, info.k_range.c_str());
    out << buf;
  }
  return 0;
}

int cmd_families_make(const std::string& family, const std::string& k_text, bool shu_osher,
                      const std::string& r_text, std::ostream& out) {
  const FamilyId id = parse_family_or_throw(family);
  const double k = parse_k(k_text);
  FamilyMethod m = [&] {
    try {
      return make_family(id, k);
    } catch (const InvalidParameter& e) {
      throw UsageError(e.what());
    } catch (const UnsupportedParameter& e) {
      throw UsageError(e.what());
    } catch (const FamilyInfeasible& e) {
      throw UsageError(e.what());
    }
  }();
  out << "# family = " << to_string(m.id) << ", order " << m.order << ", K = " << text_number(m.k)
      << ", C = " << text_number(m.c) << '\n';
  out << to_text(m.tableau);
  if (shu_osher) {
    const double r = r_text.empty() ? m.c : parse_scalar_expression(r_text);
    if (!(r > 0.0))
      throw UsageError("no positive SSP coefficient for " + std::string(to_string(m.id)) +
                       "; pass --r to choose the step ratio");
    out << '\n' << to_text(build_shu_osher(m.tableau, r, m.k));
  }
  return 0;
}

int cmd_cert(const std::string& path, const std::string& k_text, const std::string& r_text,
             double r_max, bool json, std::ostream& out, std::ostream& err) {
  const double k = parse_k(k_text);
  TwoDerivativeTableau tab = [&] {
    try {
      return read_tableau(path);
    } catch (const Error& e) {
      throw Error(e.what());
    }
  }();
  if (!r_text.empty()) {
    const double r = parse_scalar_expression(r_text);
    if (!(r > 0.0)) throw UsageError("r must be positive");
    const auto form = build_shu_osher(tab, r, k);
    const auto cert = check_certificate(form);
    if (json) {
      auto j = nlohmann::json::parse(to_json(cert));
      j["r"] = r;
      j["K"] = k;
      j["form"] = nlohmann::json::parse(to_json(form));
      out << j.dump(2) << '\n';
    } else if (cert.feasible) {
      out << "feasible, min entry " << text_number(cert.min_entry) << '\n';
    } else {
      out << "infeasible, witness " << to_string(cert.witness) << " = "
          << text_number(cert.min_entry) << '\n';
    }
    return 0;
  }
  const auto result = search_ssp_coefficient(tab, k, r_max);
  if (result.saturated)
    err << "warning: the certificate holds at r_max = " << text_number(r_max)
        << "; the true coefficient may be larger\n";
  if (!result.single_transition)
    err << "warning: feasibility alternates below the reported coefficient\n";
  if (json) {
    nlohmann::json j;
    j["K"] = k;
    j["C"] = result.coefficient;
    j["saturated"] = result.saturated;
    j["single_transition"] = result.single_transition;
    j["r_max"] = r_max;
    out << j.dump(2) << '\n';
  } else {
    out << "C = " << text_number(result.coefficient) << '\n';
  }
  return 0;
}

struct RunFlags {
  std::string preset;
  std::string config;
  std::string out;
  std::string write_config;
  std::vector<std::string> overrides;  // key = value lines
  bool quiet = false;
};

RunConfig resolve_config(RunCommand command, const RunFlags& flags) {
  RunConfig config;
  if (!flags.preset.empty()) {
    auto p = preset(flags.preset);
    if (!p) {
      std::string names;
      for (const auto& n : preset_names()) names += " " + n;
      throw UsageError("unknown preset '" + flags.preset + "'; available:" + names);
    }
    config = *p;
  } else if (flags.config.empty()) {
    throw UsageError("give --preset or --config");
  } else {
    config.command = command;
  }
  std::vector<std::string> problems;
  if (!flags.config.empty()) {
    std::ifstream is(flags.config);
    if (!is) throw Error("cannot open config " + flags.config);
    std::stringstream ss;
    ss << is.rdbuf();
    config = apply_config_text(config, ss.str(), problems);
  }
  std::string overrides;
  for (const auto& line : flags.overrides) overrides += line + "\n";
  config = apply_config_text(config, overrides, problems);
  if (config.command != command)
    problems.push_back("config describes a '" + std::string(to_string(config.command)) +
                       "' run, not '" + std::string(to_string(command)) + "'");
  if (const char* env = std::getenv("SSP_MSMD_OUT"); env && *env) config.output = env;
  if (!flags.out.empty()) config.output = flags.out;
  for (auto& p : validate(config)) problems.push_back(std::move(p));
  if (!problems.empty()) {
    std::string msg = "invalid configuration (" + std::to_string(problems.size()) + " problem" +
                      (problems.size() == 1 ? "" : "s") + "):";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw UsageError(msg);
  }
  return config;
}

int cmd_run(RunCommand command, const RunFlags& flags, std::ostream& out, std::ostream& err) {
  const RunConfig config = resolve_config(command, flags);
  if (!flags.write_config.empty()) {
    std::ofstream os(flags.write_config);
    if (!os) throw Error("cannot write " + flags.write_config);
    os << to_text(config);
  }
  const RunOptions options{config.jobs};
  ExperimentReport report;
  if (command == RunCommand::Sweep) {
    const auto spec = to_sweep_spec(config);
    report = weno_order(spec.scheme) != 0 ? weno_sharpness_sweep(spec, options)
                                          : tv_sharpness_sweep(spec, options);
  } else {
    const auto spec = to_convergence_spec(config);
    report = spec.is_corefinement() ? corefinement_study(spec, options)
                                    : temporal_refinement_study(spec, options);
  }
  const std::filesystem::path dir(config.output);
  write_report(dir, report);
  {
    std::ofstream os(dir / (report.name + ".config"));
    os << to_text(config);
  }
  if (!flags.quiet) out << format_table(report);
  out << "wrote " << (dir / (report.name + ".csv")).string() << '\n';
  if (command == RunCommand::Converge) {
    for (const auto& r : report.rows) {
      if (r.blew_up) {
        err << "error: " << r.method << " blew up at " << report.param_name << " = "
            << text_number(r.param) << '\n';
        return 1;
      }
    }
  }
  return 0;
}

void add_run_options(CLI::App* app, RunFlags& flags, std::vector<std::string>& raw,
                     bool converge) {
  app->add_option("--preset", flags.preset, "named parameter set");
  app->add_option("--config", flags.config, "key = value config file applied after the preset");
  app->add_option("--out", flags.out, "output directory (overrides SSP_MSMD_OUT and the config)");
  app->add_option("--write-config", flags.write_config, "write the resolved config to this file");
  app->add_flag("--quiet", flags.quiet, "skip the summary table");
  struct Key {
    const char* flag;
    const char* key;
    const char* help;
  };
  static const Key keys[] = {
      {"--name", "name", "report name"},
      {"--methods", "methods", "comma separated families"},
      {"--scheme", "scheme", "first-order, weno5, weno7, weno9 or spectral"},
      {"--flux", "flux", "advection, advection-left or burgers"},
      {"--ic", "ic", "step(lo,hi) or sine(offset,amplitude,frequency)"},
      {"--n", "N", "grid points (comma separated for co-refinement)"},
      {"--lambdas", "lambdas", "comma separated CFL numbers"},
      {"--steps", "steps", "time steps per sweep cell"},
      {"--final-time", "final_time", "final time"},
      {"--threshold", "threshold", "TV rise threshold for breakdown"},
      {"--weno-epsilon", "weno_epsilon", "WENO weight regularization"},
      {"--jobs", "jobs", "worker threads (1 = sequential)"},
  };
  for (const auto& k : keys) {
    app->add_option_function<std::string>(
        k.flag, [&raw, key = std::string(k.key)](const std::string& v) { raw.push_back(key + " = " + v); },
        k.help);
  }
  app->add_option_function<std::string>(
      "--k", [&raw](const std::string& v) { raw.push_back("K = " + text_number(parse_k(v))); },
      "second-derivative ratio K (accepts 1/sqrt(2))");
  if (converge) {
    app->add_option_function<std::string>(
        "--max-n", [&raw](const std::string& v) { raw.push_back("max_n = " + v); },
        "drop grid sizes above this");
  } else {
    app->add_flag_callback("--no-refine", [&raw] { raw.push_back("refine = false"); },
                           "skip the breakdown bisection");
  }
}

}  // namespace

double parse_scalar_expression(std::string_view text) { return ExpressionParser(text).parse(); }

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Strong-stability-preserving two-derivative time stepping"};
  app.name("ssp-msmd");
  app.require_subcommand(1);

  auto* families = app.add_subcommand("families", "list or generate method families");
  families->require_subcommand(1);
  families->add_subcommand("list", "list the families and their K ranges");
  auto* make = families->add_subcommand("make", "print a family tableau");
  std::string family;
  std::string k_text;
  std::string r_text;
  bool shu_osher = false;
  make->add_option("--family", family, "family name, e.g. 2s3p")->required();
  make->add_option("--k", k_text, "second-derivative ratio K (accepts 1/sqrt(2))");
  make->add_flag("--shu-osher", shu_osher, "also print the Shu-Osher form");
  make->add_option("--r", r_text, "step ratio for the Shu-Osher form (default: C)");

  auto* cert = app.add_subcommand("cert", "certify a tableau or find its SSP coefficient");
  std::string tableau_path;
  std::string cert_k;
  std::string cert_r;
  double r_max = 10.0;
  bool json = false;
  cert->add_option("--tableau", tableau_path, "tableau file")->required();
  cert->add_option("--k", cert_k, "second-derivative ratio K")->required();
  cert->add_option("--r", cert_r, "check this step ratio instead of searching");
  cert->add_option("--r-max", r_max, "upper end of the search");
  cert->add_flag("--json", json, "machine-readable output");

  RunFlags sweep_flags;
  RunFlags converge_flags;
  auto* sweep = app.add_subcommand("sweep", "TV sharpness sweep");
  auto* converge = app.add_subcommand("converge", "convergence study");
  add_run_options(sweep, sweep_flags, sweep_flags.overrides, false);
  add_run_options(converge, converge_flags, converge_flags.overrides, true);

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      std::ostringstream o;
      std::ostringstream e2;
      const int code = app.exit(e, o, e2);
      out << o.str();
      err << e2.str();
      return code == 0 ? 0 : 2;
    }
    if (families->got_subcommand("list")) return cmd_families_list(out);
    if (families->parsed()) {
      if (k_text.empty()) k_text = "1/sqrt(2)";
      return cmd_families_make(family, k_text, shu_osher, r_text, out);
    }
    if (cert->parsed()) return cmd_cert(tableau_path, cert_k, cert_r, r_max, json, out, err);
    if (sweep->parsed()) return cmd_run(RunCommand::Sweep, sweep_flags, out, err);
    if (converge->parsed()) return cmd_run(RunCommand::Converge, converge_flags, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}


}  // namespace ssp::cli
