#include "ssp/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "ssp/error.hpp"
#include "text_format.hpp"

namespace ssp {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> lambda_range(int first, int last, double step) {
  std::vector<double> out;
  for (int i = first; i <= last; ++i) out.push_back(static_cast<double>(i) * step);
  return out;
}

RunConfig example1() {
  RunConfig c;
  c.command = RunCommand::Sweep;
  c.name = "example1";
  c.methods = {FamilyId::TS2,     FamilyId::Ssp2s2p, FamilyId::Ssp2s3p,   FamilyId::Ssp2s4p,
               FamilyId::Ssp3s4p, FamilyId::Ssp3s5p, FamilyId::NonSsp2s3p};
  c.scheme = Scheme::FirstOrder;
  c.flux = FluxKind::LinearAdvectionLeft;
  c.x0 = 0.0;
  c.length = 1.0;
  c.count_endpoint = false;
  c.ic = "step(0.25,0.5)";
  c.n_list = {1600};
  c.lambdas = lambda_range(1, 32, 0.05);
  c.steps = 50;
  return c;
}

RunConfig example2(FluxKind flux) {
  RunConfig c = example1();
  c.name = flux == FluxKind::Burgers ? "example2-burgers" : "example2-advection";
  c.scheme = Scheme::Weno5;
  c.flux = flux;
  c.x0 = -1.0;
  c.length = 2.0;
  c.count_endpoint = true;
  c.n_list = {201};
  c.steps = 0;
  c.final_time = 1.0;
  // WENO itself raises TV on a step by about 2e-3 (advection) and 1e-2 (Burgers) at any small CFL, so
  // breakdown is read against that plateau rather than round-off.
  c.threshold = flux == FluxKind::Burgers ? 2e-2 : 4e-3;
  return c;
}

RunConfig convergence_base() {
  RunConfig c;
  c.command = RunCommand::Converge;
  c.methods = {FamilyId::SspRk33, FamilyId::Ssp2s3p, FamilyId::Ssp2s4p, FamilyId::Ssp3s5p};
  c.flux = FluxKind::LinearAdvectionRight;
  c.final_time = 2.0;
  c.reference = ReferenceMode::TranslateInitial;
  return c;
}

RunConfig example3a() {
  RunConfig c = convergence_base();
  c.name = "example3a";
  c.scheme = Scheme::Spectral;
  c.x0 = 0.0;
  c.length = 2.0 * kPi;
  c.count_endpoint = false;
  c.ic = "sine(0.5,0.5,1)";
  c.n_list = {41};
  c.lambdas = {0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1, 0.05};
  return c;
}

RunConfig example3b() {
  RunConfig c = example3a();
  c.name = "example3b";
  c.scheme = Scheme::Weno9;
  c.count_endpoint = true;
  c.n_list = {101};
  c.lambdas = {0.9, 0.8, 0.7, 0.6, 0.5, 0.4};
  return c;
}

RunConfig example3b_fixed() {
  RunConfig c = example3b();
  c.name = "example3b-fixed";
  c.methods = {FamilyId::SspRk33, FamilyId::Ssp2s3p};
  c.n_list = {301};
  c.lambdas = {0.8, 0.6, 0.4, 0.2, 0.1, 0.05};
  return c;
}

RunConfig example4a() {
  RunConfig c = convergence_base();
  c.name = "example4a";
  c.scheme = Scheme::Weno7;
  c.x0 = -1.0;
  c.length = 2.0;
  c.count_endpoint = true;
  c.ic = "sine(0.5,0.5," + text::format_number(kPi) + ")";
  c.n_list = {41, 81, 161, 321, 641, 1281};
  c.lambdas = {0.8};
  return c;
}

RunConfig example4b() {
  RunConfig c = example4a();
  c.name = "example4b";
  c.flux = FluxKind::Burgers;
  c.ic = "sine(1,0.2," + text::format_number(kPi) + ")";
  c.n_list = {161, 321, 641, 1281, 2561, 5121};
  c.final_time = 1.4;
  c.reference = ReferenceMode::ExactBurgers;
  c.scale_by_speed = true;
  return c;
}

std::string join_families(const std::vector<FamilyId>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ",";
    out += to_string(ids[i]);
  }
  return out;
}

std::string join_sizes(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

bool parse_bool(std::string_view s, bool& out) {
  if (s == "true" || s == "yes" || s == "1" || s == "on") return out = true, true;
  if (s == "false" || s == "no" || s == "0" || s == "off") return out = false, true;
  return false;
}

std::size_t parse_size(std::string_view s) {
  const double v = text::parse_number(s);
  if (!(v >= 0.0) || v != std::floor(v) || v > 1e15)
    throw ParseError("'" + std::string(s) + "' is not a nonnegative integer");
  return static_cast<std::size_t>(v);
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table{
      {"command",
       [](RunConfig& c, std::string_view v) {
         if (v == "sweep")
           c.command = RunCommand::Sweep;
         else if (v == "converge")
           c.command = RunCommand::Converge;
         else
           throw ParseError("command must be sweep or converge");
       }},
      {"name", [](RunConfig& c, std::string_view v) { c.name = std::string(v); }},
      {"methods",
       [](RunConfig& c, std::string_view v) {
         std::vector<FamilyId> ids;
         for (const auto& tok : split_list(v)) {
           auto id = parse_family(tok);
           if (!id) throw ParseError("unknown family '" + tok + "'");
           ids.push_back(*id);
         }
         c.methods = std::move(ids);
       }},
      {"K", [](RunConfig& c, std::string_view v) { c.k = text::parse_number(v); }},
      {"scheme",
       [](RunConfig& c, std::string_view v) {
         auto s = parse_scheme(v);
         if (!s) throw ParseError("unknown scheme '" + std::string(v) + "'");
         c.scheme = *s;
       }},
      {"flux",
       [](RunConfig& c, std::string_view v) {
         auto f = parse_flux(v);
         if (!f) throw ParseError("unknown flux '" + std::string(v) + "'");
         c.flux = *f;
       }},
      {"x0", [](RunConfig& c, std::string_view v) { c.x0 = text::parse_number(v); }},
      {"length", [](RunConfig& c, std::string_view v) { c.length = text::parse_number(v); }},
      {"count_endpoint",
       [](RunConfig& c, std::string_view v) {
         if (!parse_bool(v, c.count_endpoint)) throw ParseError("expected true or false");
       }},
      {"ic",
       [](RunConfig& c, std::string_view v) {
         parse_ic(v);
         c.ic = std::string(v);
       }},
      {"N",
       [](RunConfig& c, std::string_view v) {
         std::vector<std::size_t> n;
         for (const auto& tok : split_list(v)) n.push_back(parse_size(tok));
         c.n_list = std::move(n);
       }},
      {"lambdas", [](RunConfig& c, std::string_view v) { c.lambdas = text::parse_numbers(v); }},
      {"steps", [](RunConfig& c, std::string_view v) { c.steps = parse_size(v); }},
      {"final_time", [](RunConfig& c, std::string_view v) { c.final_time = text::parse_number(v); }},
      {"threshold", [](RunConfig& c, std::string_view v) { c.threshold = text::parse_number(v); }},
      {"refine",
       [](RunConfig& c, std::string_view v) {
         if (!parse_bool(v, c.refine)) throw ParseError("expected true or false");
       }},
      {"refine_tol", [](RunConfig& c, std::string_view v) { c.refine_tol = text::parse_number(v); }},
      {"reference",
       [](RunConfig& c, std::string_view v) {
         auto r = parse_reference(v);
         if (!r) throw ParseError("reference must be translate, exact-burgers or self");
         c.reference = *r;
       }},
      {"scale_by_speed",
       [](RunConfig& c, std::string_view v) {
         if (!parse_bool(v, c.scale_by_speed)) throw ParseError("expected true or false");
       }},
      {"weno_epsilon", [](RunConfig& c, std::string_view v) { c.weno_epsilon = text::parse_number(v); }},
      {"max_n", [](RunConfig& c, std::string_view v) { c.max_n = parse_size(v); }},
      {"output", [](RunConfig& c, std::string_view v) { c.output = std::string(v); }},
      {"jobs",
       [](RunConfig& c, std::string_view v) {
         const auto n = parse_size(v);
         if (n > 4096) throw ParseError("jobs is out of range");
         c.jobs = static_cast<int>(n);
       }},
  };
  return table;
}

void throw_if_problems(const std::vector<std::string>& problems, std::string_view what) {
  if (problems.empty()) return;
  std::string msg = std::string(what) + " has " + std::to_string(problems.size()) + " problem" +
                    (problems.size() == 1 ? "" : "s") + ":";
  for (const auto& p : problems) msg += "\n  - " + p;
  throw InvalidParameter(msg);
}

std::vector<MethodSpec> method_specs(const RunConfig& c) {
  std::vector<MethodSpec> out;
  for (auto id : c.methods) out.push_back({id, c.k});
  return out;
}

std::vector<std::size_t> truncated_n(const RunConfig& c) {
  std::vector<std::size_t> n;
  for (std::size_t v : c.n_list)
    if (c.max_n == 0 || v <= c.max_n) n.push_back(v);
  return n;
}

SweepSpec build_sweep(const RunConfig& c) {
  SweepSpec s;
  s.name = c.name;
  s.methods = method_specs(c);
  s.scheme = c.scheme;
  s.flux = FluxSpec{c.flux};
  s.spatial.weno_epsilon = c.weno_epsilon;
  s.grid = {c.x0, c.length, c.count_endpoint};
  s.n = c.n_list.empty() ? 0 : c.n_list.front();
  s.ic = parse_ic(c.ic);
  s.lambdas = c.lambdas;
  s.n_steps = c.steps;
  s.final_time = c.final_time;
  s.threshold = c.threshold;
  s.refine = c.refine;
  s.refine_tol = c.refine_tol;
  return s;
}

ConvergenceSpec build_convergence(const RunConfig& c) {
  ConvergenceSpec s;
  s.name = c.name;
  s.methods = method_specs(c);
  s.scheme = c.scheme;
  s.flux = FluxSpec{c.flux};
  s.spatial.weno_epsilon = c.weno_epsilon;
  s.grid = {c.x0, c.length, c.count_endpoint};
  s.ic = parse_ic(c.ic);
  s.n_list = truncated_n(c);
  s.lambdas = c.lambdas;
  s.final_time = c.final_time;
  s.reference = c.reference;
  s.scale_by_speed = c.scale_by_speed;
  return s;
}

}  // namespace

std::string_view to_string(RunCommand command) {
  return command == RunCommand::Sweep ? "sweep" : "converge";
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"example1",  "example2-advection", "example2-burgers",
                                              "example3a", "example3b",          "example3b-fixed",
                                              "example4a", "example4b"};
  return names;
}

std::optional<RunConfig> preset(std::string_view name) {
  if (name == "example1") return example1();
  if (name == "example2-advection") return example2(FluxKind::LinearAdvectionRight);
  if (name == "example2-burgers") return example2(FluxKind::Burgers);
  if (name == "example3a") return example3a();
  if (name == "example3b") return example3b();
  if (name == "example3b-fixed") return example3b_fixed();
  if (name == "example4a") return example4a();
  if (name == "example4b") return example4b();
  return std::nullopt;
}

std::string to_text(const RunConfig& c) {
  std::ostringstream os;
  os << "command = " << to_string(c.command) << '\n'
     << "name = " << c.name << '\n'
     << "methods = " << join_families(c.methods) << '\n'
     << "K = " << text::format_number(c.k) << '\n'
     << "scheme = " << to_string(c.scheme) << '\n'
     << "flux = " << to_string(c.flux) << '\n'
     << "x0 = " << text::format_number(c.x0) << '\n'
     << "length = " << text::format_number(c.length) << '\n'
     << "count_endpoint = " << (c.count_endpoint ? "true" : "false") << '\n'
     << "ic = " << c.ic << '\n'
     << "N = " << join_sizes(c.n_list) << '\n'
     << "lambdas = " << text::join_numbers(c.lambdas, ",") << '\n'
     << "steps = " << c.steps << '\n'
     << "final_time = " << text::format_number(c.final_time) << '\n'
     << "threshold = " << text::format_number(c.threshold) << '\n'
     << "refine = " << (c.refine ? "true" : "false") << '\n'
     << "refine_tol = " << text::format_number(c.refine_tol) << '\n'
     << "reference = " << to_string(c.reference) << '\n'
     << "scale_by_speed = " << (c.scale_by_speed ? "true" : "false") << '\n'
     << "weno_epsilon = " << text::format_number(c.weno_epsilon) << '\n'
     << "max_n = " << c.max_n << '\n'
     << "output = " << c.output << '\n'
     << "jobs = " << c.jobs << '\n';
  return os.str();
}

RunConfig apply_config_text(RunConfig base, std::string_view text_in, std::vector<std::string>& problems) {
  std::map<std::string, std::string> kv;
  try {
    kv = text::parse_key_values(text_in);
  } catch (const ParseError& e) {
    problems.push_back(e.what());
    return base;
  }
  for (const auto& [key, value] : kv) {
    const auto it = setters().find(key);
    if (it == setters().end()) {
      problems.push_back("unknown key '" + key + "'");
      continue;
    }
    try {
      it->second(base, text::trim(value));
    } catch (const Error& e) {
      problems.push_back(key + ": " + e.what());
    }
  }
  return base;
}

std::vector<std::string> validate(const RunConfig& c) {
  std::vector<std::string> problems;
  if (c.name.empty()) problems.push_back("name is empty");
  if (c.name.find_first_of("/\\") != std::string::npos) problems.push_back("name must not contain path separators");
  if (c.jobs < 0) problems.push_back("jobs must be nonnegative");
  if (!(c.weno_epsilon > 0.0)) problems.push_back("weno_epsilon must be positive");
  if (!(c.k > 0.0)) problems.push_back("K must be positive");
  // Stand-ins for a broken ic or missing N let the remaining checks still run.
  RunConfig probe = c;
  try {
    parse_ic(c.ic);
  } catch (const Error& e) {
    problems.push_back(std::string("ic: ") + e.what());
    probe.ic = "sine(0,1,1)";
  }
  std::vector<std::string> spec_problems;
  if (c.command == RunCommand::Sweep) {
    if (c.n_list.size() != 1) problems.push_back("a sweep takes exactly one N");
    if (c.n_list.empty()) probe.n_list = {1000};
    spec_problems = build_sweep(probe).problems();
  } else {
    const auto n = truncated_n(c);
    if (n.empty() && !c.n_list.empty()) problems.push_back("max_n removes every grid size");
    spec_problems = build_convergence(probe).problems();
  }
  for (auto& p : spec_problems)
    if (std::find(problems.begin(), problems.end(), p) == problems.end()) problems.push_back(std::move(p));
  return problems;
}

SweepSpec to_sweep_spec(const RunConfig& config) {
  if (config.command != RunCommand::Sweep) throw InvalidParameter("config is not a sweep");
  throw_if_problems(validate(config), "sweep config '" + config.name + "'");
  return build_sweep(config);
}

ConvergenceSpec to_convergence_spec(const RunConfig& config) {
  if (config.command != RunCommand::Converge) throw InvalidParameter("config is not a convergence study");
  throw_if_problems(validate(config), "convergence config '" + config.name + "'");
  return build_convergence(config);
}

RunConfig load_run_config(const std::filesystem::path& path, const RunConfig& base) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open config " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  std::vector<std::string> problems;
  RunConfig c = apply_config_text(base, ss.str(), problems);
  throw_if_problems(problems, "config " + path.string());
  return c;
}

}  // namespace ssp
