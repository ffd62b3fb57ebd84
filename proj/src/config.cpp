// Copyright 2026 The poroflux Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "poroflux/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "poroflux/errors.hpp"

namespace poroflux {

namespace pt = boost::property_tree;

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::Resolvent: return "resolvent";
    case Experiment::Transient: return "transient";
    case Experiment::Mms: return "mms";
    case Experiment::C0Study: return "c0study";
    case Experiment::Infsup: return "infsup";
    case Experiment::Decay: return "decay";
  }
  return "unknown";
}

Experiment parse_experiment(const std::string& s) {
  for (Experiment e : {Experiment::Resolvent, Experiment::Transient, Experiment::Mms, Experiment::C0Study,
                       Experiment::Infsup, Experiment::Decay})
    if (s == to_string(e)) return e;
  throw ConfigError("unknown experiment '" + s + "' (expected resolvent, transient, mms, c0study, infsup or decay)");
}

std::string to_string(InitialKind k) {
  switch (k) {
    case InitialKind::Zero: return "zero";
    case InitialKind::Random: return "random";
    case InitialKind::Smooth: return "smooth";
  }
  return "unknown";
}

InitialKind parse_initial(const std::string& s) {
  for (InitialKind k : {InitialKind::Zero, InitialKind::Random, InitialKind::Smooth})
    if (s == to_string(k)) return k;
  throw ConfigError("unknown initial data '" + s + "' (expected zero, random or smooth)");
}

void RunConfig::validate() const {
  grid.validate();
  materials.validate();
  time.validate();
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ParameterError("eps must be > 0, got " + std::to_string(eps));
  if (c0_levels < 1) throw ParameterError("c0_levels must be >= 1");
  if (samples < 1) throw ParameterError("samples must be >= 1");
  if (max_dofs < 1) throw ParameterError("max_dofs must be >= 1");
  for (int n : refinements)
    if (n < 1) throw ParameterError("refinement levels must be >= 1, got " + std::to_string(n));
}

SpaceOptions RunConfig::space_options() const {
  SpaceOptions o;
  o.p_b = p_b;
  return o;
}

namespace {

double to_double(const std::string& key, const std::string& v) {
  std::istringstream is(v);
  is.imbue(std::locale::classic());
  double x;
  if (!(is >> x) || !(is >> std::ws).eof()) throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
  return x;
}

long long to_integer(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  if (x != std::floor(x) || std::abs(x) > 9e15) throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
  return static_cast<long long>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("key '" + key + "': expected true or false, got '" + v + "'");
}

std::vector<int> to_int_list(const std::string& key, const std::string& v) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(static_cast<int>(to_integer(key, item)));
  if (out.empty()) throw ConfigError("key '" + key + "': expected a comma-separated list");
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, std::map<std::string, Setter>>& setters() {
  static const std::map<std::string, std::map<std::string, Setter>> table = [] {
    std::map<std::string, std::map<std::string, Setter>> t;
    auto num = [](double MaterialParams::*field) {
      return [field](RunConfig& c, const std::string& k, const std::string& v) { c.materials.*field = to_double(k, v); };
    };
    t["grid"] = {
        {"dimension", [](RunConfig& c, auto& k, auto& v) { c.grid.dimension = static_cast<int>(to_integer(k, v)); }},
        {"n_lat", [](RunConfig& c, auto& k, auto& v) { c.grid.n_lat = static_cast<int>(to_integer(k, v)); }},
        {"n_b", [](RunConfig& c, auto& k, auto& v) { c.grid.n_b = static_cast<int>(to_integer(k, v)); }},
        {"n_f", [](RunConfig& c, auto& k, auto& v) { c.grid.n_f = static_cast<int>(to_integer(k, v)); }},
        {"p_b_element", [](RunConfig& c, auto&, auto& v) { c.p_b = parse_family(v); }},
    };
    t["materials"] = {
        {"rho_b", num(&MaterialParams::rho_b)}, {"rho_f", num(&MaterialParams::rho_f)},
        {"lambda", num(&MaterialParams::lambda)}, {"mu", num(&MaterialParams::mu)},
        {"alpha", num(&MaterialParams::alpha)}, {"c0", num(&MaterialParams::c0)},
        {"k", num(&MaterialParams::k)}, {"nu", num(&MaterialParams::nu)},
        {"beta", num(&MaterialParams::beta)},
    };
    t["time"] = {
        {"dt", [](RunConfig& c, auto& k, auto& v) { c.time.dt = to_double(k, v); }},
        {"T", [](RunConfig& c, auto& k, auto& v) { c.time.T = to_double(k, v); }},
        {"scheme", [](RunConfig& c, auto&, auto& v) { c.time.scheme = parse_scheme(v); }},
        {"output_stride",
         [](RunConfig& c, auto& k, auto& v) { c.time.output_stride = static_cast<int>(to_integer(k, v)); }},
    };
    t["experiment"] = {
        {"name", [](RunConfig& c, auto&, auto& v) { c.experiment = parse_experiment(v); }},
        {"seed",
         [](RunConfig& c, auto& k, auto& v) {
           const long long s = to_integer(k, v);
           if (s < 0) throw ConfigError("key '" + k + "': seed must be >= 0");
           c.seed = static_cast<std::uint64_t>(s);
         }},
        {"initial", [](RunConfig& c, auto&, auto& v) { c.initial = parse_initial(v); }},
        {"refinements", [](RunConfig& c, auto& k, auto& v) { c.refinements = to_int_list(k, v); }},
        {"eps", [](RunConfig& c, auto& k, auto& v) { c.eps = to_double(k, v); }},
        {"c0_levels", [](RunConfig& c, auto& k, auto& v) { c.c0_levels = static_cast<int>(to_integer(k, v)); }},
        {"samples", [](RunConfig& c, auto& k, auto& v) { c.samples = static_cast<int>(to_integer(k, v)); }},
        {"max_dofs", [](RunConfig& c, auto& k, auto& v) { c.max_dofs = static_cast<int>(to_integer(k, v)); }},
        {"write_fields", [](RunConfig& c, auto& k, auto& v) { c.write_fields = to_bool(k, v); }},
        {"write_svg", [](RunConfig& c, auto& k, auto& v) { c.write_svg = to_bool(k, v); }},
        {"output_dir", [](RunConfig& c, auto&, auto& v) { c.output_dir = v; }},
    };
    return t;
  }();
  return table;
}

void apply(RunConfig& c, const std::string& section, const std::string& key, const std::string& value) {
  const auto& t = setters();
  const auto sec = t.find(section);
  if (sec == t.end()) throw ConfigError("unknown section [" + section + "]");
  const auto it = sec->second.find(key);
  if (it == sec->second.end()) throw ConfigError("unknown key '" + key + "' in section [" + section + "]");
  it->second(c, section + "." + key, value);
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides) {
  pt::ptree tree;
  try {
    std::istringstream is(text);
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.message() + " at line " + std::to_string(e.line()));
  }
  RunConfig c;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty())
      throw ConfigError("key '" + section + "' appears outside any section");
    for (const auto& [key, value] : body) apply(c, section, key, value.data());
  }
  for (const char* required : {"grid", "materials"})
    if (tree.find(required) == tree.not_found())
      throw ConfigError(std::string("missing required section [") + required + "]");
  for (const std::string& o : overrides) {
    const auto eq = o.find('=');
    const auto dot = o.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq)
      throw ConfigError("override '" + o + "' must have the form section.key=value");
    apply(c, o.substr(0, dot), o.substr(dot + 1, eq - dot - 1), o.substr(eq + 1));
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides);
}

}  // namespace poroflux
