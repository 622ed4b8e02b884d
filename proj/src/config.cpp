#include "sobolev/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "sobolev/io.hpp"

namespace sobolev {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

template <class T>
T parse_number(const std::string& v, int line, const std::string& key) {
  T x{};
  const auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ConfigError(line, "'" + v + "' is not a valid value for " + key);
  if constexpr (std::is_floating_point_v<T>)
    if (!std::isfinite(x)) throw ConfigError(line, key + " must be finite");
  return x;
}

void require(bool ok, int line, const std::string& msg) {
  if (!ok) throw ConfigError(line, msg);
}

}  // namespace

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::CrossCheck1D: return "CrossCheck1D";
    case Experiment::AdjointSmoothing2D: return "AdjointSmoothing2D";
    case Experiment::RadonRecon: return "RadonRecon";
    case Experiment::NormEquivalence: return "NormEquivalence";
    case Experiment::KernelAsymptotics: return "KernelAsymptotics";
  }
  return "?";
}

Experiment experiment_from_string(const std::string& name) {
  for (Experiment e : {Experiment::CrossCheck1D, Experiment::AdjointSmoothing2D, Experiment::RadonRecon,
                       Experiment::NormEquivalence, Experiment::KernelAsymptotics})
    if (to_string(e) == name) return e;
  throw InvalidArgument("unknown experiment '" + name + "'");
}

std::string to_string(PhantomChoice p) {
  switch (p) {
    case PhantomChoice::Both: return "both";
    case PhantomChoice::SheppLogan: return "shepp_logan";
    case PhantomChoice::SmoothBumps: return "smooth";
  }
  return "?";
}

RunConfig default_config(Experiment e) {
  RunConfig c;
  c.experiment = e;
  switch (e) {
    case Experiment::CrossCheck1D:
      c.s = 1.0;
      c.grid = 1024;
      break;
    case Experiment::AdjointSmoothing2D:
      c.s = 1.0;
      c.grid = 128;
      c.backend = Backend::Bvp;
      break;
    case Experiment::RadonRecon: break;
    case Experiment::NormEquivalence:
      c.s = 1.0;
      c.kmax = 64;
      break;
    case Experiment::KernelAsymptotics: c.s = 1.0; break;
  }
  return c;
}

RunConfig parse_config(const std::string& text, std::optional<Experiment> fallback) {
  std::map<std::string, std::pair<std::string, int>> kv;
  std::istringstream in(text);
  std::string raw;
  for (int line = 1; std::getline(in, raw); ++line) {
    const std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    require(eq != std::string::npos, line, "expected key = value");
    const std::string key = trim(s.substr(0, eq)), value = trim(s.substr(eq + 1));
    require(!key.empty(), line, "empty key");
    require(!value.empty(), line, "empty value for " + key);
    require(kv.emplace(key, std::pair{value, line}).second, line, "duplicate key " + key);
  }

  std::optional<Experiment> exp = fallback;
  if (auto it = kv.find("experiment"); it != kv.end()) {
    try {
      exp = experiment_from_string(it->second.first);
    } catch (const InvalidArgument& e) {
      throw ConfigError(it->second.second, e.what());
    }
  }
  if (!exp) throw ConfigError(0, "missing required key: experiment");
  RunConfig c = default_config(*exp);

  using Setter = std::function<void(const std::string&, int)>;
  const std::map<std::string, Setter> setters = {
      {"experiment", [](const std::string&, int) {}},
      {"backend",
       [&](const std::string& v, int l) {
         try {
           c.backend = backend_from_string(v);
         } catch (const InvalidArgument& e) {
           throw ConfigError(l, e.what());
         }
       }},
      {"s",
       [&](const std::string& v, int l) {
         c.s = parse_number<double>(v, l, "s");
         require(c.s >= 0 && c.s <= 10, l, "s must lie in [0, 10]");
       }},
      {"grid",
       [&](const std::string& v, int l) {
         c.grid = parse_number<int>(v, l, "grid");
         require(c.grid >= 16 && c.grid <= 8192 && c.grid % 2 == 0, l, "grid must be even and in [16, 8192]");
       }},
      {"kmax",
       [&](const std::string& v, int l) {
         c.kmax = parse_number<int>(v, l, "kmax");
         require(c.kmax >= 1 && c.kmax <= 4096, l, "kmax must lie in [1, 4096]");
       }},
      {"offsets",
       [&](const std::string& v, int l) {
         c.offsets = parse_number<int>(v, l, "offsets");
         require(c.offsets >= 1, l, "offsets must be >= 1");
       }},
      {"angles",
       [&](const std::string& v, int l) {
         c.angles = parse_number<int>(v, l, "angles");
         require(c.angles >= 1, l, "angles must be >= 1");
       }},
      {"phantom",
       [&](const std::string& v, int l) {
         for (PhantomChoice p : {PhantomChoice::Both, PhantomChoice::SheppLogan, PhantomChoice::SmoothBumps})
           if (to_string(p) == v) {
             c.phantom = p;
             return;
           }
         throw ConfigError(l, "phantom must be both, shepp_logan or smooth");
       }},
      {"noise",
       [&](const std::string& v, int l) {
         c.noise = parse_number<double>(v, l, "noise");
         require(c.noise > 0 && c.noise <= 1, l, "noise must lie in (0, 1]");
       }},
      {"tau",
       [&](const std::string& v, int l) {
         c.tau = parse_number<double>(v, l, "tau");
         require(c.tau > 1, l, "tau must exceed 1");
       }},
      {"step",
       [&](const std::string& v, int l) {
         c.step = parse_number<double>(v, l, "step");
         require(c.step >= 0, l, "step must be >= 0 (0 selects the default)");
       }},
      {"max_iter",
       [&](const std::string& v, int l) {
         c.max_iter = parse_number<int>(v, l, "max_iter");
         require(c.max_iter >= 1, l, "max_iter must be >= 1");
       }},
      {"seed", [&](const std::string& v, int l) { c.seed = parse_number<std::uint64_t>(v, l, "seed"); }},
      {"out", [&](const std::string& v, int) { c.out = v; }},
  };

  // report problems in file order
  std::map<int, std::pair<std::string, std::string>> by_line;
  for (const auto& [k, vl] : kv) by_line.emplace(vl.second, std::pair{k, vl.first});
  for (const auto& [line, kvp] : by_line) {
    const auto it = setters.find(kvp.first);
    if (it == setters.end()) throw ConfigError(line, "unknown key " + kvp.first);
    it->second(kvp.second, line);
  }
  return c;
}

std::string print_config(const RunConfig& c) {
  std::ostringstream os;
  os << "experiment = " << to_string(c.experiment) << '\n'
     << "backend = " << to_string(c.backend) << '\n'
     << "s = " << format_double(c.s) << '\n'
     << "grid = " << c.grid << '\n'
     << "kmax = " << c.kmax << '\n'
     << "offsets = " << c.offsets << '\n'
     << "angles = " << c.angles << '\n'
     << "phantom = " << to_string(c.phantom) << '\n'
     << "noise = " << format_double(c.noise) << '\n'
     << "tau = " << format_double(c.tau) << '\n'
     << "step = " << format_double(c.step) << '\n'
     << "max_iter = " << c.max_iter << '\n'
     << "seed = " << c.seed << '\n'
     << "out = " << c.out << '\n';
  return os.str();
}

}  // namespace sobolev
