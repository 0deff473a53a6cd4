// config.cpp
#include "pagecurve/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "pagecurve/csv.hpp"
#include "pagecurve/entanglement.hpp"
#include "pagecurve/errors.hpp"

namespace pagecurve {

EngineKind parse_engine(const std::string& text) {
  if (text == "auto") return EngineKind::Auto;
  if (text == "free") return EngineKind::Free;
  if (text == "ed") return EngineKind::Ed;
  throw ValidationError("engine", "expected free, ed or auto, got '" + text + "'");
}

std::string engine_name(EngineKind kind) {
  switch (kind) {
    case EngineKind::Free: return "free";
    case EngineKind::Ed: return "ed";
    default: return "auto";
  }
}

int RunConfig::environment_sites(int m) const {
  if (L) return *L - m;
  return N.value_or(0);
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

double to_double(const std::string& s, int line, const std::string& key) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(line, key + ": not a number: '" + s + "'");
  if (!std::isfinite(v)) throw ParseError(line, key + ": must be finite");
  return v;
}

long long to_int(const std::string& s, int line, const std::string& key) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(line, key + ": not an integer: '" + s + "'");
  return v;
}

std::vector<double> to_doubles(const std::string& s, int line, const std::string& key) {
  std::vector<double> out;
  for (const auto& item : split_list(s)) out.push_back(to_double(item, line, key));
  if (out.empty()) throw ParseError(line, key + ": empty list");
  return out;
}

std::vector<int> to_sizes(const std::string& s, int line, const std::string& key) {
  std::vector<int> out;
  for (const auto& item : split_list(s)) {
    const auto dots = item.find("..");
    if (dots != std::string::npos) {
      const long long lo = to_int(trim(item.substr(0, dots)), line, key);
      const long long hi = to_int(trim(item.substr(dots + 2)), line, key);
      if (hi < lo) throw ParseError(line, key + ": empty range '" + item + "'");
      for (long long m = lo; m <= hi; ++m) out.push_back(static_cast<int>(m));
    } else {
      out.push_back(static_cast<int>(to_int(item, line, key)));
    }
  }
  if (out.empty()) throw ParseError(line, key + ": empty list");
  return out;
}

int positive_int(const std::string& s, int line, const std::string& key) {
  const long long v = to_int(s, line, key);
  if (v < 1 || v > 1'000'000'000) throw ParseError(line, key + ": must be a positive integer");
  return static_cast<int>(v);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::map<std::string, int> seen;
  using Setter = std::function<void(const std::string&, int)>;
  const std::map<std::string, Setter> setters{
      {"M", [&](const std::string& v, int ln) { c.M = to_sizes(v, ln, "M"); }},
      {"N", [&](const std::string& v, int ln) { c.N = static_cast<int>(to_int(v, ln, "N")); }},
      {"L", [&](const std::string& v, int ln) { c.L = static_cast<int>(to_int(v, ln, "L")); }},
      {"V", [&](const std::string& v, int ln) { c.V = to_doubles(v, ln, "V"); }},
      {"g", [&](const std::string& v, int ln) { c.g = to_doubles(v, ln, "g"); }},
      {"t_s", [&](const std::string& v, int ln) { c.t_s = to_double(v, ln, "t_s"); }},
      {"t_e", [&](const std::string& v, int ln) { c.t_e = to_double(v, ln, "t_e"); }},
      {"dt", [&](const std::string& v, int ln) { c.dt = to_double(v, ln, "dt"); }},
      {"t_max", [&](const std::string& v, int ln) { c.t_max = to_double(v, ln, "t_max"); }},
      {"engine",
       [&](const std::string& v, int ln) {
         try {
           c.engine = parse_engine(v);
         } catch (const ValidationError& e) {
           throw ParseError(ln, e.what());
         }
       }},
      {"topk", [&](const std::string& v, int ln) { c.topk = positive_int(v, ln, "topk"); }},
      {"renyi",
       [&](const std::string& v, int ln) {
         try {
           c.renyi = parse_renyi_orders(v);
         } catch (const ValidationError& e) {
           throw ParseError(ln, e.what());
         }
       }},
      {"output",
       [&](const std::string& v, int ln) {
         if (v.empty()) throw ParseError(ln, "output: empty path");
         c.output = v;
       }},
      {"jobs", [&](const std::string& v, int ln) { c.jobs = positive_int(v, ln, "jobs"); }},
      {"max_states",
       [&](const std::string& v, int ln) {
         const long long n = to_int(v, ln, "max_states");
         if (n < 1) throw ParseError(ln, "max_states: must be >= 1");
         c.max_states = static_cast<std::uint64_t>(n);
       }},
      {"krylov_tol",
       [&](const std::string& v, int ln) {
         c.krylov.tolerance = to_double(v, ln, "krylov_tol");
         if (!(c.krylov.tolerance > 0.0)) throw ParseError(ln, "krylov_tol: must be > 0");
       }},
      {"krylov_min_dim",
       [&](const std::string& v, int ln) { c.krylov.min_dim = positive_int(v, ln, "krylov_min_dim"); }},
      {"krylov_max_dim",
       [&](const std::string& v, int ln) { c.krylov.max_dim = positive_int(v, ln, "krylov_max_dim"); }},
      {"checkpoint_every",
       [&](const std::string& v, int ln) {
         const long long n = to_int(v, ln, "checkpoint_every");
         if (n < 0) throw ParseError(ln, "checkpoint_every: must be >= 0");
         c.checkpoint_every = n;
       }},
      {"collapse_window",
       [&](const std::string& v, int ln) {
         c.analysis.collapse_window = to_double(v, ln, "collapse_window");
         if (!(c.analysis.collapse_window > 0.0)) throw ParseError(ln, "collapse_window: must be > 0");
       }},
      {"beta_window",
       [&](const std::string& v, int ln) {
         c.analysis.beta_window = to_double(v, ln, "beta_window");
         if (!(c.analysis.beta_window > 0.0)) throw ParseError(ln, "beta_window: must be > 0");
       }},
      {"kink_pairs",
       [&](const std::string& v, int ln) { c.analysis.kink_pairs = positive_int(v, ln, "kink_pairs"); }},
  };

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) throw ParseError(line, "missing key");
    const auto it = setters.find(key);
    if (it == setters.end()) throw ParseError(line, "unknown key '" + key + "'");
    if (auto prev = seen.find(key); prev != seen.end())
      throw ParseError(line, "key '" + key + "' already set on line " + std::to_string(prev->second));
    seen[key] = line;
    if (value.empty()) throw ParseError(line, key + ": missing value");
    it->second(value, line);
  }

  if (c.M.empty()) throw ParseError(0, "missing required key 'M'");
  if (c.g.empty()) throw ParseError(0, "missing required key 'g'");
  if (!c.L && !c.N) throw ParseError(0, "one of 'L' or 'N' is required");
  if (c.L && c.N) {
    if (c.M.size() != 1 || *c.L != c.M.front() + *c.N)
      throw ParseError(seen["L"], "L must equal M + N when both are given");
    c.N.reset();
  }
  if (c.krylov.max_dim < c.krylov.min_dim)
    throw ParseError(seen.count("krylov_max_dim") ? seen["krylov_max_dim"] : 0,
                     "krylov_max_dim must be >= krylov_min_dim");
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_config(const RunConfig& c) {
  std::ostringstream o;
  auto list = [](const auto& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) s += ",";
      s += format_number(static_cast<double>(values[i]));
    }
    return s;
  };
  o << "M = " << list(c.M) << '\n';
  if (c.L) o << "L = " << *c.L << '\n';
  if (c.N) o << "N = " << *c.N << '\n';
  o << "V = " << list(c.V) << '\n';
  o << "g = " << list(c.g) << '\n';
  o << "t_s = " << format_number(c.t_s) << '\n';
  o << "t_e = " << format_number(c.t_e) << '\n';
  o << "dt = " << format_number(c.dt) << '\n';
  o << "t_max = " << format_number(c.t_max) << '\n';
  o << "engine = " << engine_name(c.engine) << '\n';
  o << "topk = " << c.topk << '\n';
  o << "renyi = " << list(c.renyi) << '\n';
  o << "output = " << c.output.string() << '\n';
  o << "jobs = " << c.jobs << '\n';
  o << "max_states = " << c.max_states << '\n';
  o << "krylov_tol = " << format_number(c.krylov.tolerance) << '\n';
  o << "krylov_min_dim = " << c.krylov.min_dim << '\n';
  o << "krylov_max_dim = " << c.krylov.max_dim << '\n';
  o << "checkpoint_every = " << c.checkpoint_every << '\n';
  o << "collapse_window = " << format_number(c.analysis.collapse_window) << '\n';
  o << "beta_window = " << format_number(c.analysis.beta_window) << '\n';
  o << "kink_pairs = " << c.analysis.kink_pairs << '\n';
  return o.str();
}

}  // namespace pagecurve
