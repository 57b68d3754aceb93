#include "psh/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "psh/matrix.hpp"

namespace psh {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError("'" + key + "': expected an integer, got '" + v + "'");
  return out;
}

std::vector<std::string> words(const std::string& v) {
  std::istringstream is(v);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

}  // namespace

RingLevel RunConfig::ring() const { return RingLevel::make(branch, p, f, level, poly); }

void RunConfig::validate() const {
  try {
    (void)ring();
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("ring: ") + e.what());
  }
  if (n < 2 || n > kMaxDim) throw ConfigError("group.n must be in [2, " + std::to_string(kMaxDim) + "]");
  if (samples <= 0) throw ConfigError("run.samples must be positive");
  if (budget == 0) throw ConfigError("run.budget must be positive");
  if (dc_level == 0 || dc_level > level) throw ConfigError("double_cosets.m must be in [1, ring.level]");
  for (const auto& c : characters)
    if (c.conductor < 0 || c.conductor > level) throw ConfigError("characters: conductor out of range");
  if (!characters.empty() && static_cast<int>(characters.size()) != n)
    throw ConfigError("characters.select needs exactly n selectors");
  if (arch.real_max_degree < 0 || arch.complex_max_total < 0 || arch.real_max_n < 2 || arch.complex_max_n < 2)
    throw ConfigError("arch bounds out of range");
}

RunConfig parse_config(std::istream& in) {
  RunConfig c;
  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter> setters = {
      {"ring.branch",
       [&](const std::string&, const std::string& v) {
         try {
           c.branch = parse_branch(v);
         } catch (const ParameterError& e) {
           throw ConfigError(e.what());
         }
       }},
      {"ring.p", [&](const std::string& k, const std::string& v) { c.p = parse_number<int>(k, v); }},
      {"ring.f", [&](const std::string& k, const std::string& v) { c.f = parse_number<int>(k, v); }},
      {"ring.poly",
       [&](const std::string& k, const std::string& v) {
         c.poly.clear();
         for (const auto& w : words(v)) c.poly.push_back(parse_number<int>(k, w));
       }},
      {"ring.level", [&](const std::string& k, const std::string& v) { c.level = parse_number<int>(k, v); }},
      {"group.n", [&](const std::string& k, const std::string& v) { c.n = parse_number<int>(k, v); }},
      {"characters.select",
       [&](const std::string& k, const std::string& v) {
         c.characters.clear();
         for (const auto& w : words(v)) {
           const auto colon = w.find(':');
           if (colon == std::string::npos) throw ConfigError("'" + k + "': expected conductor:index, got '" + w + "'");
           c.characters.push_back({parse_number<int>(k, w.substr(0, colon)),
                                   parse_number<std::size_t>(k, w.substr(colon + 1))});
         }
       }},
      {"double_cosets.m", [&](const std::string& k, const std::string& v) { c.dc_level = parse_number<int>(k, v); }},
      {"arch.real_max_degree",
       [&](const std::string& k, const std::string& v) { c.arch.real_max_degree = parse_number<int>(k, v); }},
      {"arch.real_max_n", [&](const std::string& k, const std::string& v) { c.arch.real_max_n = parse_number<int>(k, v); }},
      {"arch.complex_max_total",
       [&](const std::string& k, const std::string& v) { c.arch.complex_max_total = parse_number<int>(k, v); }},
      {"arch.complex_max_n",
       [&](const std::string& k, const std::string& v) { c.arch.complex_max_n = parse_number<int>(k, v); }},
      {"run.seed", [&](const std::string& k, const std::string& v) { c.seed = parse_number<std::uint64_t>(k, v); }},
      {"run.samples", [&](const std::string& k, const std::string& v) { c.samples = parse_number<int>(k, v); }},
      {"run.budget", [&](const std::string& k, const std::string& v) { c.budget = parse_number<std::uint64_t>(k, v); }},
      {"run.out", [&](const std::string&, const std::string& v) { c.out = v; }},
  };
  std::set<std::string> sections;
  for (const auto& [k, s] : setters) sections.insert(k.substr(0, k.find('.')));

  std::string section;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!sections.count(section)) throw ConfigError(where + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
    if (section.empty()) throw ConfigError(where + "key outside of any section");
    const std::string key = section + "." + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(where + "unknown key '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError(where + "duplicate key '" + key + "'");
    try {
      it->second(key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  if (c.dc_level < 0) c.dc_level = c.level;
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse_config(in);
}

}  // namespace psh
