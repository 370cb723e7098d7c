#include "sscov/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "sscov/errors.hpp"

namespace sscov::config {

namespace {

std::string unquote(std::string v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
  return v;
}

long long parse_int(const std::string& text, const std::string& key) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(fmt::format("{}: '{}' is not an integer", key, text));
}

double parse_double(const std::string& text, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(fmt::format("{}: '{}' is not a number", key, text));
}

int parse_positive_int(const std::string& text, const std::string& key) {
  const long long v = parse_int(text, key);
  if (v < 0 || v > std::numeric_limits<int>::max()) {
    throw ConfigError(fmt::format("{}: {} is out of range", key, text));
  }
  return static_cast<int>(v);
}

}  // namespace

const Section& ConfigFile::section(const std::string& name) const {
  const auto it = sections.find(name);
  if (it == sections.end()) throw ConfigError(fmt::format("{}: missing [{}] section", path, name));
  return it->second;
}

std::string ConfigFile::directory() const {
  return std::filesystem::path(path).parent_path().string();
}

ConfigFile parse_config(const std::string& text, const std::string& origin) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("{}:{}: {}", origin, e.line(), e.message()));
  }
  ConfigFile out;
  out.path = origin;
  for (const auto& [name, node] : tree) {
    if (!node.data().empty()) throw ConfigError(fmt::format("{}: key '{}' outside any section", origin, name));
    Section& s = out.sections[name];
    for (const auto& [key, value] : node) s[key] = unquote(value.get_value<std::string>());
  }
  return out;
}

ConfigFile read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path);
}

std::vector<double> parse_list(const std::string& text, const std::string& key) {
  std::string body = text;
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') throw ConfigError(fmt::format("{}: unterminated list '{}'", key, text));
    body = body.substr(1, body.size() - 2);
  }
  std::vector<double> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = item.find_last_not_of(" \t");
    out.push_back(parse_double(item.substr(b, e - b + 1), key));
  }
  if (out.empty()) throw ConfigError(fmt::format("{}: empty list", key));
  return out;
}

bool parse_bool(const std::string& text, const std::string& key) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(fmt::format("{}: '{}' is not a boolean", key, text));
}

ensemble::EnsembleConfig ensemble_config(const Section& s, const std::string& base_dir,
                                         const std::set<std::string>& extra_keys) {
  using namespace ensemble;
  EnsembleConfig cfg;
  try {
  for (const auto& [key, value] : s) {
    if (key == "family") {
      cfg.family = parse_family(value);
    } else if (key == "p") {
      cfg.p = parse_positive_int(value, key);
    } else if (key == "n") {
      cfg.n = parse_positive_int(value, key);
    } else if (key == "t_n") {
      cfg.t_n = Truncation::parse(value);
    } else if (key == "seed") {
      const long long v = parse_int(value, key);
      if (v < 0) throw ConfigError("seed must be non-negative");
      cfg.seed = static_cast<std::uint64_t>(v);
    } else if (key == "replicates") {
      cfg.replicates = parse_positive_int(value, key);
    } else if (key == "threads") {
      cfg.threads = parse_positive_int(value, key);
    } else if (key == "lambda") {
      cfg.lambda = parse_double(value, key);
    } else if (key == "c_sequence") {
      cfg.c_sequence = parse_list(value, key);
    } else if (key == "alpha") {
      cfg.alpha = parse_double(value, key);
    } else if (key == "B") {
      cfg.B = parse_double(value, key);
    } else if (key == "profile") {
      std::string spec = value;
      if (spec.rfind("grid:", 0) == 0 && !base_dir.empty()) {
        const std::filesystem::path path(spec.substr(5));
        if (path.is_relative()) spec = "grid:" + (std::filesystem::path(base_dir) / path).string();
      }
      cfg.profile = ProfileSpec::parse(spec);
    } else if (key == "base") {
      cfg.base = parse_family(value);
    } else if (key == "max_moment" || key == "K") {
      cfg.max_moment = parse_positive_int(value, key);
    } else if (key == "bin_edges") {
      cfg.bin_edges = parse_list(value, key);
    } else if (!extra_keys.count(key)) {
      throw ConfigError(fmt::format("unknown key '{}'", key));
    }
  }
    cfg.validate();
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

}  // namespace sscov::config
