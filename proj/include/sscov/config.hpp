#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "sscov/ensemble.hpp"

namespace sscov::config {

using Section = std::map<std::string, std::string>;

/// Flat key = value file with [section] headers; '#' and ';' start comment
/// lines; surrounding double quotes on values are dropped.
struct ConfigFile {
  std::string path;
  std::map<std::string, Section> sections;

  /// Throws ConfigError when the section is absent.
  const Section& section(const std::string& name) const;
  /// Directory of the file, for resolving relative paths.
  std::string directory() const;
};

ConfigFile read_config(const std::string& path);
ConfigFile parse_config(const std::string& text, const std::string& origin = "<string>");

/// Builds an EnsembleConfig from a [simulate] section. Keys outside the
/// ensemble set and `extra_keys` are rejected. Relative grid paths resolve
/// against `base_dir`.
ensemble::EnsembleConfig ensemble_config(const Section& s, const std::string& base_dir = "",
                                         const std::set<std::string>& extra_keys = {});

/// "[1, 2.5, 3]" or "1,2.5,3".
std::vector<double> parse_list(const std::string& text, const std::string& key);
bool parse_bool(const std::string& text, const std::string& key);

}  // namespace sscov::config
