#pragma once
#include <map>
#include <string>
#include <vector>

namespace hbo::cli {

enum class KeyType { integer, real, flag, text, real_list };

struct KeySpec {
  std::string name;
  KeyType type;
  std::string default_value;
  std::string help;
};

struct ConfigError {
  std::string key, value, constraint;
  std::string message() const;
};

class Config {
 public:
  std::map<std::string, std::string> values;

  const std::string& text(const std::string& k) const;
  double real(const std::string& k) const;
  int integer(const std::string& k) const;
  bool flag(const std::string& k) const;
  std::vector<double> list(const std::string& k) const;
  // sorted key=value lines, the canonical form hashed into the run id
  std::string canonical(const std::vector<std::string>& exclude = {}) const;
};

struct ValidationResult {
  Config config;
  std::vector<ConfigError> errors;
  bool ok() const { return errors.empty(); }
};

const std::vector<std::string>& command_names();
const std::vector<KeySpec>& schema(const std::string& command);

// flat "key = value" lines, '#' starts a comment
std::map<std::string, std::string> parse_kv_text(const std::string& text);
std::map<std::string, std::string> parse_kv_file(const std::string& path);

// fills defaults, checks types and parameter domains
ValidationResult validate_config(const std::string& command, const std::map<std::string, std::string>& raw);
ValidationResult validate_config_file(const std::string& command, const std::string& path);

}  // namespace hbo::cli
