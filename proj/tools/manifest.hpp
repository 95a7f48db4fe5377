#pragma once
#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"
#include "json.hpp"

namespace hbo::cli {

std::string fnv1a_hex(const std::string& s);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

// %.17g, the shortest form that round-trips
std::string num(double v);
std::string num(long long v);
inline std::string num(int v) { return num(static_cast<long long>(v)); }
inline std::string num(std::size_t v) { return num(static_cast<long long>(v)); }

class RunContext {
 public:
  RunContext(const std::string& command, const Config& cfg);

  const std::string& run_id() const { return run_id_; }
  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path(const std::string& name) const { return dir_ / name; }

  // every CSV opens with "# run_id=<id>"
  void write_csv(const std::string& name, const CsvTable& t);
  void add_output(const std::string& name) { outputs_.push_back(name); }

  nlohmann::json grid = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();

  void write_manifest(const std::string& status);
  const std::vector<std::string>& outputs() const { return outputs_; }

 private:
  std::string command_, run_id_;
  Config cfg_;
  std::filesystem::path dir_;
  std::vector<std::string> outputs_;
  std::chrono::steady_clock::time_point start_;
  std::string started_;
};

}  // namespace hbo::cli
