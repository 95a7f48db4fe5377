#include "manifest.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>

#include "hbo/error.hpp"

namespace hbo::cli {

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num(long long v) { return std::to_string(v); }

namespace {

std::string utc_stamp(const char* fmt) {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, fmt, &tm);
  return buf;
}

}  // namespace

RunContext::RunContext(const std::string& command, const Config& cfg)
    : command_(command), cfg_(cfg), start_(std::chrono::steady_clock::now()) {
  run_id_ = fnv1a_hex(command + "\n" + cfg.canonical({"out"}));
  started_ = utc_stamp("%Y-%m-%dT%H:%M:%SZ");
  const std::filesystem::path parent = cfg.text("out");
  const std::string base = command + "-" + utc_stamp("%Y%m%dT%H%M%S") + "-" + run_id_.substr(0, 8);
  dir_ = parent / base;
  for (int k = 1; std::filesystem::exists(dir_); ++k) dir_ = parent / (base + "." + std::to_string(k));
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw ValidationError("cannot create run directory " + dir_.string() + ": " + ec.message());
}

void RunContext::write_csv(const std::string& name, const CsvTable& t) {
  std::ofstream os(path(name), std::ios::binary);
  if (!os) throw ValidationError("cannot write " + path(name).string());
  os << "# run_id=" << run_id_ << "\n";
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << "\n";
  };
  line(t.header);
  for (auto& r : t.rows) line(r);
  add_output(name);
}

void RunContext::write_manifest(const std::string& status) {
  nlohmann::json m;
  m["experiment"] = command_;
  m["run_id"] = run_id_;
  nlohmann::json params = nlohmann::json::object();
  for (auto& kv : cfg_.values) params[kv.first] = kv.second;
  m["parameters"] = params;
  m["seed"] = cfg_.integer("seed");
  m["grid"] = grid;
  m["outputs"] = outputs_;
  m["results"] = results;
  m["status"] = status;
  m["started_utc"] = started_;
  m["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  std::ofstream os(path("manifest.json"));
  os << m.dump(2) << "\n";
}

}  // namespace hbo::cli
