#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "fwb/experiments.hpp"
#include "fwb/version.hpp"

namespace fwb::detail {

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline nlohmann::json pr_json(double v) {
  // p/r can be infinite; JSON has no inf literal.
  if (std::isinf(v)) return "inf";
  return v;
}

inline nlohmann::json config_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["s"] = c.s;
  j["p"] = pr_json(c.p);
  j["r"] = pr_json(c.r);
  j["gamma"] = c.gamma;
  j["delta"] = c.delta;
  j["n_list"] = c.n_list;
  j["times"] = c.times;
  j["N"] = c.N;
  j["dt"] = c.dt;
  j["seed"] = c.seed;
  j["out"] = c.out;
  return j;
}

inline nlohmann::json fit_json(const std::optional<RateFit>& fit) {
  if (!fit) return nullptr;
  return nlohmann::json{{"slope", fit->slope},
                        {"intercept", fit->intercept},
                        {"r_squared", fit->r_squared}};
}

inline std::string flag_str(const std::optional<bool>& f) {
  if (!f) return "skipped";
  return *f ? "pass" : "fail";
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
}

inline void write_report_json(const ExperimentConfig& c, nlohmann::json body) {
  body["version"] = kVersion;
  body["config"] = config_json(c);
  write_text(std::filesystem::path(c.out) / "report.json", body.dump(2) + "\n");
}

}  // namespace fwb::detail
