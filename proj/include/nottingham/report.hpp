#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace nott {

struct ReportItem {
  std::string id;
  std::string verdict;  // "pass" | "fail" | "error"
  std::string detail;
  nlohmann::json data;  // optional structured payload

  bool ok() const { return verdict == "pass"; }
};

// Machine-readable outcome of one CLI run: parameter echo, per-item verdicts,
// seed, timing.  JSON form round-trips; the timing field is excluded from
// determinism comparisons.
struct RunReport {
  std::string command;
  std::string suite;
  nlohmann::json params;
  std::uint64_t seed = 0;
  std::vector<ReportItem> items;
  double timing_ms = 0.0;

  bool overall_pass() const {
    for (const auto& it : items)
      if (!it.ok()) return false;
    return true;
  }

  int exit_code() const { return overall_pass() ? 0 : 1; }

  void add(std::string id, bool pass, std::string detail = "", nlohmann::json data = nullptr) {
    items.push_back({std::move(id), pass ? "pass" : "fail", std::move(detail), std::move(data)});
  }
  void add_error(std::string id, std::string detail) {
    items.push_back({std::move(id), "error", std::move(detail), nullptr});
  }

  nlohmann::json to_json(bool include_timing = true) const {
    nlohmann::json j;
    j["command"] = command;
    j["suite"] = suite;
    j["params"] = params;
    j["seed"] = seed;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& it : items) {
      nlohmann::json e;
      e["id"] = it.id;
      e["verdict"] = it.verdict;
      e["detail"] = it.detail;
      if (!it.data.is_null()) e["data"] = it.data;
      arr.push_back(std::move(e));
    }
    j["items"] = std::move(arr);
    j["overall"] = overall_pass() ? "pass" : "fail";
    if (include_timing) j["timing_ms"] = timing_ms;
    return j;
  }

  static RunReport from_json(const nlohmann::json& j) {
    RunReport r;
    r.command = j.at("command").get<std::string>();
    r.suite = j.at("suite").get<std::string>();
    r.params = j.at("params");
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& e : j.at("items")) {
      ReportItem it;
      it.id = e.at("id").get<std::string>();
      it.verdict = e.at("verdict").get<std::string>();
      it.detail = e.at("detail").get<std::string>();
      if (e.contains("data")) it.data = e.at("data");
      r.items.push_back(std::move(it));
    }
    if (j.contains("timing_ms")) r.timing_ms = j.at("timing_ms").get<double>();
    return r;
  }

  void write_text(std::ostream& os) const {
    os << command << "\n";
    for (const auto& it : items) {
      os << "  [" << it.verdict << "] " << it.id;
      if (!it.detail.empty()) os << "  " << it.detail;
      os << "\n";
    }
    std::size_t npass = 0, nfail = 0, nerr = 0;
    for (const auto& it : items) {
      if (it.verdict == "pass")
        ++npass;
      else if (it.verdict == "fail")
        ++nfail;
      else
        ++nerr;
    }
    os << (overall_pass() ? "PASS" : "FAIL") << "  (" << npass << " pass, " << nfail
       << " fail, " << nerr << " error; seed " << seed << ")\n";
  }
};

}  // namespace nott
