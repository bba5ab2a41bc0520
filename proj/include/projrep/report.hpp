#pragma once

#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace projrep {

enum class CheckStatus { Pass, Fail, Inconclusive };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Inconclusive: return "inconclusive";
  }
  return "fail";
}

struct CheckRecord {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  nlohmann::ordered_json witness;
  double residual = 0.0;
};

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a64(const std::string& bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// Ordered, deterministic command report. Exit code 0 iff no fail record.
class Report {
 public:
  Report(std::string command, std::string digest) : command_(std::move(command)), digest_(std::move(digest)) {}

  void add(std::string name, CheckStatus status, double residual = 0.0,
           nlohmann::ordered_json witness = nlohmann::ordered_json::object()) {
    checks_.push_back({std::move(name), status, std::move(witness), residual});
  }
  void check(std::string name, bool ok, double residual = 0.0,
             nlohmann::ordered_json witness = nlohmann::ordered_json::object()) {
    add(std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, residual, std::move(witness));
  }

  nlohmann::ordered_json& result() { return result_; }
  const std::vector<CheckRecord>& checks() const { return checks_; }
  const std::string& command() const { return command_; }

  std::size_t count(CheckStatus s) const {
    std::size_t n = 0;
    for (const auto& c : checks_) n += c.status == s;
    return n;
  }
  int exit_code() const { return count(CheckStatus::Fail) == 0 ? 0 : 1; }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command_;
    j["inputs_digest"] = digest_;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks_) {
      j["checks"].push_back({{"name", c.name}, {"status", to_string(c.status)}, {"witness", c.witness},
                             {"residual", c.residual}});
    }
    j["summary"] = {{"pass", count(CheckStatus::Pass)},
                    {"fail", count(CheckStatus::Fail)},
                    {"inconclusive", count(CheckStatus::Inconclusive)},
                    {"exit_code", exit_code()}};
    j["result"] = result_.is_null() ? nlohmann::ordered_json::object() : result_;
    return j;
  }

  std::string to_text() const {
    std::ostringstream os;
    os << "command: " << command_ << "\ninputs_digest: " << digest_ << "\n";
    for (const auto& c : checks_) {
      os << "[" << to_string(c.status) << "] " << c.name << "  residual=" << c.residual;
      if (!c.witness.empty()) os << "  witness=" << c.witness.dump();
      os << "\n";
    }
    os << "result: " << (result_.is_null() ? "{}" : result_.dump()) << "\n";
    os << "summary: pass=" << count(CheckStatus::Pass) << " fail=" << count(CheckStatus::Fail)
       << " inconclusive=" << count(CheckStatus::Inconclusive) << " exit=" << exit_code() << "\n";
    return os.str();
  }

 private:
  std::string command_;
  std::string digest_;
  std::vector<CheckRecord> checks_;
  nlohmann::ordered_json result_;
};

}  // namespace projrep
