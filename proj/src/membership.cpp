#include "hlskit/membership.hpp"

namespace hlskit {

std::string_view rule_name(Rule rule) noexcept {
  switch (rule) {
    case Rule::Base: return "BASE";
    case Rule::T1: return "T1";
    case Rule::T2: return "T2";
    case Rule::T3: return "T3";
    case Rule::T4: return "T4";
    case Rule::T5: return "T5";
    case Rule::O1: return "O1";
    case Rule::O2: return "O2";
    case Rule::O3: return "O3";
    case Rule::O4: return "O4";
    case Rule::O5: return "O5";
    case Rule::Fail: return "FAIL";
  }
  return "?";
}

std::vector<std::string> MembershipReport::rules() const {
  std::vector<std::string> out;
  out.reserve(trace.size());
  for (const auto& step : trace) out.emplace_back(rule_name(step.rule));
  return out;
}

std::string MembershipReport::rule_chain(char sep) const {
  std::string out;
  for (const auto& step : trace) {
    if (!out.empty()) out += sep;
    out += rule_name(step.rule);
  }
  return out;
}

nlohmann::json to_json(const MembershipReport& report, std::string_view rule_namespace) {
  nlohmann::json witnesses = nlohmann::json::array();
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& step : report.trace) {
    nlohmann::json w = step.witness ? nlohmann::json(*step.witness) : nlohmann::json(nullptr);
    witnesses.push_back(w);
    trace.push_back({{"depth", step.depth},
                     {"rule", std::string(rule_name(step.rule))},
                     {"witness", w},
                     {"reason", step.reason}});
  }
  return {{"namespace", std::string(rule_namespace)},
          {"member", report.member},
          {"rules", report.rules()},
          {"witnesses", witnesses},
          {"reason", report.reason},
          {"trace", trace}};
}

}  // namespace hlskit
