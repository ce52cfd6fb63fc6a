#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace hlskit {

enum class Rule { Base, T1, T2, T3, T4, T5, O1, O2, O3, O4, O5, Fail };

std::string_view rule_name(Rule rule) noexcept;

/// One decision taken at a recursion depth (0 = the full m-block spec).
struct TraceStep {
  int depth = 0;
  Rule rule = Rule::Fail;
  std::optional<int> witness;  // 1-based i_1 / i_2 for T2/T3 and O2/O3
  std::string reason;
};

/// Verdict of a recursive membership test plus the rule chain that produced it.
struct MembershipReport {
  bool member = false;
  std::vector<TraceStep> trace;

  /// First violated requirement for non-members; empty for members.
  std::string reason;

  std::vector<std::string> rules() const;
  std::string rule_chain(char sep = '>') const;
};

/// {"namespace", "member", "rules", "witnesses", "reason", "trace"}.
nlohmann::json to_json(const MembershipReport& report, std::string_view rule_namespace);

}  // namespace hlskit
