#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "dqaoa/problem.hpp"

namespace dqaoa {

/// Parse the line-oriented problem format:
///
///     # comment
///     max: 2 x1 + 5 x2 + 8 x1*x2 + 7 x1*x3*x4
///     8 x1 + 6 x2 + 5 x3 + 3 x4 <= 16
///
/// Variables receive dense indices in first-appearance order. `>=` constraints are negated
/// into `<=` form. Throws ParseError on malformed input.
ConstrainedProblem parse_problem(std::string_view source);

/// Render a problem back into the text format (round-trips through parse_problem).
std::string format_problem(const ConstrainedProblem& problem);

nlohmann::json problem_to_json(const ConstrainedProblem& problem);
ConstrainedProblem problem_from_json(const nlohmann::json& j);

/// True if the text looks like a problem file (has a min:/max: header line).
bool looks_like_problem(std::string_view source);

}  // namespace dqaoa
