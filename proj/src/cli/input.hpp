#pragma once

#include "divkit/distribution.hpp"

#include <string>

namespace divkit::cli {

/// Reads a distribution from JSON ({"alphabet_size": n, "masses": [...]} or a
/// bare array) or CSV (one mass per line). The format follows the extension
/// (.json, .csv) and otherwise the first non-blank character. Errors are
/// ValidationErrors prefixed with the path, with line and column for syntax
/// problems.
DiscreteDistribution load_distribution(const std::string &path);

DiscreteDistribution parse_distribution_json(const std::string &text, const std::string &origin);
DiscreteDistribution parse_distribution_csv(const std::string &text, const std::string &origin);

}  // namespace divkit::cli
