#pragma once

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace divkit::cli {

using Json = nlohmann::ordered_json;

enum class Format
{
  json,
  csv,
};

/// A finite double rounded to 12 significant digits, or "inf", "-inf", "nan".
Json number(double v);

/// `v` rounded to `digits` significant digits.
double round_significant(double v, int digits);

/// Rows for CSV output when a command has a natural table.
struct Table
{
  std::vector<std::string> header;
  std::vector<std::vector<Json>> rows;
};

struct Output
{
  Json doc;
  std::optional<Table> table;
};

/// JSON: the document on one line. CSV: the table if there is one, otherwise
/// the document flattened to key,value lines with dotted paths.
void write(std::ostream &out, const Output &result, Format format);

}  // namespace divkit::cli
