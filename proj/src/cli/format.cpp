#include "format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace divkit::cli {

namespace {

std::string cell(const Json &v)
{
  if (v.is_null())
  {
    return "";
  }
  if (v.is_string())
  {
    const auto &s = v.get_ref<const std::string &>();
    if (s.find_first_of(",\"\n") == std::string::npos)
    {
      return s;
    }
    std::string quoted = "\"";
    for (char c : s)
    {
      quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return quoted + "\"";
  }
  if (v.is_structured())
  {
    return cell(Json(v.dump()));
  }
  return v.dump();
}

void flatten(const Json &v, const std::string &path, std::vector<std::pair<std::string, Json>> &out)
{
  if (v.is_object())
  {
    for (const auto &item : v.items())
    {
      flatten(item.value(), path.empty() ? item.key() : path + "." + item.key(), out);
    }
  }
  else if (v.is_array())
  {
    for (std::size_t i = 0; i < v.size(); ++i)
    {
      flatten(v[i], path + "." + std::to_string(i), out);
    }
  }
  else
  {
    out.emplace_back(path, v);
  }
}

void write_row(std::ostream &out, const std::vector<std::string> &cells)
{
  for (std::size_t i = 0; i < cells.size(); ++i)
  {
    out << (i ? "," : "") << cells[i];
  }
  out << '\n';
}

}  // namespace

double round_significant(double v, int digits)
{
  if (!std::isfinite(v) || v == 0.0)
  {
    return v == 0.0 ? 0.0 : v;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

Json number(double v)
{
  if (std::isnan(v))
  {
    return "nan";
  }
  if (std::isinf(v))
  {
    return v > 0.0 ? "inf" : "-inf";
  }
  return round_significant(v, 12);
}

void write(std::ostream &out, const Output &result, Format format)
{
  if (format == Format::json)
  {
    out << result.doc.dump() << '\n';
    return;
  }
  if (result.table)
  {
    write_row(out, result.table->header);
    for (const auto &row : result.table->rows)
    {
      std::vector<std::string> cells;
      for (const auto &v : row)
      {
        cells.push_back(cell(v));
      }
      write_row(out, cells);
    }
    return;
  }
  std::vector<std::pair<std::string, Json>> pairs;
  flatten(result.doc, "", pairs);
  out << "key,value\n";
  for (const auto &[k, v] : pairs)
  {
    write_row(out, {cell(Json(k)), cell(v)});
  }
}

}  // namespace divkit::cli
