#include "input.hpp"

#include "divkit/error.hpp"

#include <json.hpp>

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace divkit::cli {

namespace {

DiscreteDistribution build(std::vector<double> masses, const std::string &origin)
{
  try
  {
    return DiscreteDistribution(std::move(masses));
  }
  catch (const ValidationError &e)
  {
    throw ValidationError(origin + ": " + e.what());
  }
}

// nlohmann prefixes its messages with "[json.exception.parse_error.NNN] ".
std::string strip_tag(const std::string &what)
{
  const auto close = what.find("] ");
  return what.starts_with("[json.exception") && close != std::string::npos ? what.substr(close + 2)
                                                                            : what;
}

}  // namespace

DiscreteDistribution parse_distribution_json(const std::string &text, const std::string &origin)
{
  nlohmann::json doc;
  try
  {
    doc = nlohmann::json::parse(text);
  }
  catch (const nlohmann::json::parse_error &e)
  {
    throw ValidationError(origin + ": " + strip_tag(e.what()));
  }

  const nlohmann::json *masses = &doc;
  if (doc.is_object())
  {
    for (const auto &item : doc.items())
    {
      if (item.key() != "masses" && item.key() != "alphabet_size")
      {
        throw ValidationError(origin + ": unexpected key \"" + item.key() + "\"");
      }
    }
    if (!doc.contains("masses"))
    {
      throw ValidationError(origin + ": missing \"masses\"");
    }
    masses = &doc["masses"];
  }
  if (!masses->is_array())
  {
    throw ValidationError(origin + ": expected an array of masses");
  }

  std::vector<double> out;
  out.reserve(masses->size());
  for (std::size_t i = 0; i < masses->size(); ++i)
  {
    const auto &m = (*masses)[i];
    if (!m.is_number())
    {
      throw ValidationError(origin + ": masses[" + std::to_string(i) + "] is not a number");
    }
    out.push_back(m.get<double>());
  }

  if (doc.is_object() && doc.contains("alphabet_size"))
  {
    const auto &n = doc["alphabet_size"];
    if (!n.is_number_unsigned() || n.get<std::size_t>() != out.size())
    {
      throw ValidationError(origin + ": alphabet_size does not match the " +
                            std::to_string(out.size()) + " masses given");
    }
  }
  return build(std::move(out), origin);
}

DiscreteDistribution parse_distribution_csv(const std::string &text, const std::string &origin)
{
  std::vector<double> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line))
  {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
    {
      line.pop_back();
    }
    std::size_t begin = 0;
    while (begin < line.size() && std::isspace(static_cast<unsigned char>(line[begin])))
    {
      ++begin;
    }
    std::size_t end = line.size();
    while (end > begin && std::isspace(static_cast<unsigned char>(line[end - 1])))
    {
      --end;
    }
    if (begin == end)
    {
      continue;
    }
    double value = 0.0;
    const char *first = line.data() + begin;
    const char *last = line.data() + end;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
    {
      const std::size_t column = ec == std::errc() ? begin + (ptr - first) + 1 : begin + 1;
      throw ValidationError(origin + ":" + std::to_string(line_no) + ":" + std::to_string(column) +
                            ": expected one number per line, got \"" +
                            line.substr(begin, end - begin) + "\"");
    }
    out.push_back(value);
  }
  return build(std::move(out), origin);
}

DiscreteDistribution load_distribution(const std::string &path)
{
  std::ifstream file(path, std::ios::binary);
  if (!file)
  {
    throw ValidationError(path + ": cannot open file");
  }
  std::ostringstream buf;
  buf << file.rdbuf();
  const std::string text = buf.str();

  if (path.ends_with(".json"))
  {
    return parse_distribution_json(text, path);
  }
  if (path.ends_with(".csv"))
  {
    return parse_distribution_csv(text, path);
  }
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{'))
  {
    return parse_distribution_json(text, path);
  }
  return parse_distribution_csv(text, path);
}

}  // namespace divkit::cli
