#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string>

#include "ogelfr/aarset.hpp"
#include "ogelfr/cli.hpp"
#include "ogelfr/errors.hpp"

namespace ogelfr::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

Dataset parse_dataset(std::istream& in, const std::string& name) {
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = trim(line);
    if (lineno == 1 && s.starts_with("\xEF\xBB\xBF")) s = trim(s.substr(3));
    if (s.empty() || s.front() == '#') continue;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw DataError(name + ":" + std::to_string(lineno) + ": cannot parse '" + std::string(s) + "' as a number");
    if (!std::isfinite(v))
      throw DataError(name + ":" + std::to_string(lineno) + ": value must be finite");
    if (v < 0) throw DataError(name + ":" + std::to_string(lineno) + ": negative lifetime " + std::string(s));
    values.push_back(v);
  }
  return Dataset(std::move(values));
}

Dataset load_dataset(const std::string& source) {
  if (source == "aarset") return aarset_dataset();
  std::ifstream in(source);
  if (!in) throw DataError("cannot open data file '" + source + "'");
  return parse_dataset(in, source);
}

}  // namespace ogelfr::cli
