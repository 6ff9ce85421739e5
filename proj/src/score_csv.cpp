#include "bayescal/score_csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

#include "bayescal/errors.hpp"

namespace bayescal {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

[[noreturn]] void fail(std::string_view source, std::size_t line, const std::string& what) {
  throw ParseError(std::string(source) + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

bool parse_label(std::string_view text, Hypothesis& out) {
  text = trim(text);
  if (iequals(text, "H1") || iequals(text, "tar")) {
    out = Hypothesis::H1;
    return true;
  }
  if (iequals(text, "H2") || iequals(text, "non")) {
    out = Hypothesis::H2;
    return true;
  }
  return false;
}

std::vector<LabeledScore> read_score_csv(std::istream& in, std::string_view source_name) {
  std::vector<LabeledScore> rows;
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    const auto comma = text.find(',');
    if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
      fail(source_name, line_no, "expected exactly two comma-separated fields");
    }
    const std::string_view first = trim(text.substr(0, comma));
    const std::string_view second = trim(text.substr(comma + 1));
    if (!saw_header) {
      if (!iequals(first, "label") || !iequals(second, "score")) {
        fail(source_name, line_no, "expected header 'label,score'");
      }
      saw_header = true;
      continue;
    }
    LabeledScore row{};
    if (!parse_label(first, row.label)) {
      fail(source_name, line_no, "unknown label '" + std::string(first) + "' (expected H1, H2, tar or non)");
    }
    const char* begin = second.data();
    const char* end = second.data() + second.size();
    const auto [ptr, ec] = std::from_chars(begin, end, row.value);
    if (ec != std::errc{} || ptr != end || second.empty()) {
      fail(source_name, line_no, "cannot parse score '" + std::string(second) + "'");
    }
    if (!std::isfinite(row.value)) {
      fail(source_name, line_no, "score must be finite");
    }
    rows.push_back(row);
  }
  if (!saw_header) fail(source_name, line_no == 0 ? 1 : line_no, "missing header 'label,score'");
  return rows;
}

BackgroundData load_background_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open background file " + path.string());
  const auto rows = read_score_csv(in, path.string());
  return BackgroundData::from_labeled(rows);
}

}  // namespace bayescal
