#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "bayescal/score_model.hpp"

namespace bayescal {

/// Parses a score label: H1/H2, or the aliases tar (H1) and non (H2),
/// case-insensitively. Returns false for anything else.
bool parse_label(std::string_view text, Hypothesis& out);

/// Reads a `label,score` CSV. Empty lines are skipped. Throws ParseError with
/// "<source>:<line>: ..." on the first malformed row.
std::vector<LabeledScore> read_score_csv(std::istream& in, std::string_view source_name);

/// Throws IoError if the file cannot be opened.
BackgroundData load_background_csv(const std::filesystem::path& path);

}  // namespace bayescal
