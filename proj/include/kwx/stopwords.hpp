#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace kwx {

using StopwordSet = std::unordered_set<std::string>;

// Languages with a bundled list.
std::vector<std::string> builtin_stopword_languages();

// Bundled list for `lang`; empty for languages without one.
StopwordSet builtin_stopwords(std::string_view lang);

// One lowercased word per line; blank lines and lines starting with '#' are ignored.
StopwordSet load_stopwords(const std::filesystem::path& path);

}  // namespace kwx
