#pragma once

#include <string>
#include <string_view>

namespace kwx {

/// Light Latvian stemmer: removes the longest matching inflectional suffix
/// from a fixed affix table and undoes consonant palatalization where the
/// removed suffix implies it. A suffix is removed only when the word has more
/// vowels than the affix requires and at least three characters remain.
/// Input must be lowercased UTF-8.
std::string latvian_stem(std::string_view word);

}  // namespace kwx
