#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace venuerec {

/// Lowercases ASCII, splits on runs of characters that are neither ASCII
/// alphanumerics nor UTF-8 multibyte units, drops tokens shorter than two
/// bytes and English stopwords.
std::vector<std::string> tokenize(std::string_view text);

bool is_stopword(std::string_view token);

/// The frozen stoplist, sorted.
const std::vector<std::string_view>& stopwords();

}  // namespace venuerec
