#pragma once

#include <span>
#include <string_view>

// Shipped lexicons backing the default tagger and phrase bank.
namespace navtrust::text::detail {

std::span<const std::string_view> stopword_lexicon();
std::span<const std::string_view> adposition_lexicon();
std::span<const std::string_view> verb_lexicon();
std::span<const std::string_view> builtin_black_box_prefixes();
std::span<const std::string_view> builtin_white_box_cues();

}  // namespace navtrust::text::detail
