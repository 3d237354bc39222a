#include "navtrust/text_corrupt.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "lexicons.hpp"

namespace navtrust::text {

namespace {

bool is_word_char(unsigned char c) {
  return std::isalnum(c) || c == '\'' || c == '-';
}

std::string to_lower(std::string_view word) {
  std::string out(word);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string to_upper(std::string_view word) {
  std::string out(word);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return out;
}

bool in_lexicon(std::span<const std::string_view> lexicon, std::string_view word) {
  return std::find(lexicon.begin(), lexicon.end(), word) != lexicon.end();
}

bool all_digits(std::string_view word) {
  return std::all_of(word.begin(), word.end(),
                     [](unsigned char c) { return std::isdigit(c); });
}

bool has_alpha(std::string_view word) {
  return std::any_of(word.begin(), word.end(),
                     [](unsigned char c) { return std::isalpha(c); });
}

template <typename T>
void shuffle_indices(std::vector<T>& v, RandomStream& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng.below(i)]);
  }
}

constexpr std::string_view kMaskSurface = "[MASK]";

}  // namespace

TokenTag LexiconTagger::tag(std::string_view word) const {
  const std::string lower = to_lower(word);
  if (all_digits(lower)) return TokenTag::Other;
  if (in_lexicon(detail::adposition_lexicon(), lower)) return TokenTag::Adposition;
  if (in_lexicon(detail::stopword_lexicon(), lower)) return TokenTag::Stopword;
  if (in_lexicon(detail::verb_lexicon(), lower)) return TokenTag::ContentVerblike;
  if (lower.size() >= 5 &&
      (lower.ends_with("ing") || lower.ends_with("ed"))) {
    return TokenTag::ContentVerblike;
  }
  if (has_alpha(lower)) return TokenTag::ContentNounlike;
  return TokenTag::Other;
}

const Tagger& default_tagger() {
  static const LexiconTagger tagger;
  return tagger;
}

std::vector<Token> tokenize(std::string_view text, const Tagger& tagger) {
  if (text.empty()) throw ValidationError("empty instruction");

  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char c = text[i];
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (is_word_char(c)) {
      std::size_t j = i;
      while (j < text.size() && is_word_char(static_cast<unsigned char>(text[j]))) {
        ++j;
      }
      std::string surface(text.substr(i, j - i));
      const TokenTag tag = tagger.tag(surface);
      tokens.push_back({std::move(surface), tag, i, j});
      i = j;
    } else {
      // punctuation and other symbols become single-character Other tokens
      tokens.push_back({std::string(text.substr(i, 1)), TokenTag::Other, i, i + 1});
      ++i;
    }
  }
  if (tokens.empty()) throw ValidationError("empty instruction");
  return tokens;
}

std::vector<Token> tokenize(std::string_view text) {
  return tokenize(text, default_tagger());
}

std::string detokenize(std::span<const Token> tokens) {
  constexpr std::string_view kNoSpaceBefore = ".,;:!?)]}\"'";
  constexpr std::string_view kNoSpaceAfter = "([{";
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& surface = tokens[i].surface;
    if (i > 0) {
      const auto& previous = tokens[i - 1].surface;
      const bool attach_left = surface.size() == 1 &&
                               kNoSpaceBefore.find(surface[0]) != std::string_view::npos;
      const bool attach_right = previous.size() == 1 &&
                                kNoSpaceAfter.find(previous[0]) != std::string_view::npos;
      if (!attach_left && !attach_right) out += ' ';
    }
    out += surface;
  }
  return out;
}

std::string splice_tokens(std::string_view original, std::span<const Token> tokens) {
  std::string out;
  out.reserve(original.size());
  std::size_t cursor = 0;
  for (const Token& t : tokens) {
    out.append(original.substr(cursor, t.begin - cursor));
    out.append(t.surface);
    cursor = t.end;
  }
  out.append(original.substr(cursor));
  return out;
}

std::string capitalize_tokens(std::string_view original, std::vector<Token> tokens) {
  for (Token& t : tokens) {
    if (t.tag == TokenTag::ContentNounlike || t.tag == TokenTag::ContentVerblike ||
        t.tag == TokenTag::Adposition) {
      t.surface = to_upper(t.surface);
    }
  }
  return splice_tokens(original, tokens);
}

Instruction capitalize_salient(const Instruction& instr, const Tagger& tagger) {
  Instruction out = instr;
  out.text = capitalize_tokens(instr.text, tokenize(instr.text, tagger));
  return out;
}

Instruction capitalize_salient(const Instruction& instr) {
  return capitalize_salient(instr, default_tagger());
}

std::string mask_token_list(std::string_view original, std::vector<Token> tokens,
                            double ratio, RandomStream& rng) {
  if (!(ratio >= 0.0 && ratio <= 1.0)) {
    throw ValidationError("mask ratio must lie in [0, 1]");
  }
  const auto target = static_cast<std::size_t>(
      round_away(ratio * static_cast<double>(tokens.size())));

  std::vector<std::size_t> nonessential;
  std::vector<std::size_t> content;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].tag == TokenTag::Stopword || tokens[i].tag == TokenTag::Other) {
      nonessential.push_back(i);
    } else {
      content.push_back(i);
    }
  }

  shuffle_indices(nonessential, rng);
  std::size_t masked = 0;
  for (std::size_t i = 0; i < nonessential.size() && masked < target; ++i, ++masked) {
    tokens[nonessential[i]].surface = kMaskSurface;
  }
  if (masked < target) {
    shuffle_indices(content, rng);
    for (std::size_t i = 0; i < content.size() && masked < target; ++i, ++masked) {
      tokens[content[i]].surface = kMaskSurface;
    }
  }
  return splice_tokens(original, tokens);
}

Instruction mask_tokens(const Instruction& instr, double ratio, RandomStream& rng,
                        const Tagger& tagger) {
  Instruction out = instr;
  out.text = mask_token_list(instr.text, tokenize(instr.text, tagger), ratio, rng);
  return out;
}

Instruction mask_tokens(const Instruction& instr, double ratio, RandomStream& rng) {
  return mask_tokens(instr, ratio, rng, default_tagger());
}

PhraseBank PhraseBank::builtin() {
  PhraseBank bank;
  for (auto p : detail::builtin_black_box_prefixes()) {
    bank.black_box_prefixes.emplace_back(p);
  }
  for (auto c : detail::builtin_white_box_cues()) {
    bank.white_box_cues.emplace_back(c);
  }
  return bank;
}

PhraseBank PhraseBank::parse(std::string_view content, const std::string& origin) {
  PhraseBank bank;
  std::vector<std::string>* section = nullptr;
  std::istringstream lines{std::string(content)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    // trim
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    if (line.empty() || line[0] == '#') continue;
    if (line == "[black_box]") {
      section = &bank.black_box_prefixes;
      continue;
    }
    if (line == "[white_box]") {
      section = &bank.white_box_cues;
      continue;
    }
    if (line[0] == '[') {
      throw ValidationError(origin + ":" + std::to_string(line_no) +
                            ": unknown phrase bank section " + line);
    }
    if (section == nullptr) {
      throw ValidationError(origin + ":" + std::to_string(line_no) +
                            ": phrase before any [black_box]/[white_box] header");
    }
    section->push_back(line);
  }
  if (bank.black_box_prefixes.empty() || bank.white_box_cues.empty()) {
    throw ValidationError(origin + ": phrase bank needs at least one entry in "
                          "each of [black_box] and [white_box]");
  }
  return bank;
}

PhraseBank PhraseBank::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open phrase bank " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

Instruction inject_black_box(const Instruction& instr, const PhraseBank& bank,
                             RandomStream& rng) {
  if (instr.text.empty()) throw ValidationError("empty instruction");
  if (bank.black_box_prefixes.empty()) {
    throw ValidationError("phrase bank has no black-box prefixes");
  }
  const auto& prefix = bank.black_box_prefixes[rng.below(bank.black_box_prefixes.size())];
  Instruction out = instr;
  out.text = prefix + " " + instr.text;
  return out;
}

Instruction inject_white_box(const Instruction& instr, const PhraseBank& bank,
                             RandomStream& rng) {
  if (!instr.system_prompt.has_value()) {
    throw ValidationError("white-box injection requires a system prompt");
  }
  if (bank.white_box_cues.empty()) {
    throw ValidationError("phrase bank has no white-box cues");
  }
  const auto& cue = bank.white_box_cues[rng.below(bank.white_box_cues.size())];
  Instruction out = instr;
  std::string prompt = *instr.system_prompt;
  const auto marker = prompt.find(kInjectMarker);
  if (marker != std::string::npos) {
    prompt.replace(marker, kInjectMarker.size(), cue);
  } else {
    prompt += '\n';
    prompt += cue;
  }
  out.system_prompt = std::move(prompt);
  return out;
}

std::string_view to_string(StyleVariant variant) {
  switch (variant) {
    case StyleVariant::Friendly: return "friendly";
    case StyleVariant::Novice: return "novice";
    case StyleVariant::Professional: return "professional";
    case StyleVariant::Formal: return "formal";
  }
  throw ValidationError("unknown style variant");
}

StyleVariant style_from_string(std::string_view name) {
  for (StyleVariant v : kStyleVariants) {
    if (to_string(v) == name) return v;
  }
  throw ValidationError("unknown style variant \"" + std::string(name) +
                        "\"; expected friendly|novice|professional|formal");
}

std::string style_prompt(StyleVariant variant) {
  std::string_view register_desc;
  switch (variant) {
    case StyleVariant::Friendly:
      register_desc = "a warm, casual, friendly tone with simple phrasing";
      break;
    case StyleVariant::Novice:
      register_desc = "a hesitant newcomer's voice built from short, simple clauses";
      break;
    case StyleVariant::Professional:
      register_desc = "a concise professional register with precise technical vocabulary";
      break;
    case StyleVariant::Formal:
      register_desc = "a formal register with ceremonious phrasing and rare synonyms";
      break;
  }
  std::string prompt = "Rewrite the user's navigation instruction in ";
  prompt += register_desc;
  prompt +=
      ". Keep every waypoint, landmark, and direction. Do not add, remove, or "
      "reorder navigation steps. Reply with only the rewritten instruction.";
  return prompt;
}

std::string TemplateRewriter::rewrite(StyleVariant variant, const std::string& text) {
  switch (variant) {
    case StyleVariant::Friendly:
      return "Hey! Could you " + to_lower(text) + " Thanks!";
    case StyleVariant::Novice:
      return "Um, I'm still learning my way around, but please " + to_lower(text) +
             " I hope that's right.";
    case StyleVariant::Professional:
      return "Please execute the following navigation directive: " + text;
    case StyleVariant::Formal:
      return "Kindly proceed as follows: " + text +
             " Your cooperation is appreciated.";
  }
  throw ValidationError("unknown style variant");
}

Instruction style_rewrite(const Instruction& instr, StyleVariant variant,
                          TextRewriter& rewriter) {
  if (instr.text.empty()) throw ValidationError("empty instruction");
  Instruction out = instr;
  out.text = rewriter.rewrite(variant, instr.text);
  return out;
}

}  // namespace navtrust::text
