#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "navtrust/rng.hpp"
#include "navtrust/types.hpp"

namespace navtrust {

/// A navigation instruction: the text handed to an agent, plus the system
/// prompt for prompt-driven models (absent for agents with a closed
/// pipeline).
struct Instruction {
  std::string text;
  std::string language_tag = "en-US";
  std::optional<std::string> system_prompt;
};

namespace text {

enum class TokenTag {
  ContentNounlike,
  ContentVerblike,
  Adposition,
  Stopword,
  Other,
};

/// One token with its byte span in the original text. Spans are
/// non-overlapping and ordered.
struct Token {
  std::string surface;
  TokenTag tag = TokenTag::Other;
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Assigns a part-of-speech-like tag to a word. The default lexicon
/// heuristic keeps the module dependency-free; callers with a real parser
/// plug in their own tagger or hand the ops pre-tagged tokens.
class Tagger {
 public:
  virtual ~Tagger() = default;
  virtual TokenTag tag(std::string_view word) const = 0;
};

/// Default tagger: adposition list, stopword list, then a navigation verb
/// lexicon with light suffix heuristics; remaining words are noun-like.
/// Adjectives are not identifiable by lexicon and fall into Other.
class LexiconTagger final : public Tagger {
 public:
  TokenTag tag(std::string_view word) const override;
};

const Tagger& default_tagger();

/// Whitespace/punctuation-aware segmentation. Words are runs of
/// alphanumerics (plus ' and -); every other non-space character is its own
/// Other-tagged token. Throws on empty text.
std::vector<Token> tokenize(std::string_view text);
std::vector<Token> tokenize(std::string_view text, const Tagger& tagger);

/// Joins surfaces with single spaces (whitespace-normalized inverse of
/// tokenize).
std::string detokenize(std::span<const Token> tokens);

/// Rebuilds the original text with each token span replaced by its current
/// surface; text between spans is preserved byte-for-byte.
std::string splice_tokens(std::string_view original, std::span<const Token> tokens);

/// Uppercases noun-like, verb-like, and adposition tokens; everything else
/// is untouched. Deterministic and idempotent.
Instruction capitalize_salient(const Instruction& instr);
Instruction capitalize_salient(const Instruction& instr, const Tagger& tagger);
std::string capitalize_tokens(std::string_view original, std::vector<Token> tokens);

/// Replaces round(ratio * token_count) token surfaces with "[MASK]".
/// Stopword/Other tokens go first in rng order; the remainder is drawn
/// uniformly from content tokens.
Instruction mask_tokens(const Instruction& instr, double ratio, RandomStream& rng);
Instruction mask_tokens(const Instruction& instr, double ratio, RandomStream& rng,
                        const Tagger& tagger);
std::string mask_token_list(std::string_view original, std::vector<Token> tokens,
                            double ratio, RandomStream& rng);

/// Adversarial phrase inventory. Black-box prefixes are prepended to
/// instructions; white-box cues are planted in system prompts.
struct PhraseBank {
  std::vector<std::string> black_box_prefixes;
  std::vector<std::string> white_box_cues;

  /// Built-in bank with >= 10 curated entries per section.
  static PhraseBank builtin();

  /// One phrase per line under "[black_box]" / "[white_box]" section
  /// headers; blank lines and '#' comments are skipped.
  static PhraseBank from_file(const std::string& path);
  static PhraseBank parse(std::string_view content, const std::string& origin);
};

/// Marker replaced by the injected cue in a system prompt. Without it, the
/// cue is appended as a new final line.
inline constexpr std::string_view kInjectMarker = "{{INJECT}}";

/// Prepends a bank prefix to the instruction text; the original text
/// survives verbatim as a suffix.
Instruction inject_black_box(const Instruction& instr, const PhraseBank& bank,
                             RandomStream& rng);

/// Plants a cue in the system prompt (at the marker, or as a final line).
/// Requires a system prompt; instruction text is untouched.
Instruction inject_white_box(const Instruction& instr, const PhraseBank& bank,
                             RandomStream& rng);

enum class StyleVariant { Friendly, Novice, Professional, Formal };

inline constexpr std::array<StyleVariant, 4> kStyleVariants = {
    StyleVariant::Friendly, StyleVariant::Novice, StyleVariant::Professional,
    StyleVariant::Formal};

std::string_view to_string(StyleVariant variant);
StyleVariant style_from_string(std::string_view name);

/// System prompt shipped for chat-backed style rewrites; forbids adding or
/// removing navigation waypoints.
std::string style_prompt(StyleVariant variant);

/// Text-rewriting backend: a chat endpoint in production, a deterministic
/// template in offline tests.
class TextRewriter {
 public:
  virtual ~TextRewriter() = default;
  // Throws RemoteError (or derived) on backend failure.
  virtual std::string rewrite(StyleVariant variant, const std::string& text) = 0;
};

/// Deterministic offline rewriter with four fixed, pairwise-distinct
/// templates.
class TemplateRewriter final : public TextRewriter {
 public:
  std::string rewrite(StyleVariant variant, const std::string& text) override;
};

/// Rewrites the instruction in the requested register via the backend.
/// Language tag and system prompt are preserved.
Instruction style_rewrite(const Instruction& instr, StyleVariant variant,
                          TextRewriter& rewriter);

}  // namespace text
}  // namespace navtrust
