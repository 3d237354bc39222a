#pragma once

#include <memory>
#include <string>
#include <vector>

#include "navtrust/text_corrupt.hpp"

namespace navtrust::safeguard {

/// Where a sanitizer endpoint lives and how hard to try it. An empty
/// endpoint_url means "offline": the rule-based fallback runs directly.
struct SanitizerConfig {
  std::string endpoint_url;  // full chat-completions URL
  std::string model_name = "navtrust-sanitizer";
  std::string api_key_env = "NAVTRUST_API_KEY";
  double timeout_seconds = 30.0;
  int max_retries = 2;
  double temperature = 0.0;
};

enum class SanitizeBackend {
  Remote,               // endpoint answered
  FallbackPassthrough,  // no remote answer, nothing to strip
  FallbackRules,        // no remote answer, known adversarial prefix stripped
};

std::string_view to_string(SanitizeBackend backend);

struct SanitizeResult {
  std::string text;
  bool was_modified = false;
  SanitizeBackend backend = SanitizeBackend::FallbackPassthrough;
  double latency_ms = 0.0;
};

struct ChatMessage {
  std::string role;
  std::string content;
};

/// Chat-completion backend. Implementations must be usable from concurrent
/// episodes or document single-flight semantics.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  /// Returns the assistant's text; throws RemoteError on failure.
  virtual std::string complete(const std::vector<ChatMessage>& messages) = 0;
};

/// JSON chat-completion client over HTTP(S): POST {model, messages,
/// temperature} with a bearer token from cfg.api_key_env. Retries with
/// exponential backoff before giving up. Request/response bodies go to
/// stderr when NAVTRUST_DEBUG is set, with the token redacted.
class HttpChatBackend final : public ChatBackend {
 public:
  explicit HttpChatBackend(SanitizerConfig cfg);
  std::string complete(const std::vector<ChatMessage>& messages) override;

 private:
  std::string post_once(const std::string& body);

  SanitizerConfig cfg_;
};

/// System prompt sent with every sanitize call. A general-purpose
/// reconstruction of the canonicalizer's documented behavior; swap in a
/// calibrated prompt via set if needed.
std::string canonicalization_prompt();

/// Canonicalizes a possibly adversarial instruction through the configured
/// endpoint; on remote failure (after retries) strips any known black-box
/// prefix and passes the rest through. Never returns empty text for
/// non-empty input. Intended to run once per episode.
SanitizeResult sanitize(const Instruction& instr, const SanitizerConfig& cfg,
                        const text::PhraseBank& bank);

/// Same contract with an injected backend (tests, shared connection pools).
SanitizeResult sanitize_with_backend(const Instruction& instr, ChatBackend& backend,
                                     const text::PhraseBank& bank);

/// Style-rewrite adapter: drives text::style_rewrite through a chat backend
/// using the shipped per-variant prompts.
class ChatRewriter final : public text::TextRewriter {
 public:
  explicit ChatRewriter(ChatBackend& backend) : backend_(&backend) {}
  std::string rewrite(text::StyleVariant variant, const std::string& text) override;

 private:
  ChatBackend* backend_;
};

}  // namespace navtrust::safeguard
