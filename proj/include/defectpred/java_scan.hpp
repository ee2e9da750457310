#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace defectpred::java {

/// One lexical token: an identifier/keyword or a single punctuation
/// character. Comments, string/char literals and numeric literals are
/// consumed by the lexer and never appear in the stream.
struct Token {
  bool ident = false;
  std::string text;
};

/// Error-tolerant lexer: never fails, skips anything it cannot classify.
std::vector<Token> lex(std::string_view source);

/// Declared package of a compilation unit, or "" when absent. Leading
/// annotations are skipped.
std::string package_name(const std::vector<Token>& tokens);

bool is_keyword(std::string_view word);
bool is_primitive(std::string_view word);

}  // namespace defectpred::java
