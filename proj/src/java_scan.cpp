#include "defectpred/java_scan.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace defectpred::java {

namespace {

bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$';
}

bool ident_part(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

constexpr std::array<std::string_view, 53> kKeywords = {
    "abstract", "assert",     "boolean",  "break",      "byte",      "case",
    "catch",    "char",       "class",    "const",      "continue",  "default",
    "do",       "double",     "else",     "enum",       "extends",   "final",
    "finally",  "float",      "for",      "goto",       "if",        "implements",
    "import",   "instanceof", "int",      "interface",  "long",      "native",
    "new",      "package",    "private",  "protected",  "public",    "return",
    "short",    "static",     "strictfp", "super",      "switch",    "synchronized",
    "this",     "throw",      "throws",   "transient",  "try",       "void",
    "volatile", "while",      "true",     "false",      "null"};

constexpr std::array<std::string_view, 9> kPrimitives = {
    "boolean", "byte", "char", "double", "float", "int", "long", "short", "void"};

}  // namespace

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

bool is_primitive(std::string_view word) {
  return std::find(kPrimitives.begin(), kPrimitives.end(), word) != kPrimitives.end();
}

std::vector<Token> lex(std::string_view source) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = source.size();
  while (i < n) {
    char c = source[i];
    if (c == '/' && i + 1 < n && source[i + 1] == '/') {
      while (i < n && source[i] != '\n') ++i;
    } else if (c == '/' && i + 1 < n && source[i + 1] == '*') {
      i += 2;
      while (i + 1 < n && !(source[i] == '*' && source[i + 1] == '/')) ++i;
      i = (i + 1 < n) ? i + 2 : n;  // unterminated comment swallows the rest
    } else if (c == '"' || c == '\'') {
      char quote = c;
      ++i;
      while (i < n && source[i] != quote && source[i] != '\n') {
        if (source[i] == '\\' && i + 1 < n) ++i;
        ++i;
      }
      if (i < n) ++i;
    } else if (c >= '0' && c <= '9') {
      // numeric literal, including hex and suffixes; no tokens emitted
      ++i;
      while (i < n && (ident_part(source[i]) || source[i] == '.')) ++i;
    } else if (ident_start(c)) {
      std::size_t start = i;
      while (i < n && ident_part(source[i])) ++i;
      tokens.push_back({true, std::string(source.substr(start, i - start))});
    } else if (static_cast<unsigned char>(c) <= ' ') {
      ++i;
    } else {
      tokens.push_back({false, std::string(1, c)});
      ++i;
    }
  }
  return tokens;
}

std::string package_name(const std::vector<Token>& tokens) {
  std::size_t i = 0;
  // Skip leading annotations such as @Deprecated or @SuppressWarnings(...).
  while (i < tokens.size() && !tokens[i].ident && tokens[i].text == "@") {
    ++i;
    while (i < tokens.size() && tokens[i].ident) {
      ++i;
      if (i + 1 < tokens.size() && tokens[i].text == "." && tokens[i + 1].ident)
        i += 1;
      else
        break;
    }
    if (i < tokens.size() && tokens[i].text == "(") {
      int depth = 1;
      ++i;
      while (i < tokens.size() && depth > 0) {
        if (tokens[i].text == "(") ++depth;
        if (tokens[i].text == ")") --depth;
        ++i;
      }
    }
  }
  if (i >= tokens.size() || !tokens[i].ident || tokens[i].text != "package") return "";
  std::string name;
  ++i;
  while (i < tokens.size() && tokens[i].ident) {
    name += tokens[i].text;
    ++i;
    if (i + 1 < tokens.size() && tokens[i].text == "." && tokens[i + 1].ident) {
      name += '.';
      ++i;
    } else {
      break;
    }
  }
  return name;
}

}  // namespace defectpred::java
