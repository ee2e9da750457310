#pragma once

#include "defectpred/feature_matrix.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace defectpred::text {

/// Maximal runs of alphabetic characters; digits, whitespace and all other
/// characters act as separators.
std::vector<std::string> tokenize(std::string_view source);

/// Splits an alphabetic token at camel-case boundaries: before an upper
/// following a lower ("StringBuffer" -> String, Buffer) and before the last
/// upper of an upper run followed by lowers ("HTMLParser" -> HTML, Parser).
/// Casing is preserved; the pieces concatenate back to the input.
std::vector<std::string> camel_split(std::string_view token);

/// Drops words of length 1, lowercases the rest, and Porter-stems them.
std::vector<std::string> normalize(const std::vector<std::string>& words);

/// Full term extraction for one file: tokenize, camel-split, normalize.
std::vector<std::string> extract_terms(std::string_view source);

/// Term list with per-term document frequency, built from a fitting corpus
/// of `corpus_size` documents. Terms are sorted and unique.
struct TermVocabulary {
  std::vector<std::string> terms;
  std::vector<int> document_frequency;
  int corpus_size = 0;

  int index_of(std::string_view term) const;
};

TermVocabulary build_vocabulary(const std::vector<std::vector<std::string>>& docs);

/// Bag-of-words matrix over the vocabulary. With `tfidf` the cell is
/// tf(t,d) * ln(D / df(t)) using the vocabulary's fitted D and df; otherwise
/// it is the raw count. Terms outside the vocabulary are ignored, so the
/// same fitted vocabulary can vectorize held-out documents.
FeatureMatrix term_matrix(const TermVocabulary& vocab,
                          const std::vector<std::vector<std::string>>& docs,
                          bool tfidf = true);

/// Convenience: build the vocabulary from `docs` and vectorize them.
std::pair<FeatureMatrix, TermVocabulary> term_matrix(
    const std::vector<std::vector<std::string>>& docs, bool tfidf = true);

/// Maps documents to vocabulary indices, dropping unknown terms. This is the
/// count-based token stream consumed by topic modeling.
std::vector<std::vector<int>> to_indices(const TermVocabulary& vocab,
                                         const std::vector<std::vector<std::string>>& docs);

}  // namespace defectpred::text
