#include "defectpred/textfeat.hpp"

#include "defectpred/error.hpp"
#include "defectpred/porter.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace defectpred::text {

namespace {

bool is_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }

}  // namespace

std::vector<std::string> tokenize(std::string_view source) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < source.size()) {
    if (!is_alpha(source[i])) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < source.size() && is_alpha(source[i])) ++i;
    tokens.emplace_back(source.substr(start, i - start));
  }
  return tokens;
}

std::vector<std::string> camel_split(std::string_view token) {
  std::vector<std::string> words;
  if (token.empty()) return words;
  std::size_t start = 0;
  for (std::size_t i = 1; i < token.size(); ++i) {
    bool boundary = false;
    if (is_upper(token[i]) && !is_upper(token[i - 1])) {
      boundary = true;  // lower -> Upper
    } else if (is_upper(token[i - 1]) && !is_upper(token[i]) && i >= 2 &&
               is_upper(token[i - 2]) && i - 1 > start) {
      boundary = true;  // UPPERlower: split before the last upper
      --i;
    }
    if (boundary) {
      words.emplace_back(token.substr(start, i - start));
      start = i;
    }
  }
  words.emplace_back(token.substr(start));
  return words;
}

std::vector<std::string> normalize(const std::vector<std::string>& words) {
  std::vector<std::string> terms;
  terms.reserve(words.size());
  for (const auto& word : words) {
    if (word.size() < 2) continue;
    std::string lower(word);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    terms.push_back(porter_stem(std::move(lower)));
  }
  return terms;
}

std::vector<std::string> extract_terms(std::string_view source) {
  std::vector<std::string> words;
  for (const auto& token : tokenize(source)) {
    auto pieces = camel_split(token);
    words.insert(words.end(), std::make_move_iterator(pieces.begin()),
                 std::make_move_iterator(pieces.end()));
  }
  return normalize(words);
}

int TermVocabulary::index_of(std::string_view term) const {
  auto it = std::lower_bound(terms.begin(), terms.end(), term);
  if (it == terms.end() || *it != term) return -1;
  return static_cast<int>(it - terms.begin());
}

TermVocabulary build_vocabulary(const std::vector<std::vector<std::string>>& docs) {
  TermVocabulary vocab;
  vocab.corpus_size = static_cast<int>(docs.size());
  for (const auto& doc : docs) {
    std::vector<std::string> unique(doc);
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    vocab.terms.insert(vocab.terms.end(), unique.begin(), unique.end());
  }
  std::sort(vocab.terms.begin(), vocab.terms.end());
  vocab.terms.erase(std::unique(vocab.terms.begin(), vocab.terms.end()), vocab.terms.end());

  vocab.document_frequency.assign(vocab.terms.size(), 0);
  for (const auto& doc : docs) {
    std::vector<std::string> unique(doc);
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (const auto& term : unique) {
      int idx = vocab.index_of(term);
      if (idx >= 0) ++vocab.document_frequency[static_cast<std::size_t>(idx)];
    }
  }
  return vocab;
}

FeatureMatrix term_matrix(const TermVocabulary& vocab,
                          const std::vector<std::vector<std::string>>& docs, bool tfidf) {
  const auto n_terms = static_cast<Eigen::Index>(vocab.terms.size());
  FeatureMatrix out;
  out.kind = "term";
  out.columns = vocab.terms;
  out.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(docs.size()), n_terms);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const auto& term : docs[d]) {
      int idx = vocab.index_of(term);
      if (idx >= 0) out.values(static_cast<Eigen::Index>(d), idx) += 1.0;
    }
  }
  if (tfidf && vocab.corpus_size > 0) {
    for (Eigen::Index t = 0; t < n_terms; ++t) {
      int df = vocab.document_frequency[static_cast<std::size_t>(t)];
      double idf = df > 0 ? std::log(static_cast<double>(vocab.corpus_size) / df) : 0.0;
      out.values.col(t) *= idf;
    }
  }
  return out;
}

std::pair<FeatureMatrix, TermVocabulary> term_matrix(
    const std::vector<std::vector<std::string>>& docs, bool tfidf) {
  if (docs.empty()) throw Error("term_matrix: no documents");
  TermVocabulary vocab = build_vocabulary(docs);
  return {term_matrix(vocab, docs, tfidf), std::move(vocab)};
}

std::vector<std::vector<int>> to_indices(const TermVocabulary& vocab,
                                         const std::vector<std::vector<std::string>>& docs) {
  std::vector<std::vector<int>> out(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    out[d].reserve(docs[d].size());
    for (const auto& term : docs[d]) {
      int idx = vocab.index_of(term);
      if (idx >= 0) out[d].push_back(idx);
    }
  }
  return out;
}

}  // namespace defectpred::text
