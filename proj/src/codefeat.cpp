#include "defectpred/codefeat.hpp"

#include "defectpred/java_scan.hpp"
#include "defectpred/jdk_types.hpp"

#include <algorithm>
#include <set>

namespace defectpred::code {

namespace {

using java::Token;

bool upper_start(std::string_view s) { return !s.empty() && s[0] >= 'A' && s[0] <= 'Z'; }

// Truncates a dotted chain at its first upper-case segment: Java convention
// puts lower-case packages before the class name, so org.x.Widget.CONST
// becomes org.x.Widget and Map.Entry becomes Map.
std::string truncate_chain(const std::vector<std::string>& segments) {
  std::size_t end = segments.size();
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (upper_start(segments[i])) {
      end = i + 1;
      break;
    }
  }
  std::string out;
  for (std::size_t i = 0; i < end; ++i) {
    if (i) out += '.';
    out += segments[i];
  }
  return out;
}

bool chain_has_upper(const std::vector<std::string>& segments) {
  return std::any_of(segments.begin(), segments.end(),
                     [](const std::string& s) { return upper_start(s); });
}

struct Scanner {
  const std::vector<Token>& toks;
  const ExtractOptions& options;
  std::set<std::string> refs;
  std::set<std::string> explicit_imports;
  std::set<std::string> wildcard_imports;

  bool ident_at(std::size_t i) const {
    return i < toks.size() && toks[i].ident && !java::is_keyword(toks[i].text);
  }

  bool punct_at(std::size_t i, char c) const {
    return i < toks.size() && !toks[i].ident && toks[i].text[0] == c;
  }

  bool keyword_at(std::size_t i, std::string_view kw) const {
    return i < toks.size() && toks[i].ident && toks[i].text == kw;
  }

  // Reads ident(.ident)* starting at i; returns segments and advances i.
  std::vector<std::string> read_chain(std::size_t& i) {
    std::vector<std::string> segments;
    if (!ident_at(i)) return segments;
    segments.push_back(toks[i].text);
    ++i;
    while (punct_at(i, '.') && ident_at(i + 1)) {
      segments.push_back(toks[i + 1].text);
      i += 2;
    }
    return segments;
  }

  void add_chain(const std::vector<std::string>& segments) {
    if (segments.empty()) return;
    if (segments.size() == 1 && (java::is_primitive(segments[0]) || segments[0] == "var"))
      return;
    refs.insert(truncate_chain(segments));
  }

  // Attempts to read a balanced generic argument list at i (pointing at
  // '<'). On success advances i past the closing '>' and records the
  // argument type chains; on failure leaves i untouched.
  bool try_generics(std::size_t& i) {
    if (!punct_at(i, '<')) return false;
    std::size_t pos = i + 1;
    int depth = 1;
    std::vector<std::vector<std::string>> found;
    while (pos < toks.size() && depth > 0) {
      const Token& t = toks[pos];
      if (!t.ident) {
        char c = t.text[0];
        if (c == '<') {
          ++depth;
        } else if (c == '>') {
          --depth;
        } else if (c != ',' && c != '?' && c != '[' && c != ']' && c != '&' && c != '.' &&
                   c != '@') {
          return false;
        }
        ++pos;
        continue;
      }
      if (t.text == "extends" || t.text == "super") {
        ++pos;
        continue;
      }
      if (java::is_keyword(t.text) && !java::is_primitive(t.text)) return false;
      if (java::is_primitive(t.text)) {
        ++pos;
        continue;
      }
      found.push_back(read_chain(pos));
    }
    if (depth != 0) return false;
    for (const auto& chain : found) add_chain(chain);
    i = pos;
    return true;
  }

  void skip_array_suffix(std::size_t& i) {
    while (punct_at(i, '[') && punct_at(i + 1, ']')) i += 2;
  }

  void parse_import(std::size_t& i) {
    ++i;  // past "import"
    bool is_static = keyword_at(i, "static");
    if (is_static) ++i;
    std::vector<std::string> segments;
    while (ident_at(i)) {
      segments.push_back(toks[i].text);
      ++i;
      if (!punct_at(i, '.')) break;
      ++i;
      if (punct_at(i, '*')) {
        ++i;
        if (is_static) break;  // static member wildcard still names a type
        std::string pkg;
        for (std::size_t s = 0; s < segments.size(); ++s) {
          if (s) pkg += '.';
          pkg += segments[s];
        }
        if (!pkg.empty()) wildcard_imports.insert(pkg);
        return;
      }
    }
    // import a.b.C;  or  import static a.b.C.member;  -> type is the chain
    // truncated at its first upper-case segment.
    if (segments.empty()) return;
    std::string name = truncate_chain(segments);
    if (name.find('.') == std::string::npos) return;  // malformed, ignore
    explicit_imports.insert(name);
    if (options.include_imports) refs.insert(name);
  }

  void parse_catch(std::size_t& i) {
    ++i;  // past "catch"
    if (!punct_at(i, '(')) return;
    ++i;
    while (true) {
      while (keyword_at(i, "final")) ++i;
      auto chain = read_chain(i);
      if (chain.empty()) break;
      add_chain(chain);
      if (punct_at(i, '|')) {
        ++i;
        continue;
      }
      break;
    }
    // skip the exception variable and anything else up to ')'
    while (i < toks.size() && !punct_at(i, ')')) ++i;
  }

  void parse_type_list(std::size_t& i) {
    // after extends / implements / throws: Chain (, Chain)* with optional
    // generic arguments and '&' intersection bounds
    while (true) {
      auto chain = read_chain(i);
      if (chain.empty()) return;
      add_chain(chain);
      try_generics(i);
      if (punct_at(i, ',') || punct_at(i, '&')) {
        ++i;
        continue;
      }
      return;
    }
  }

  void run() {
    std::size_t i = 0;
    while (i < toks.size()) {
      const Token& t = toks[i];
      if (!t.ident) {
        if (t.text[0] == '(') {
          // cast: ( Chain ) followed by an identifier, '(', new or this
          std::size_t pos = i + 1;
          auto chain = read_chain(pos);
          skip_array_suffix(pos);
          if (!chain.empty() && chain_has_upper(chain) && punct_at(pos, ')') &&
              (ident_at(pos + 1) || punct_at(pos + 1, '(') || keyword_at(pos + 1, "new") ||
               keyword_at(pos + 1, "this"))) {
            add_chain(chain);
          }
          ++i;
          continue;
        }
        if (t.text[0] == '@') {
          ++i;
          read_chain(i);  // skip annotation name
          continue;
        }
        ++i;
        continue;
      }
      if (java::is_keyword(t.text)) {
        if (t.text == "import") {
          parse_import(i);
        } else if (t.text == "new") {
          ++i;
          auto chain = read_chain(i);
          add_chain(chain);
          try_generics(i);
        } else if (t.text == "extends" || t.text == "implements" || t.text == "throws") {
          ++i;
          parse_type_list(i);
        } else if (t.text == "instanceof") {
          ++i;
          auto chain = read_chain(i);
          add_chain(chain);
        } else if (t.text == "catch") {
          parse_catch(i);
        } else {
          ++i;
        }
        continue;
      }
      // Plain identifier chain: declaration or qualified usage.
      auto chain = read_chain(i);
      bool had_generics = try_generics(i);
      std::size_t after = i;
      skip_array_suffix(after);
      if (ident_at(after)) {
        std::size_t term = after + 1;
        if (punct_at(term, '=') || punct_at(term, ';') || punct_at(term, ',') ||
            punct_at(term, ')') || punct_at(term, ':') || punct_at(term, '(') ||
            punct_at(term, '[')) {
          add_chain(chain);  // "Type name" declaration
        }
        i = after;
        continue;
      }
      if (chain.size() >= 2 && chain_has_upper(chain)) {
        add_chain(chain);  // qualified usage such as org.x.Widget.helper()
      } else if (had_generics && chain_has_upper(chain)) {
        add_chain(chain);  // generic method reference or allocation-free use
      }
      i = after;
    }
  }
};

std::vector<std::string> to_sorted_vector(const std::set<std::string>& values) {
  return {values.begin(), values.end()};
}

FeatureMatrix presence_matrix(const TypeCatalog& catalog, bool packages, std::string kind,
                              std::span<const std::size_t> column_rows,
                              std::span<const std::size_t> rows) {
  std::set<std::string> column_set;
  for (std::size_t r : column_rows) {
    const auto& names = packages ? catalog.files[r].packages : catalog.files[r].resolved;
    column_set.insert(names.begin(), names.end());
  }
  FeatureMatrix out;
  out.kind = std::move(kind);
  out.columns.assign(column_set.begin(), column_set.end());
  out.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()),
                                     static_cast<Eigen::Index>(out.columns.size()));
  for (std::size_t ri = 0; ri < rows.size(); ++ri) {
    const auto& names = packages ? catalog.files[rows[ri]].packages : catalog.files[rows[ri]].resolved;
    for (const auto& name : names) {
      auto it = std::lower_bound(out.columns.begin(), out.columns.end(), name);
      if (it != out.columns.end() && *it == name)
        out.values(static_cast<Eigen::Index>(ri),
                   static_cast<Eigen::Index>(it - out.columns.begin())) = 1.0;
    }
  }
  return out;
}

std::vector<std::size_t> all_rows(const TypeCatalog& catalog) {
  std::vector<std::size_t> rows(catalog.files.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  return rows;
}

}  // namespace

std::string package_prefix(std::string_view qualified_name) {
  auto dot = qualified_name.rfind('.');
  if (dot == std::string_view::npos) return "";
  return std::string(qualified_name.substr(0, dot));
}

RawTypeRefs extract_type_refs(std::string_view source, const ExtractOptions& options) {
  RawTypeRefs out;
  auto tokens = java::lex(source);
  out.package = java::package_name(tokens);
  Scanner scanner{tokens, options, {}, {}, {}};
  scanner.run();
  out.refs = to_sorted_vector(scanner.refs);
  out.explicit_imports = to_sorted_vector(scanner.explicit_imports);
  out.wildcard_imports = to_sorted_vector(scanner.wildcard_imports);
  if (out.refs.empty()) out.warnings.push_back("no type references extracted");
  return out;
}

bool ReleaseIndex::contains(std::string_view name) const {
  return std::binary_search(qualified.begin(), qualified.end(), name);
}

ReleaseIndex make_release_index(std::span<const std::string> qualified_names) {
  ReleaseIndex index;
  index.qualified.assign(qualified_names.begin(), qualified_names.end());
  std::sort(index.qualified.begin(), index.qualified.end());
  index.qualified.erase(std::unique(index.qualified.begin(), index.qualified.end()),
                        index.qualified.end());
  return index;
}

FileTypes resolve_types(const RawTypeRefs& refs, const ReleaseIndex& index) {
  FileTypes out;
  std::set<std::string> resolved;
  std::set<std::string> unresolved;
  for (const auto& ref : refs.refs) {
    if (ref.find('.') != std::string::npos) {
      resolved.insert(ref);
      continue;
    }
    const std::string& simple = ref;
    if (java::is_primitive(simple)) continue;

    // 1. explicit import ending in .simple
    std::string explicit_hit;
    for (const auto& import : refs.explicit_imports) {
      if (import.size() > simple.size() + 1 &&
          import.compare(import.size() - simple.size(), simple.size(), simple) == 0 &&
          import[import.size() - simple.size() - 1] == '.') {
        if (explicit_hit.empty() || import < explicit_hit) explicit_hit = import;
      }
    }
    if (!explicit_hit.empty()) {
      resolved.insert(explicit_hit);
      continue;
    }

    // 2. same-package type declared in the release
    std::string same_package =
        refs.package.empty() ? simple : refs.package + "." + simple;
    if (index.contains(same_package)) {
      resolved.insert(same_package);
      continue;
    }

    // 3. unique wildcard-import candidate (release or bundled JDK table)
    std::set<std::string> candidates;
    for (const auto& pkg : refs.wildcard_imports) {
      std::string candidate = pkg + "." + simple;
      if (index.contains(candidate) || jdk_has_type(pkg, simple)) candidates.insert(candidate);
    }
    if (candidates.size() == 1) {
      resolved.insert(*candidates.begin());
      continue;
    }
    if (candidates.size() > 1) {
      out.warnings.push_back("ambiguous wildcard resolution for " + simple);
      unresolved.insert(simple);
      continue;
    }

    // 4. implicit java.lang
    if (jdk_has_type("java.lang", simple)) {
      resolved.insert("java.lang." + simple);
      continue;
    }

    unresolved.insert(simple);
  }
  out.resolved = to_sorted_vector(resolved);
  out.unresolved = to_sorted_vector(unresolved);
  std::set<std::string> packages;
  for (const auto& name : out.resolved) {
    std::string pkg = package_prefix(name);
    if (!pkg.empty()) packages.insert(pkg);
  }
  out.packages = to_sorted_vector(packages);
  return out;
}

FeatureMatrix type_matrix(const TypeCatalog& catalog) {
  auto rows = all_rows(catalog);
  return presence_matrix(catalog, false, "type", rows, rows);
}

FeatureMatrix type_matrix(const TypeCatalog& catalog, std::span<const std::size_t> column_rows,
                          std::span<const std::size_t> rows) {
  return presence_matrix(catalog, false, "type", column_rows, rows);
}

FeatureMatrix package_matrix(const TypeCatalog& catalog) {
  auto rows = all_rows(catalog);
  return presence_matrix(catalog, true, "package", rows, rows);
}

FeatureMatrix package_matrix(const TypeCatalog& catalog, std::span<const std::size_t> column_rows,
                             std::span<const std::size_t> rows) {
  return presence_matrix(catalog, true, "package", column_rows, rows);
}

}  // namespace defectpred::code
