#pragma once

#include "defectpred/feature_matrix.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace defectpred::code {

/// Raw type references scanned from one compilation unit, before any
/// resolution. References are simple names (no dot) or (partially)
/// qualified names, sorted and unique.
struct RawTypeRefs {
  std::string package;
  std::vector<std::string> explicit_imports;
  std::vector<std::string> wildcard_imports;
  std::vector<std::string> refs;
  std::vector<std::string> warnings;
};

struct ExtractOptions {
  bool include_imports = true;  // count an import statement as type presence
};

/// Error-tolerant scan of Java source for type references: imports,
/// extends/implements/throws clauses, declared variable/field/parameter/
/// return types, object creations, casts, catch clauses, instanceof, and
/// qualified name usages. Never throws on malformed input.
RawTypeRefs extract_type_refs(std::string_view source, const ExtractOptions& options = {});

/// Qualified names of all top-level types declared in a release.
struct ReleaseIndex {
  std::vector<std::string> qualified;  // sorted

  bool contains(std::string_view name) const;
};

ReleaseIndex make_release_index(std::span<const std::string> qualified_names);

/// Per-file resolution output.
struct FileTypes {
  std::vector<std::string> resolved;    // qualified names, sorted unique
  std::vector<std::string> unresolved;  // simple names, sorted unique
  std::vector<std::string> packages;    // qualified name minus last segment
  std::vector<std::string> warnings;
};

/// Resolves simple names in priority order: explicit import, same-package
/// type declared in the release, unique wildcard-import candidate (release
/// or bundled JDK table), implicit java.lang. Ambiguous wildcard candidates
/// stay unresolved with a warning. Dotted references resolve to themselves.
FileTypes resolve_types(const RawTypeRefs& refs, const ReleaseIndex& index);

struct TypeCatalog {
  std::vector<FileTypes> files;  // one entry per release file, canonical order
};

/// Binary presence matrices. The two-argument forms use all files both for
/// the column set and the rows; the fold-aware forms draw columns from
/// `column_rows` and emit rows for `rows`, so a training fold fixes the
/// feature set applied to a held-out fold.
FeatureMatrix type_matrix(const TypeCatalog& catalog);
FeatureMatrix type_matrix(const TypeCatalog& catalog, std::span<const std::size_t> column_rows,
                          std::span<const std::size_t> rows);
FeatureMatrix package_matrix(const TypeCatalog& catalog);
FeatureMatrix package_matrix(const TypeCatalog& catalog, std::span<const std::size_t> column_rows,
                             std::span<const std::size_t> rows);

/// Package prefix of a qualified name, "" when the name has no dot.
std::string package_prefix(std::string_view qualified_name);

}  // namespace defectpred::code
