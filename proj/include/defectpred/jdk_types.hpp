#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace defectpred::code {

/// Curated table of standard-library type names (java.*, javax.*, and the
/// org.w3c/org.xml.sax packages shipped with the JDK), used to resolve
/// wildcard imports and the implicit java.lang import.
bool jdk_has_type(std::string_view package, std::string_view simple_name);

/// Packages listed in the bundled table, sorted.
const std::vector<std::string>& jdk_packages();

/// Identifier for the bundled table revision.
std::string_view jdk_table_version();

}  // namespace defectpred::code
