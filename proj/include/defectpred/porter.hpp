#pragma once

#include <string>

namespace defectpred::text {

/// Classic Porter stemming algorithm (1980), matching the behavior of the
/// author's reference implementation, including its published revisions:
/// step 2 uses bli->ble and adds logi->log, and words of length <= 2 are
/// returned unchanged. Expects a lowercase ASCII word.
std::string porter_stem(std::string word);

}  // namespace defectpred::text
