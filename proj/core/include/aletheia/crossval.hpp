#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aletheia/evidence.hpp"

namespace aletheia {

enum class CrossField { Publisher, Name };
enum class CrossSeverity { Consistent, Variant, Conflict };

std::string_view cross_field_name(CrossField f);
std::string_view cross_severity_name(CrossSeverity s);

// Per-field comparison of metadata reported by multiple sources.
struct CrossCheckFinding {
    CrossField field = CrossField::Publisher;
    std::vector<std::pair<std::string, std::string>> values; // (source_id, text), sorted
    CrossSeverity severity = CrossSeverity::Consistent;
};

// Compares publisher and matched-name metadata across backend results.
// Publishers whose token sets are subset-related count as variants
// ("Springer" vs "Springer Nature"); names are variants at similarity
// >= 0.80. Unrelated values conflict. Findings are emitted only when two or
// more sources reported a value, and are order-independent.
std::vector<CrossCheckFinding> cross_validate(const std::vector<BackendResult>& results);

} // namespace aletheia
