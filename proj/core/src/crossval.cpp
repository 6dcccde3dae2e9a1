#include "aletheia/crossval.hpp"

#include <algorithm>
#include <set>

#include "aletheia/errors.hpp"
#include "aletheia/normalize.hpp"

namespace aletheia {

namespace {

bool token_subset(const std::set<std::string>& a, const std::set<std::string>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// variant iff the two publisher token sets are subset-related
bool publisher_related(const std::string& a, const std::string& b) {
    std::set<std::string> ta, tb;
    try {
        for (const auto& t : normalize_name(a).tokens) ta.insert(t);
        for (const auto& t : normalize_name(b).tokens) tb.insert(t);
    } catch (const EmptyInputError&) {
        return false;
    }
    return token_subset(ta, tb) || token_subset(tb, ta);
}

bool name_related(const std::string& a, const std::string& b) {
    try {
        return similarity(normalize_name(a), normalize_name(b)) >= kWeakMatchThreshold;
    } catch (const EmptyInputError&) {
        return false;
    }
}

std::string canonical_or_empty(const std::string& v) {
    try {
        return normalize_name(v).canonical;
    } catch (const EmptyInputError&) {
        return {};
    }
}

void check_field(CrossField field, std::vector<std::pair<std::string, std::string>> values,
                 std::vector<CrossCheckFinding>& out) {
    if (values.size() < 2) return;
    std::sort(values.begin(), values.end());

    // distinct canonical values drive the severity
    std::vector<std::string> distinct;
    for (const auto& [src, text] : values) {
        const std::string canon = canonical_or_empty(text);
        if (canon.empty()) continue;
        if (std::find(distinct.begin(), distinct.end(), canon) == distinct.end())
            distinct.push_back(canon);
    }

    CrossCheckFinding finding;
    finding.field = field;
    finding.values = std::move(values);
    if (distinct.size() <= 1) {
        finding.severity = CrossSeverity::Consistent;
    } else {
        bool all_related = true;
        for (std::size_t i = 0; i < distinct.size() && all_related; ++i) {
            for (std::size_t j = i + 1; j < distinct.size() && all_related; ++j) {
                const bool related = field == CrossField::Publisher
                                         ? publisher_related(distinct[i], distinct[j])
                                         : name_related(distinct[i], distinct[j]);
                if (!related) all_related = false;
            }
        }
        finding.severity = all_related ? CrossSeverity::Variant : CrossSeverity::Conflict;
    }
    out.push_back(std::move(finding));
}

} // namespace

std::string_view cross_field_name(CrossField f) {
    return f == CrossField::Publisher ? "publisher" : "name";
}

std::string_view cross_severity_name(CrossSeverity s) {
    switch (s) {
    case CrossSeverity::Consistent: return "consistent";
    case CrossSeverity::Variant: return "variant";
    case CrossSeverity::Conflict: return "conflict";
    }
    return "consistent";
}

std::vector<CrossCheckFinding> cross_validate(const std::vector<BackendResult>& results) {
    std::vector<std::pair<std::string, std::string>> publishers;
    std::vector<std::pair<std::string, std::string>> names;
    for (const auto& r : results) {
        if (r.publisher && !r.publisher->empty())
            publishers.emplace_back(r.backend_id, *r.publisher);
        if (r.matched_name && !r.matched_name->empty())
            names.emplace_back(r.backend_id, *r.matched_name);
    }
    std::vector<CrossCheckFinding> findings;
    check_field(CrossField::Publisher, std::move(publishers), findings);
    check_field(CrossField::Name, std::move(names), findings);
    return findings;
}

} // namespace aletheia
