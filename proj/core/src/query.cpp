#include "aletheia/query.hpp"

#include <algorithm>

namespace aletheia {

JournalQuery JournalQuery::make(std::string_view raw_name,
                                const std::vector<std::string>& raw_issns) {
    JournalQuery q;
    q.raw_input.assign(raw_name);
    q.name = normalize_name(raw_name);
    for (const auto& raw : raw_issns)
        if (auto issn = Issn::try_parse(raw)) q.add_issn(*issn);
    return q;
}

void JournalQuery::add_issn(const Issn& issn) {
    const auto pos = std::lower_bound(issns.begin(), issns.end(), issn);
    if (pos == issns.end() || !(*pos == issn)) issns.insert(pos, issn);
}

std::string JournalQuery::cache_key() const {
    if (!issns.empty()) return issns.front().display();
    return name.canonical;
}

} // namespace aletheia
