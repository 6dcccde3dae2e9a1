#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "aletheia/normalize.hpp"

namespace aletheia {

// A normalized identification request for one journal.
struct JournalQuery {
    NormalizedName name;
    std::vector<Issn> issns; // sorted, deduplicated; may be empty
    std::string raw_input;

    // Throws EmptyInputError for a blank name. Unparseable ISSNs are skipped.
    static JournalQuery make(std::string_view raw_name,
                             const std::vector<std::string>& raw_issns = {});

    void add_issn(const Issn& issn);

    // Stable identifiers prefer ISSNs over names.
    std::string cache_key() const;
};

} // namespace aletheia
