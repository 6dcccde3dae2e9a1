#include "aletheia/registry.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "aletheia/errors.hpp"
#include "aletheia/util.hpp"

namespace aletheia {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFoundError(path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Merges `extra` into `base` (same source, same ISSN, same classification).
void merge_record(ListRecord& base, const ListRecord& extra) {
    for (const auto& issn : extra.issns)
        if (std::find(base.issns.begin(), base.issns.end(), issn) == base.issns.end())
            base.issns.push_back(issn);
    if (!base.publisher && extra.publisher) base.publisher = extra.publisher;
    if (base.name.canonical.empty() && !extra.name.canonical.empty()) base.name = extra.name;
}

ListRecord record_from_json(const json& obj, std::size_t line_no) {
    ListRecord rec;
    if (!obj.is_object()) throw SnapshotParseError(line_no, "record is not an object");
    rec.source_id = obj.value("source_id", "");
    if (rec.source_id.empty()) throw SnapshotParseError(line_no, "missing source_id");

    if (obj.contains("name") && !obj["name"].is_null()) {
        const auto raw = obj["name"].get<std::string>();
        if (!trim(raw).empty()) {
            try {
                rec.name = normalize_name(raw);
            } catch (const EmptyInputError&) {
            }
        }
    }
    if (obj.contains("issns")) {
        if (!obj["issns"].is_array()) throw SnapshotParseError(line_no, "issns must be an array");
        for (const auto& item : obj["issns"]) {
            try {
                const Issn issn = normalize_issn(item.get<std::string>());
                if (std::find(rec.issns.begin(), rec.issns.end(), issn) == rec.issns.end())
                    rec.issns.push_back(issn);
            } catch (const MalformedIssnError& e) {
                throw SnapshotParseError(line_no, e.what());
            }
        }
    }
    if (rec.name.canonical.empty() && rec.issns.empty())
        throw SnapshotParseError(line_no, "record has neither name nor issns");

    if (obj.contains("publisher") && !obj["publisher"].is_null()) {
        const auto pub = obj["publisher"].get<std::string>();
        if (!trim(pub).empty()) rec.publisher = pub;
    }
    if (!obj.contains("classification"))
        throw SnapshotParseError(line_no, "missing classification");
    try {
        rec.classification = classification_from_name(obj["classification"].get<std::string>());
    } catch (const Error& e) {
        throw SnapshotParseError(line_no, e.what());
    }
    rec.retrieved_at = obj.value("retrieved_at", "");
    return rec;
}

// Appends a record, merging same-source duplicate ISSNs. Conflicting
// classifications for one ISSN within a source are an error.
void add_record(ListSnapshot& snap, ListRecord rec, std::size_t line_no) {
    for (const auto& issn : rec.issns) {
        const auto hit = snap.by_issn.find(issn.display());
        if (hit == snap.by_issn.end()) continue;
        ListRecord& existing = snap.records[hit->second];
        if (existing.classification != rec.classification)
            throw DuplicateConflictError(issn.display(), snap.source_id);
        merge_record(existing, rec);
        for (const auto& i2 : existing.issns) snap.by_issn.emplace(i2.display(), hit->second);
        if (!existing.name.canonical.empty())
            snap.by_name.emplace(existing.name.canonical, hit->second);
        return;
    }
    (void)line_no;
    snap.records.push_back(std::move(rec));
    const std::size_t idx = snap.records.size() - 1;
    for (const auto& issn : snap.records[idx].issns) snap.by_issn.emplace(issn.display(), idx);
    if (!snap.records[idx].name.canonical.empty())
        snap.by_name.emplace(snap.records[idx].name.canonical, idx);
}

Classification parse_row_classification(const std::string& value, std::size_t line_no) {
    try {
        return classification_from_name(to_lower_ascii(trim(value)));
    } catch (const Error&) {
        throw SnapshotParseError(line_no, "unknown classification '" + value + "'");
    }
}

// RFC-4180 CSV: quoted fields, doubled quotes, commas and newlines inside
// quotes. Returns rows of fields.
std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    std::size_t i = 0;
    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        end_field();
        if (row.size() > 1 || !row[0].empty()) rows.push_back(std::move(row));
        row.clear();
    };
    while (i < text.size()) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"' && !field_started) {
            in_quotes = true;
            field_started = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\r') {
            // swallow; handled with the following \n (or treated as EOL)
            if (i + 1 >= text.size() || text[i + 1] != '\n') end_row();
        } else if (c == '\n') {
            end_row();
        } else {
            field.push_back(c);
            field_started = true;
        }
        ++i;
    }
    if (!field.empty() || field_started || !row.empty()) end_row();
    return rows;
}

std::vector<std::string> split_issn_field(const std::string& value) {
    std::vector<std::string> out;
    std::string cur;
    for (const char c : value) {
        if (c == ';' || c == ' ' || c == '|' || c == '/') {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

void import_row(ListSnapshot& snap, const std::string& name, const std::string& issn_value,
                const std::string& classification_value, const std::string& publisher,
                std::size_t line_no, ImportStats& stats) {
    ++stats.rows;
    ListRecord rec;
    rec.source_id = snap.source_id;
    rec.classification = parse_row_classification(classification_value, line_no);
    if (!trim(name).empty()) {
        try {
            rec.name = normalize_name(name);
        } catch (const EmptyInputError&) {
        }
    }
    bool issn_failed = false;
    for (const auto& raw : split_issn_field(issn_value)) {
        if (auto issn = Issn::try_parse(raw)) {
            if (std::find(rec.issns.begin(), rec.issns.end(), *issn) == rec.issns.end())
                rec.issns.push_back(*issn);
        } else {
            issn_failed = true;
        }
    }
    if (issn_failed && !rec.name.canonical.empty()) {
        ++stats.issn_warnings;
        stats.warnings.push_back("row " + std::to_string(line_no) +
                                 ": malformed ISSN '" + issn_value + "', record kept name-only");
    }
    if (rec.name.canonical.empty() && rec.issns.empty()) {
        stats.warnings.push_back("row " + std::to_string(line_no) +
                                 ": skipped, neither name nor usable ISSN");
        return;
    }
    if (!trim(publisher).empty()) rec.publisher = trim(publisher);
    add_record(snap, std::move(rec), line_no);
    ++stats.kept;
}

void import_csv(ListSnapshot& snap, const std::string& content, const CustomListSpec& spec,
                ImportStats& stats) {
    const auto rows = parse_csv(content);
    if (rows.empty()) throw EmptyListError("custom list has no header row");
    const auto& header = rows.front();
    auto column = [&](const std::string& field_name, bool required) -> int {
        for (std::size_t c = 0; c < header.size(); ++c)
            if (to_lower_ascii(trim(header[c])) == to_lower_ascii(field_name))
                return static_cast<int>(c);
        if (required)
            throw SnapshotParseError(1, "declared column '" + field_name + "' not in header");
        return -1;
    };
    const int name_col = column(spec.name_field, true);
    const int class_col = column(spec.classification_field, true);
    const int issn_col = column(spec.issn_field, false);
    const int pub_col = column(spec.publisher_field, false);

    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        auto cell = [&](int c) -> std::string {
            return (c >= 0 && static_cast<std::size_t>(c) < row.size()) ? row[c] : std::string{};
        };
        import_row(snap, cell(name_col), cell(issn_col), cell(class_col), cell(pub_col), r + 1,
                   stats);
    }
    if (snap.records.empty()) throw EmptyListError("custom list has a header but no records");
}

void import_json(ListSnapshot& snap, const std::string& content, const CustomListSpec& spec,
                 ImportStats& stats) {
    json doc;
    try {
        doc = json::parse(content);
    } catch (const json::parse_error& e) {
        throw SnapshotParseError(1, std::string("invalid JSON: ") + e.what());
    }
    const json* arr = nullptr;
    if (doc.is_array()) {
        arr = &doc;
    } else if (doc.is_object()) {
        for (const char* key : {"records", "journals", "entries"})
            if (doc.contains(key) && doc[key].is_array()) {
                arr = &doc[key];
                break;
            }
    }
    if (arr == nullptr)
        throw UnsupportedFormatError("JSON custom list must be an array of records");
    std::size_t line_no = 0;
    for (const auto& item : *arr) {
        ++line_no;
        if (!item.is_object()) {
            stats.warnings.push_back("record " + std::to_string(line_no) + ": not an object");
            continue;
        }
        std::string issn_value;
        if (item.contains(spec.issn_field)) {
            const auto& v = item[spec.issn_field];
            if (v.is_string()) issn_value = v.get<std::string>();
        } else if (item.contains("issns") && item["issns"].is_array()) {
            for (const auto& e : item["issns"]) {
                if (!issn_value.empty()) issn_value += ";";
                issn_value += e.get<std::string>();
            }
        }
        import_row(snap, item.value(spec.name_field, ""), issn_value,
                   item.value(spec.classification_field, ""),
                   item.value(spec.publisher_field, ""), line_no, stats);
    }
    if (snap.records.empty()) throw EmptyListError("JSON custom list has no records");
}

} // namespace

std::string_view classification_name(Classification c) {
    switch (c) {
    case Classification::Legitimate: return "legitimate";
    case Classification::Predatory: return "predatory";
    case Classification::Hijacked: return "hijacked";
    }
    return "legitimate";
}

Classification classification_from_name(std::string_view name) {
    if (name == "legitimate") return Classification::Legitimate;
    if (name == "predatory") return Classification::Predatory;
    if (name == "hijacked") return Classification::Hijacked;
    throw Error("unknown classification: " + std::string(name));
}

void ListSnapshot::rebuild_index() {
    by_issn.clear();
    by_name.clear();
    for (std::size_t i = 0; i < records.size(); ++i) {
        for (const auto& issn : records[i].issns) by_issn.emplace(issn.display(), i);
        if (!records[i].name.canonical.empty()) by_name.emplace(records[i].name.canonical, i);
    }
}

double default_confidence_for(std::string_view source_id) {
    if (source_id == "doaj") return 0.70;
    if (source_id == "bealls" || source_id == "predatoryjournals" || source_id == "scopus")
        return 0.95;
    if (source_id.find("ministry") != std::string_view::npos) return 0.95;
    if (source_id.find("hijacked") != std::string_view::npos ||
        source_id.rfind("kscien", 0) == 0)
        return 0.95;
    if (source_id.rfind("custom:", 0) == 0) return 0.85;
    return 0.85;
}

ListSnapshot parse_snapshot(std::string_view content) {
    ListSnapshot snap;
    std::istringstream in{std::string(content)};
    std::size_t line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw SnapshotParseError(line_no, e.what());
        }
        ListRecord rec = record_from_json(obj, line_no);
        if (snap.source_id.empty()) {
            snap.source_id = rec.source_id;
            snap.default_confidence = default_confidence_for(snap.source_id);
        } else if (snap.source_id != rec.source_id) {
            throw SnapshotParseError(line_no, "mixed source_id values in one snapshot");
        }
        add_record(snap, std::move(rec), line_no);
    }
    if (snap.records.empty()) throw SnapshotParseError(line_no, "snapshot contains no records");
    return snap;
}

ListSnapshot load_snapshot(const std::filesystem::path& path) {
    return parse_snapshot(read_file(path));
}

void save_snapshot(const ListSnapshot& snapshot, const std::filesystem::path& path) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write snapshot: " + tmp.string());
        for (const auto& rec : snapshot.records) {
            json obj{
                {"source_id", rec.source_id},
                {"classification", classification_name(rec.classification)},
                {"retrieved_at", rec.retrieved_at},
            };
            if (!rec.name.canonical.empty()) obj["name"] = rec.name.raw;
            json issns = json::array();
            for (const auto& issn : rec.issns) issns.push_back(issn.display());
            obj["issns"] = issns;
            if (rec.publisher) obj["publisher"] = *rec.publisher;
            out << obj.dump() << "\n";
        }
    }
    std::filesystem::rename(tmp, path);
}

ListSnapshot import_list_as(const CustomListSpec& spec, std::string_view source_id,
                            ImportStats* stats_out) {
    const std::string content = read_file(spec.path);
    ListSnapshot snap;
    snap.source_id.assign(source_id);
    snap.default_confidence = default_confidence_for(snap.source_id);
    ImportStats stats;

    auto format = spec.format;
    if (format == CustomListSpec::Format::Auto) {
        const std::string ext = to_lower_ascii(spec.path.extension().string());
        if (ext == ".csv") {
            format = CustomListSpec::Format::Csv;
        } else if (ext == ".json" || ext == ".jsonl") {
            format = CustomListSpec::Format::Json;
        } else {
            throw UnsupportedFormatError("cannot infer custom list format from '" + ext + "'");
        }
    }
    if (format == CustomListSpec::Format::Csv)
        import_csv(snap, content, spec, stats);
    else
        import_json(snap, content, spec, stats);

    const std::string now = now_iso8601();
    for (auto& rec : snap.records)
        if (rec.retrieved_at.empty()) rec.retrieved_at = now;
    if (stats_out) *stats_out = std::move(stats);
    return snap;
}

ListSnapshot import_custom_list(const CustomListSpec& spec, ImportStats* stats) {
    return import_list_as(spec, "custom:" + spec.path.filename().string(), stats);
}

std::optional<BackendResult> lookup(const JournalQuery& query, const ListSnapshot& snapshot,
                                    const AbbreviationTable& table) {
    auto result_for = [&](const ListRecord& rec, double confidence,
                          std::string note) -> BackendResult {
        BackendResult r;
        r.backend_id = snapshot.source_id;
        r.kind = BackendKind::Curated;
        r.confidence = confidence;
        r.verdict = rec.classification == Classification::Legitimate ? Verdict::Legitimate
                                                                     : Verdict::Predatory;
        r.notes.push_back(std::move(note));
        if (rec.classification == Classification::Hijacked) r.notes.emplace_back("hijacked");
        if (!rec.name.canonical.empty()) r.matched_name = rec.name.canonical;
        r.publisher = rec.publisher;
        return r;
    };

    // 1. exact ISSN
    for (const auto& issn : query.issns) {
        const auto hit = snapshot.by_issn.find(issn.display());
        if (hit != snapshot.by_issn.end())
            return result_for(snapshot.records[hit->second], snapshot.default_confidence,
                              "exact ISSN match: " + issn.display());
    }

    // 2. exact canonical name
    {
        const auto hit = snapshot.by_name.find(query.name.canonical);
        if (hit != snapshot.by_name.end())
            return result_for(snapshot.records[hit->second], snapshot.default_confidence,
                              "exact name match");
    }

    // 3. fuzzy name over abbreviation-expanded candidates
    const auto candidates = expand_candidates(query.name, table);
    double best_sim = 0.0;
    const ListRecord* best_rec = nullptr;
    for (const auto& rec : snapshot.records) {
        if (rec.name.canonical.empty()) continue;
        for (const auto& cand : candidates) {
            const double sim = similarity(cand, rec.name);
            if (sim > best_sim) {
                best_sim = sim;
                best_rec = &rec;
            }
        }
    }
    if (best_rec != nullptr && best_sim >= kAutoMatchThreshold) {
        return result_for(*best_rec, snapshot.default_confidence * best_sim,
                          "fuzzy name match: '" + best_rec->name.canonical +
                              "' (similarity: " + format_fixed(best_sim, 2) + ")");
    }
    if (best_rec != nullptr && best_sim >= kWeakMatchThreshold) {
        BackendResult weak;
        weak.backend_id = snapshot.source_id;
        weak.kind = BackendKind::Curated;
        weak.verdict = Verdict::Unknown;
        weak.confidence = 0.0;
        weak.notes.push_back("weak name match: '" + best_rec->name.canonical +
                             "' (similarity: " + format_fixed(best_sim, 2) +
                             ") below auto-match threshold");
        return weak;
    }
    return std::nullopt; // not in this list
}

} // namespace aletheia
