#include "wikicite/wikidata.hpp"

#include <json.hpp>

namespace wikicite {

using nlohmann::json;

bool is_valid_qid(std::string_view s) {
    if (s.size() < 2 || s[0] != 'Q') return false;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

WikidataDumpReader::WikidataDumpReader(std::streambuf* src, std::set<std::string> wanted)
    : in_(src), wanted_(std::move(wanted)) {
    if (!wanted_.count("P31"))
        throw std::invalid_argument("wanted properties must include P31");
}

bool WikidataDumpReader::read_line(std::string& line) {
    line.clear();
    int c = in_.get();
    if (c == ByteReader::kEof) return false;
    while (c != ByteReader::kEof && c != '\n') {
        line.push_back(static_cast<char>(c));
        c = in_.get();
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

bool WikidataDumpReader::next(WikidataItem& out) {
    std::string line;
    while (read_line(line)) {
        // array framing and separators
        while (!line.empty() && (line.back() == ',' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line == "[" || line == "]") continue;

        json entity = json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (entity.is_discarded() || !entity.is_object() || !entity.contains("id") ||
            !entity["id"].is_string()) {
            ++malformed_lines_;
            continue;
        }
        std::string id = entity["id"].get<std::string>();
        if (!is_valid_qid(id)) {
            ++skipped_non_items_;
            continue;
        }

        out.qid = std::move(id);
        out.p31_values.clear();
        out.other_claims.clear();
        out.sitelinks.clear();

        if (entity.contains("claims") && entity["claims"].is_object()) {
            const json& claims = entity["claims"];
            for (const std::string& prop : wanted_) {
                auto it = claims.find(prop);
                if (it == claims.end() || !it->is_array()) continue;
                for (const json& claim : *it) {
                    // claim.mainsnak.datavalue.value.id
                    const json* node = &claim;
                    for (const char* key : {"mainsnak", "datavalue", "value"}) {
                        if (node->is_object() && node->contains(key)) {
                            node = &(*node)[key];
                        } else {
                            node = nullptr;
                            break;
                        }
                    }
                    if (!node || !node->is_object() || !node->contains("id") ||
                        !(*node)["id"].is_string())
                        continue;
                    std::string value = (*node)["id"].get<std::string>();
                    if (!is_valid_qid(value)) continue;
                    if (prop == "P31") {
                        out.p31_values.insert(std::move(value));
                    } else {
                        out.other_claims[prop].insert(std::move(value));
                    }
                }
            }
        }

        if (entity.contains("sitelinks") && entity["sitelinks"].is_object()) {
            for (auto it = entity["sitelinks"].begin(); it != entity["sitelinks"].end(); ++it) {
                const std::string& key = it.key();
                if (key.size() < 4 || key.compare(key.size() - 4, 4, "wiki") != 0) continue;
                if (!it->is_object() || !it->contains("title") || !(*it)["title"].is_string())
                    continue;
                out.sitelinks[key] = (*it)["title"].get<std::string>();
            }
        }
        return true;
    }
    return false;
}

}  // namespace wikicite
