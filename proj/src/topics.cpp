#include "wikicite/topics.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "wikicite/errors.hpp"
#include "wikicite/text_util.hpp"

namespace wikicite {

std::vector<TopicSpec> load_topic_specs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open topic spec file: " + path);
    nlohmann::json root = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (root.is_discarded() || !root.is_array())
        throw ConfigError("topic spec file is not a JSON array: " + path);

    std::vector<TopicSpec> specs;
    std::set<std::string> seen;
    for (const nlohmann::json& entry : root) {
        if (!entry.is_object() || !entry.contains("topic_id") || !entry.contains("qids"))
            throw ConfigError("topic spec entry malformed in " + path);
        TopicSpec spec;
        spec.topic_id = entry["topic_id"].get<std::string>();
        spec.display_name = entry.value("display_name", spec.topic_id);
        if (!seen.insert(spec.topic_id).second)
            throw ConfigError("duplicate topic_id '" + spec.topic_id + "' in " + path);
        for (const nlohmann::json& q : entry["qids"]) {
            std::string qid = q.get<std::string>();
            if (!is_valid_qid(qid))
                throw ConfigError("topic '" + spec.topic_id + "': invalid QID '" + qid + "'");
            spec.qids.insert(std::move(qid));
        }
        if (spec.qids.empty())
            throw ConfigError("topic '" + spec.topic_id + "' has an empty QID set");
        specs.push_back(std::move(spec));
    }
    return specs;
}

std::set<std::string> match_topics(const WikidataItem& item,
                                   const std::vector<TopicSpec>& specs) {
    std::set<std::string> matched;
    for (const TopicSpec& spec : specs) {
        for (const std::string& qid : item.p31_values) {
            if (spec.qids.count(qid)) {
                matched.insert(spec.topic_id);
                break;
            }
        }
    }
    return matched;
}

TopicMembershipBuilder::TopicMembershipBuilder(
    std::vector<TopicSpec> specs, std::map<std::string, const PageIndex*> pages_by_language)
    : specs_(std::move(specs)), pages_(std::move(pages_by_language)) {
    for (const auto& [language, index] : pages_) {
        for (const TopicSpec& spec : specs_) members_[{language, spec.topic_id}];
    }
}

void TopicMembershipBuilder::add(const WikidataItem& item) {
    ++diag_.items_seen;
    std::set<std::string> matched = match_topics(item, specs_);
    if (matched.empty()) return;
    ++diag_.items_matched;

    for (const auto& [site, raw_title] : item.sitelinks) {
        std::string language = site.substr(0, site.size() - 4);  // strip "wiki"
        auto pages_it = pages_.find(language);
        if (pages_it == pages_.end()) continue;  // unconfigured language
        std::string title = normalize_title(raw_title);
        const PageRecord* page = pages_it->second->find_title(0, title);
        if (!page) {
            ++diag_.unresolved_sitelinks;
            continue;
        }
        for (const std::string& topic : matched)
            members_[{language, topic}].insert(page->page_id);
    }
}

std::vector<TopicMembership> TopicMembershipBuilder::build() const {
    std::vector<TopicMembership> out;
    out.reserve(members_.size());
    for (const auto& [key, ids] : members_) {
        TopicMembership m;
        m.language = key.first;
        m.topic_id = key.second;
        m.page_ids = ids;
        out.push_back(std::move(m));
    }
    return out;
}

void write_membership_tsv(std::ostream& out, const std::vector<TopicMembership>& memberships) {
    out << "language\ttopic_id\tpage_id\n";
    for (const TopicMembership& m : memberships) {
        for (std::int64_t id : m.page_ids)
            out << m.language << '\t' << m.topic_id << '\t' << id << '\n';
    }
}

std::vector<TopicMembership> read_membership_tsv(std::istream& in) {
    std::map<std::pair<std::string, std::string>, std::set<std::int64_t>> members;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) continue;
        auto cols = split_tabs(line);
        if (cols.size() != 3) throw ParseError("membership TSV: expected 3 columns");
        members[{std::string(cols[0]), std::string(cols[1])}].insert(parse_int(cols[2]));
    }
    std::vector<TopicMembership> out;
    for (auto& [key, ids] : members) {
        TopicMembership m;
        m.language = key.first;
        m.topic_id = key.second;
        m.page_ids = std::move(ids);
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace wikicite
