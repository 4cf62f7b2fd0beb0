#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "wikicite/page_index.hpp"
#include "wikicite/wikidata.hpp"

namespace wikicite {

// A topic is a named set of Wikidata classes; an article belongs to it when
// its item's P31 values intersect the set.
struct TopicSpec {
    std::string topic_id;
    std::string display_name;
    std::set<std::string> qids;
};

struct TopicMembership {
    std::string language;
    std::string topic_id;
    std::set<std::int64_t> page_ids;
};

struct TopicDiagnostics {
    std::uint64_t items_seen = 0;
    std::uint64_t items_matched = 0;
    std::uint64_t unresolved_sitelinks = 0;  // sitelink title absent from the page index
};

std::vector<TopicSpec> load_topic_specs(const std::string& path);

std::set<std::string> match_topics(const WikidataItem& item, const std::vector<TopicSpec>& specs);

// Joins matched items to per-language page ids through their sitelinks.
// Sitelink keys are "<language>wiki"; titles are normalized before lookup.
// Only namespace-0 titles resolve; misses are tallied, never fatal.
class TopicMembershipBuilder {
public:
    TopicMembershipBuilder(std::vector<TopicSpec> specs,
                           std::map<std::string, const PageIndex*> pages_by_language);

    void add(const WikidataItem& item);

    // one TopicMembership per configured (language, topic), empty sets kept;
    // ordered by (language, topic_id)
    std::vector<TopicMembership> build() const;

    const TopicDiagnostics& diagnostics() const { return diag_; }

private:
    std::vector<TopicSpec> specs_;
    std::map<std::string, const PageIndex*> pages_;  // language -> index
    std::map<std::pair<std::string, std::string>, std::set<std::int64_t>> members_;
    TopicDiagnostics diag_;
};

// TSV: language, topic_id, page_id.
void write_membership_tsv(std::ostream& out, const std::vector<TopicMembership>& memberships);
std::vector<TopicMembership> read_membership_tsv(std::istream& in);

}  // namespace wikicite
