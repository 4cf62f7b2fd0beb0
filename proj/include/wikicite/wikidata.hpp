#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "wikicite/byte_reader.hpp"
#include "wikicite/errors.hpp"

namespace wikicite {

struct WikidataItem {
    std::string qid;                             // Q[0-9]+
    std::set<std::string> p31_values;            // instance-of targets
    std::map<std::string, std::set<std::string>> other_claims;  // extra wanted properties
    std::map<std::string, std::string> sitelinks;  // "enwiki" -> article title
};

bool is_valid_qid(std::string_view s);

// Reader for the Wikidata JSON entity dump: a top-level array with one
// entity object per line, each line but the last ending in ",". Retains
// claim values for the wanted properties (P31 at minimum) and sitelinks
// whose key ends in "wiki". Malformed lines are skipped and counted;
// property entities (P…) and other non-items are skipped separately.
class WikidataDumpReader {
public:
    explicit WikidataDumpReader(std::streambuf* src,
                                std::set<std::string> wanted_properties = {"P31"});

    bool next(WikidataItem& out);

    std::uint64_t malformed_lines() const { return malformed_lines_; }
    std::uint64_t skipped_non_items() const { return skipped_non_items_; }

private:
    bool read_line(std::string& line);

    ByteReader in_;
    std::set<std::string> wanted_;
    std::uint64_t malformed_lines_ = 0;
    std::uint64_t skipped_non_items_ = 0;
};

}  // namespace wikicite
