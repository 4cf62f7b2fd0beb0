#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "wikicite/mediawiki_tables.hpp"
#include "wikicite/page_index.hpp"
#include "wikicite/records.hpp"

namespace wikicite {

// Per-article count of incoming wikilinks from main-namespace pages of the
// same language edition.
struct CitationIndex {
    std::string language;
    std::string generated_from;                  // dump date text
    std::map<std::int64_t, std::uint64_t> counts;  // every ns-0 page, zero included
};

enum class RedirectMode { None, SingleHop };

struct CitationDiagnostics {
    std::uint64_t rows_seen = 0;
    std::uint64_t nonmain_source = 0;     // from_namespace != 0
    std::uint64_t red_links = 0;          // target resolves to no existing page
    std::uint64_t nonmain_target = 0;     // target exists outside ns 0
    std::uint64_t missing_target_id = 0;  // normalized row without linktarget entry (lenient)
    std::uint64_t counted = 0;

    void merge(const CitationDiagnostics& o) {
        rows_seen += o.rows_seen;
        nonmain_source += o.nonmain_source;
        red_links += o.red_links;
        nonmain_target += o.nonmain_target;
        missing_target_id += o.missing_target_id;
        counted += o.counted;
    }
};

// Accumulates link rows into per-target counts. The accumulation is a
// commutative monoid: builders fed disjoint row partitions can be merged and
// yield the index a single pass would have produced, and row order never
// matters.
//
// Under RedirectMode::SingleHop a link to a redirect page is credited to the
// redirect's target instead. The target of a redirect page is recovered from
// the redirect's own outgoing link rows (the smallest resolved ns-0 page id,
// excluding itself, which is the redirect pointer in well-formed dumps).
// Double redirects are not chased; a redirect whose target is unknown keeps
// its own credits.
class CitationIndexBuilder {
public:
    CitationIndexBuilder(const PageIndex& pages, const LinkTargetMap* linktargets,
                         RedirectMode mode, Strictness strictness = Strictness::Strict);

    void add(const LinkRow& row);
    void merge(const CitationIndexBuilder& other);

    CitationIndex build(std::string language, std::string generated_from) const;

    const CitationDiagnostics& diagnostics() const { return diag_; }

private:
    // resolved target page, or nullptr after tallying the failure
    const PageRecord* resolve_target(const LinkRow& row);

    const PageIndex& pages_;
    const LinkTargetMap* linktargets_;
    RedirectMode mode_;
    Strictness strictness_;
    CitationDiagnostics diag_;
    std::unordered_map<std::int64_t, std::uint64_t> raw_counts_;
    std::unordered_map<std::int64_t, std::int64_t> redirect_targets_;  // min resolved target
};

struct RankedEntry {
    std::int64_t page_id = 0;
    std::uint64_t citation_count = 0;
};

struct RankedList {
    std::vector<RankedEntry> entries;  // count desc, page_id asc
    std::size_t k = 0;                 // requested size
    std::size_t shortfall = 0;         // k - entries.size() when the pool ran short
};

// The k highest-counted pages among `eligible` under the total order
// (count desc, page_id asc). k must be positive; every eligible id must be
// an index key.
RankedList top_k_citations(const CitationIndex& index, std::size_t k,
                           const std::vector<std::int64_t>& eligible);

// TSV persistence: page_id, title, citation_count; count desc, page_id asc.
void write_citation_index_tsv(std::ostream& out, const CitationIndex& index,
                              const PageIndex& pages);
CitationIndex read_citation_index_tsv(std::istream& in, std::string language);

}  // namespace wikicite
