#include "wikicite/citation_index.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "wikicite/text_util.hpp"

namespace wikicite {

CitationIndexBuilder::CitationIndexBuilder(const PageIndex& pages,
                                           const LinkTargetMap* linktargets, RedirectMode mode,
                                           Strictness strictness)
    : pages_(pages), linktargets_(linktargets), mode_(mode), strictness_(strictness) {}

const PageRecord* CitationIndexBuilder::resolve_target(const LinkRow& row) {
    int ns;
    const std::string* title;
    if (row.target_id.has_value()) {
        if (!linktargets_) {
            throw IntegrityError("normalized pagelinks row but no linktarget table loaded");
        }
        auto it = linktargets_->find(*row.target_id);
        if (it == linktargets_->end()) {
            if (strictness_ == Strictness::Strict) {
                throw IntegrityError("pagelinks target_id " + std::to_string(*row.target_id) +
                                     " absent from linktarget table");
            }
            ++diag_.missing_target_id;
            return nullptr;
        }
        ns = it->second.namespace_id;
        title = &it->second.title;
    } else {
        ns = row.target_namespace;
        title = &row.target_title;
    }
    const PageRecord* page = pages_.find_title(ns, *title);
    if (!page) {
        ++diag_.red_links;
        return nullptr;
    }
    if (page->namespace_id != 0) {
        ++diag_.nonmain_target;
        return nullptr;
    }
    return page;
}

void CitationIndexBuilder::add(const LinkRow& row) {
    ++diag_.rows_seen;
    if (row.from_namespace != 0) {
        ++diag_.nonmain_source;
        return;
    }
    const PageRecord* target = resolve_target(row);
    if (!target) return;
    ++diag_.counted;
    ++raw_counts_[target->page_id];

    // Remember where redirects point so SingleHop can re-credit at build time.
    const PageRecord* source = pages_.find_id(row.from_page_id);
    if (source && source->is_redirect && target->page_id != source->page_id) {
        auto [it, inserted] = redirect_targets_.emplace(source->page_id, target->page_id);
        if (!inserted && target->page_id < it->second) it->second = target->page_id;
    }
}

void CitationIndexBuilder::merge(const CitationIndexBuilder& other) {
    diag_.merge(other.diag_);
    for (const auto& [id, c] : other.raw_counts_) raw_counts_[id] += c;
    for (const auto& [id, tgt] : other.redirect_targets_) {
        auto [it, inserted] = redirect_targets_.emplace(id, tgt);
        if (!inserted && tgt < it->second) it->second = tgt;
    }
}

CitationIndex CitationIndexBuilder::build(std::string language,
                                          std::string generated_from) const {
    CitationIndex index;
    index.language = std::move(language);
    index.generated_from = std::move(generated_from);
    for (std::int64_t id : pages_.main_namespace_ids()) index.counts[id] = 0;

    for (const auto& [id, c] : raw_counts_) {
        std::int64_t credit_to = id;
        if (mode_ == RedirectMode::SingleHop) {
            const PageRecord* page = pages_.find_id(id);
            if (page && page->is_redirect) {
                auto it = redirect_targets_.find(id);
                if (it != redirect_targets_.end()) credit_to = it->second;
            }
        }
        index.counts[credit_to] += c;
    }
    return index;
}

RankedList top_k_citations(const CitationIndex& index, std::size_t k,
                           const std::vector<std::int64_t>& eligible) {
    if (k == 0) throw std::invalid_argument("top_k_citations: k must be positive");

    RankedList out;
    out.k = k;
    out.entries.reserve(std::min(k, eligible.size()));

    // total order: higher count first, then lower page id
    auto better = [](const RankedEntry& a, const RankedEntry& b) {
        if (a.citation_count != b.citation_count) return a.citation_count > b.citation_count;
        return a.page_id < b.page_id;
    };

    std::vector<std::int64_t> pool(eligible);
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

    // bounded selection: keep the k best in a heap whose top is the worst
    auto worse_on_top = [&](const RankedEntry& a, const RankedEntry& b) { return better(a, b); };
    std::vector<RankedEntry> heap;
    heap.reserve(k + 1);
    for (std::int64_t id : pool) {
        auto it = index.counts.find(id);
        if (it == index.counts.end())
            throw IntegrityError("eligible page " + std::to_string(id) +
                                 " missing from citation index");
        RankedEntry e{id, it->second};
        if (heap.size() < k) {
            heap.push_back(e);
            std::push_heap(heap.begin(), heap.end(), worse_on_top);
        } else if (better(e, heap.front())) {
            std::pop_heap(heap.begin(), heap.end(), worse_on_top);
            heap.back() = e;
            std::push_heap(heap.begin(), heap.end(), worse_on_top);
        }
    }
    out.entries = std::move(heap);
    std::sort(out.entries.begin(), out.entries.end(), better);
    if (out.entries.size() < k) out.shortfall = k - out.entries.size();
    return out;
}

void write_citation_index_tsv(std::ostream& out, const CitationIndex& index,
                              const PageIndex& pages) {
    std::vector<std::pair<std::int64_t, std::uint64_t>> rows(index.counts.begin(),
                                                             index.counts.end());
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    out << "page_id\ttitle\tcitation_count\n";
    for (const auto& [id, count] : rows) {
        const PageRecord* page = pages.find_id(id);
        out << id << '\t' << (page ? page->title : std::string()) << '\t' << count << '\n';
    }
}

CitationIndex read_citation_index_tsv(std::istream& in, std::string language) {
    CitationIndex index;
    index.language = std::move(language);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) continue;
        auto cols = split_tabs(line);
        if (cols.size() != 3) throw ParseError("citation index TSV: expected 3 columns");
        index.counts[parse_int(cols[0])] = static_cast<std::uint64_t>(parse_int(cols[2]));
    }
    return index;
}

}  // namespace wikicite
