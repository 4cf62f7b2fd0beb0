#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace wikicite {

struct PageRecord {
    std::int64_t page_id = 0;
    int namespace_id = 0;
    std::string title;  // underscores, no namespace prefix
    bool is_redirect = false;
    std::int64_t wikitext_bytes = 0;
};

struct LinkRow {
    std::int64_t from_page_id = 0;
    int from_namespace = 0;
    // Exactly one target representation is populated: target_id for the
    // normalized (post-linktarget) schema, (namespace, title) for the legacy
    // schema.
    std::optional<std::int64_t> target_id;
    int target_namespace = 0;
    std::string target_title;
};

struct LinkTargetRecord {
    std::int64_t target_id = 0;
    int namespace_id = 0;
    std::string title;
};

struct ArticleText {
    std::int64_t page_id = 0;
    int namespace_id = 0;
    std::string title;
    std::string wikitext;
};

}  // namespace wikicite
